// Copyright 2026 The entangle Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include <entangle/classical.hpp>
#include <entangle/random.hpp>

using namespace entangle;
using namespace entangle::classical;

namespace {

// (sum_{i != j} u_i u_j)^{1/2}, computed pairwise.
double pairwise_entanglement(const ProbMeasure &u) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (i != j) {
                s += u[i] * u[j];
            }
        }
    }
    return std::sqrt(s);
}

ProbMeasure random_measure(std::size_t n, Rng &rng) {
    return ProbMeasure(random_simplex(n, rng));
}

// Random measure with a random number of exact zeros.
ProbMeasure random_sparse_measure(std::size_t n, Rng &rng) {
    std::vector<double> w = random_simplex(n, rng);
    std::bernoulli_distribution drop(0.3);
    double s = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        if (drop(rng)) {
            w[i] = 0.0;
        }
    }
    for (double x : w) s += x;
    for (double &x : w) x /= s;
    return ProbMeasure(std::move(w));
}

} // namespace

TEST(ProbMeasure, RejectsInvalidWeights) {
    EXPECT_THROW(ProbMeasure({0.5, 0.6}), InvariantError);
    EXPECT_THROW(ProbMeasure({1.5, -0.5}), InvariantError);
    EXPECT_THROW(ProbMeasure(std::vector<double>{}), InvariantError);
    EXPECT_NO_THROW(ProbMeasure({1.0 - 1e-13, 0.0}));
}

TEST(Support, Examples) {
    EXPECT_EQ(support(ProbMeasure({1.0 / 2, 1.0 / 3, 1.0 / 6})), (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(support(ProbMeasure({1.0, 0.0, 0.0})), (std::vector<std::size_t>{0}));
    EXPECT_EQ(support(ProbMeasure({0.5, 0.0, 0.5})), (std::vector<std::size_t>{0, 2}));
}

TEST(EntanglementIndex, Examples) {
    EXPECT_EQ(entanglement_index(ProbMeasure({0.5, 0.5})), 2U);
    EXPECT_EQ(entanglement_index(ProbMeasure({1.0, 0.0})), 1U);
    EXPECT_EQ(entanglement_index(ProbMeasure::uniform(3)), 3U);
}

TEST(EntanglementNumber, Examples) {
    EXPECT_NEAR(entanglement_number(ProbMeasure({0.5, 0.5})), 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(entanglement_number(ProbMeasure({1.0 / 2, 1.0 / 3, 1.0 / 6})), std::sqrt(11.0 / 18.0), 1e-12);
    EXPECT_NEAR(entanglement_number(ProbMeasure({1.0 / 9, 1.0 / 9, 7.0 / 9})), std::sqrt(30.0) / 9.0, 1e-12);
    EXPECT_EQ(entanglement_number(ProbMeasure({1.0, 0.0, 0.0})), 0.0);
}

TEST(EntanglementNumber, ExampleOrdering) {
    const double a = entanglement_number(ProbMeasure({0.5, 0.5}));
    const double b = entanglement_number(ProbMeasure::uniform(3));
    const double c = entanglement_number(ProbMeasure({1.0 / 2, 1.0 / 3, 1.0 / 6}));
    const double d = entanglement_number(ProbMeasure({1.0 / 9, 1.0 / 9, 7.0 / 9}));
    EXPECT_LT(d, a);
    EXPECT_LT(a, c);
    EXPECT_LT(c, b);
}

TEST(IsPoint, Examples) {
    EXPECT_TRUE(is_point(ProbMeasure({0.0, 1.0, 0.0})));
    EXPECT_FALSE(is_point(ProbMeasure({0.5, 0.5})));
    EXPECT_TRUE(is_point(ProbMeasure({1.0 - 1e-15, 1e-15})));
}

TEST(IsUniform, Examples) {
    EXPECT_TRUE(is_uniform(ProbMeasure::uniform(3)));
    EXPECT_FALSE(is_uniform(ProbMeasure({1.0 / 2, 1.0 / 3, 1.0 / 6})));
    EXPECT_TRUE(is_uniform(ProbMeasure({0.5, 0.0, 0.5})));
}

TEST(MaxEntanglementBound, Examples) {
    EXPECT_NEAR(max_entanglement_bound(2), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(max_entanglement_bound(1), 0.0);
    EXPECT_NEAR(max_entanglement_bound(3), std::sqrt(2.0 / 3.0), 1e-15);
    EXPECT_THROW(max_entanglement_bound(0), InvariantError);
}

TEST(Mixture, Examples) {
    const ProbMeasure m = mixture(ProbMeasure({1.0, 0.0}), ProbMeasure({0.0, 1.0}), 0.5);
    EXPECT_EQ(m, ProbMeasure({0.5, 0.5}));
    const ProbMeasure u({0.2, 0.3, 0.5});
    for (double lambda : {0.0, 0.3, 1.0}) {
        const ProbMeasure same = mixture(u, u, lambda);
        for (std::size_t i = 0; i < u.size(); ++i) {
            EXPECT_NEAR(same[i], u[i], 1e-15);
        }
    }
    const ProbMeasure q = mixture(ProbMeasure({0.5, 0.5}), ProbMeasure({1.0, 0.0}), 0.5);
    EXPECT_NEAR(q[0], 0.75, 1e-15);
    EXPECT_NEAR(q[1], 0.25, 1e-15);
}

TEST(Mixture, PadsShorterMeasureAndRejectsBadLambda) {
    const ProbMeasure m = mixture(ProbMeasure({1.0}), ProbMeasure({0.0, 0.0, 1.0}), 0.25);
    ASSERT_EQ(m.size(), 3U);
    EXPECT_NEAR(m[0], 0.25, 1e-15);
    EXPECT_NEAR(m[2], 0.75, 1e-15);
    EXPECT_THROW(mixture(ProbMeasure({1.0}), ProbMeasure({1.0}), 1.5), InvariantError);
    EXPECT_THROW(mixture(ProbMeasure({1.0}), ProbMeasure({1.0}), -0.1), InvariantError);
}

TEST(Product, Examples) {
    const ProductMeasure a = product(ProbMeasure({1.0}), ProbMeasure({0.5, 0.5}));
    ASSERT_EQ(a.rows(), 1);
    ASSERT_EQ(a.cols(), 2);
    EXPECT_EQ(a.weights()(0, 0), 0.5);
    EXPECT_EQ(a.weights()(0, 1), 0.5);
    EXPECT_EQ(product(ProbMeasure({1.0}), ProbMeasure({1.0})).weights()(0, 0), 1.0);
    const ProductMeasure c = product(ProbMeasure({0.5, 0.5}), ProbMeasure({0.5, 0.5}));
    EXPECT_TRUE(c.weights().isApproxToConstant(0.25));
}

TEST(IsFactorized, Examples) {
    Eigen::MatrixXd a(1, 2);
    a << 0.5, 0.5;
    EXPECT_TRUE(is_factorized(ProductMeasure(a)));
    Eigen::MatrixXd b(2, 2);
    b << 1.0 / 3, 1.0 / 3, 0.0, 1.0 / 3;
    EXPECT_FALSE(is_factorized(ProductMeasure(b)));
    // u_11 = 1/3 against the marginal product (2/3)(1/3) = 2/9.
    const ProductMeasure ub(b);
    EXPECT_NEAR(ub.row_marginal()[0] * ub.col_marginal()[0], 2.0 / 9.0, 1e-15);
}

TEST(ProductEntanglementNumber, Examples) {
    Eigen::MatrixXd a(1, 2);
    a << 0.5, 0.5;
    EXPECT_NEAR(product_entanglement_number(ProductMeasure(a)), 1.0 / std::sqrt(2.0), 1e-12);
    Eigen::MatrixXd b(2, 2);
    b << 1.0 / 3, 1.0 / 3, 0.0, 1.0 / 3;
    EXPECT_NEAR(product_entanglement_number(ProductMeasure(b)), std::sqrt(2.0 / 3.0), 1e-12);
    EXPECT_EQ(product_entanglement_number(ProductMeasure(Eigen::MatrixXd::Ones(1, 1))), 0.0);
}

TEST(ClassicalProperties, BoundsAndPointCharacterization) {
    Rng rng = make_rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 7);
        const ProbMeasure u = random_sparse_measure(n, rng);
        const double e = entanglement_number(u);
        EXPECT_GE(e, 0.0);
        EXPECT_LT(e, 1.0);
        EXPECT_EQ(e < 1e-7, is_point(u));
        EXPECT_NEAR(e, pairwise_entanglement(u), 1e-12);
        const std::size_t idx = entanglement_index(u);
        EXPECT_LE(e, max_entanglement_bound(idx) + 1e-12);
    }
}

TEST(ClassicalProperties, BoundAttainedExactlyByUniform) {
    for (std::size_t n = 1; n <= 8; ++n) {
        EXPECT_NEAR(entanglement_number(ProbMeasure::uniform(n)), max_entanglement_bound(n), 1e-12);
    }
    Rng rng = make_rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
        const ProbMeasure u = random_measure(n, rng);
        ASSERT_FALSE(is_uniform(u));
        EXPECT_LT(entanglement_number(u), max_entanglement_bound(n) - 1e-9);
    }
}

TEST(ClassicalProperties, Concavity) {
    Rng rng = make_rng(13);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const ProbMeasure u = random_sparse_measure(1 + static_cast<std::size_t>(trial % 6), rng);
        const ProbMeasure v = random_sparse_measure(1 + static_cast<std::size_t>((trial / 6) % 6), rng);
        const double lambda = unit(rng);
        const double lhs = entanglement_number(mixture(u, v, lambda));
        const double rhs = lambda * entanglement_number(u) + (1 - lambda) * entanglement_number(v);
        EXPECT_GE(lhs, rhs - 1e-12);
    }
}

TEST(ClassicalProperties, StrictConcavityForDistinctMeasures) {
    Rng rng = make_rng(14);
    std::uniform_real_distribution<double> lam(0.05, 0.95);
    for (int trial = 0; trial < 500; ++trial) {
        const ProbMeasure u = random_measure(4, rng);
        const ProbMeasure v = random_measure(4, rng);
        const double lambda = lam(rng);
        const double lhs = entanglement_number(mixture(u, v, lambda));
        const double rhs = lambda * entanglement_number(u) + (1 - lambda) * entanglement_number(v);
        EXPECT_GT(lhs - rhs, 0.0);
    }
}

TEST(ClassicalProperties, ProductsAreFactorized) {
    Rng rng = make_rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        const ProbMeasure v = random_sparse_measure(1 + static_cast<std::size_t>(trial % 4), rng);
        const ProbMeasure w = random_sparse_measure(1 + static_cast<std::size_t>(trial % 5), rng);
        EXPECT_TRUE(is_factorized(product(v, w)));
    }
}

TEST(ClassicalProperties, ZeroEntanglementImpliesFactorized) {
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 2; ++j) {
            Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 2);
            w(i, j) = 1.0;
            const ProductMeasure u(w);
            EXPECT_EQ(product_entanglement_number(u), 0.0);
            EXPECT_TRUE(is_factorized(u));
        }
    }
    // Converse fails: factorized with positive entanglement number.
    Eigen::MatrixXd a(1, 2);
    a << 0.5, 0.5;
    EXPECT_TRUE(is_factorized(ProductMeasure(a)));
    EXPECT_GT(product_entanglement_number(ProductMeasure(a)), 0.7);
}

TEST(ClassicalProperties, IndexAddsOverDisjointSupports) {
    Rng rng = make_rng(16);
    std::uniform_real_distribution<double> lam(0.01, 0.99);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a = random_simplex(3, rng);
        std::vector<double> b = random_simplex(4, rng);
        std::vector<double> u(7, 0.0), v(7, 0.0);
        std::copy(a.begin(), a.end(), u.begin());
        std::copy(b.begin(), b.end(), v.begin() + 3);
        const ProbMeasure mu(u), mv(v);
        const double lambda = lam(rng);
        const ProbMeasure mix = mixture(mu, mv, lambda);
        EXPECT_EQ(entanglement_index(mix), entanglement_index(mu) + entanglement_index(mv));
        // n is concave in general.
        EXPECT_GE(static_cast<double>(entanglement_index(mix)),
                  lambda * static_cast<double>(entanglement_index(mu)) +
                      (1 - lambda) * static_cast<double>(entanglement_index(mv)));
    }
    // At lambda = 1 the sum formula fails.
    const ProbMeasure mu({1.0, 0.0}), mv({0.0, 1.0});
    EXPECT_EQ(entanglement_index(mixture(mu, mv, 1.0)), 1U);
}
