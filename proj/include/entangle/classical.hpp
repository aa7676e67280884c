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
#pragma once

// Entanglement of discrete probability measures on N and N x N.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace entangle::classical {

inline constexpr double zero_tol = 1e-12;

/// A probability vector with finite support. Index i of the container is
/// the point i + 1 of N.
class ProbMeasure {
  public:
    explicit ProbMeasure(std::vector<double> weights)
        : weights_(std::move(weights)) {
        if (weights_.empty()) {
            throw InvariantError("ProbMeasure: empty weight vector");
        }
        double sum = 0.0;
        for (double w : weights_) {
            if (!std::isfinite(w) || w < 0.0) {
                throw InvariantError("ProbMeasure: negative or non-finite weight");
            }
            sum += w;
        }
        if (std::abs(sum - 1.0) > zero_tol) {
            throw InvariantError("ProbMeasure: weights sum to " +
                                 std::to_string(sum) + ", expected 1");
        }
    }

    static ProbMeasure point(std::size_t size, std::size_t at) {
        std::vector<double> w(size, 0.0);
        w.at(at) = 1.0;
        return ProbMeasure(std::move(w));
    }

    static ProbMeasure uniform(std::size_t n) {
        return ProbMeasure(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    }

    [[nodiscard]] std::size_t size() const { return weights_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return weights_[i]; }
    [[nodiscard]] std::span<const double> weights() const { return weights_; }

    /// ||u||^2 = sum u_i^2
    [[nodiscard]] double squared_norm() const {
        double s = 0.0;
        for (double w : weights_) {
            s += w * w;
        }
        return s;
    }

    friend bool operator==(const ProbMeasure &, const ProbMeasure &) = default;

  private:
    std::vector<double> weights_;
};

/// A probability measure on N x N, entry (i, j) is u_ij.
class ProductMeasure {
  public:
    explicit ProductMeasure(Eigen::MatrixXd weights) : weights_(std::move(weights)) {
        if (weights_.size() == 0) {
            throw InvariantError("ProductMeasure: empty weight matrix");
        }
        if (!weights_.allFinite() || weights_.minCoeff() < 0.0) {
            throw InvariantError("ProductMeasure: negative or non-finite weight");
        }
        if (std::abs(weights_.sum() - 1.0) > zero_tol) {
            throw InvariantError("ProductMeasure: weights do not sum to 1");
        }
    }

    [[nodiscard]] const Eigen::MatrixXd &weights() const { return weights_; }
    [[nodiscard]] Eigen::Index rows() const { return weights_.rows(); }
    [[nodiscard]] Eigen::Index cols() const { return weights_.cols(); }

    /// i -> sum_j u_ij
    [[nodiscard]] std::vector<double> row_marginal() const {
        Eigen::VectorXd m = weights_.rowwise().sum();
        return {m.data(), m.data() + m.size()};
    }
    /// j -> sum_i u_ij
    [[nodiscard]] std::vector<double> col_marginal() const {
        Eigen::RowVectorXd m = weights_.colwise().sum();
        return {m.data(), m.data() + m.size()};
    }

  private:
    Eigen::MatrixXd weights_;
};

/// Zero-based indices with u_i > zero_tol.
inline std::vector<std::size_t> support(const ProbMeasure &u) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] > zero_tol) {
            s.push_back(i);
        }
    }
    return s;
}

/// n(u), the cardinality of the support.
inline std::size_t entanglement_index(const ProbMeasure &u) {
    return support(u).size();
}

/// e(u) = (1 - ||u||^2)^{1/2}
inline double entanglement_number(const ProbMeasure &u) {
    return std::sqrt(std::max(0.0, 1.0 - u.squared_norm()));
}

inline bool is_point(const ProbMeasure &u) {
    return std::ranges::any_of(u.weights(),
                               [](double w) { return w >= 1.0 - zero_tol; });
}

inline bool is_uniform(const ProbMeasure &u) {
    double first = -1.0;
    for (double w : u.weights()) {
        if (w <= zero_tol) {
            continue;
        }
        if (first < 0.0) {
            first = w;
        } else if (std::abs(w - first) > zero_tol) {
            return false;
        }
    }
    return true;
}

/// ((n - 1) / n)^{1/2}, the largest entanglement number of a measure with
/// entanglement index n. Attained exactly by the uniform measure.
inline double max_entanglement_bound(std::size_t n) {
    if (n == 0) {
        throw InvariantError("max_entanglement_bound: n must be positive");
    }
    const double nn = static_cast<double>(n);
    return std::sqrt((nn - 1.0) / nn);
}

/// lambda * u + (1 - lambda) * v, the shorter measure padded with zeros.
inline ProbMeasure mixture(const ProbMeasure &u, const ProbMeasure &v,
                           double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw InvariantError("mixture: lambda must lie in [0, 1]");
    }
    const std::size_t n = std::max(u.size(), v.size());
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        w[i] += lambda * u[i];
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] += (1.0 - lambda) * v[i];
    }
    return ProbMeasure(std::move(w));
}

/// (v x w)_ij = v_i w_j
inline ProductMeasure product(const ProbMeasure &v, const ProbMeasure &w) {
    Eigen::Map<const Eigen::VectorXd> vv(v.weights().data(),
                                        static_cast<Eigen::Index>(v.size()));
    Eigen::Map<const Eigen::VectorXd> ww(w.weights().data(),
                                        static_cast<Eigen::Index>(w.size()));
    return ProductMeasure(vv * ww.transpose());
}

/// True iff u equals the product of its two marginals entrywise within tol.
inline bool is_factorized(const ProductMeasure &u, double tol = 1e-10) {
    const auto rows = u.row_marginal();
    const auto cols = u.col_marginal();
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        for (Eigen::Index j = 0; j < u.cols(); ++j) {
            const double expected = rows[static_cast<std::size_t>(i)] *
                                    cols[static_cast<std::size_t>(j)];
            if (std::abs(u.weights()(i, j) - expected) > tol) {
                return false;
            }
        }
    }
    return true;
}

/// (1 - sum u_ij^2)^{1/2}
inline double product_entanglement_number(const ProductMeasure &u) {
    return std::sqrt(std::max(0.0, 1.0 - u.weights().squaredNorm()));
}

} // namespace entangle::classical
