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

// Seeded random generators for operators, states and unitaries. All draws go
// through a caller-owned engine so results are reproducible from a seed.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "operators.hpp"

namespace entangle {

using Rng = std::mt19937_64;

/// Engine for stream `index` of a seeded family (e.g. one per restart).
inline Rng make_rng(std::uint64_t seed, std::uint64_t index = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

/// Matrix with i.i.d. standard complex Gaussian entries.
inline Operator random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    Operator m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = n01(rng);
            const double im = n01(rng);
            m(i, j) = cplx(re, im);
        }
    }
    return m;
}

/// Haar-distributed unitary (QR of a Gaussian matrix with the R phases removed).
inline Operator random_unitary(Eigen::Index n, Rng &rng) {
    const Operator g = random_gaussian(n, n, rng);
    Eigen::HouseholderQR<Operator> qr(g);
    Operator q = qr.householderQ() * Operator::Identity(n, n);
    const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const cplx d = r(k, k);
        if (std::abs(d) > 0.0) {
            q.col(k) *= d / std::abs(d);
        }
    }
    return q;
}

inline Operator random_operator(Eigen::Index n, Rng &rng) {
    return random_gaussian(n, n, rng);
}

inline Operator random_hermitian(Eigen::Index n, Rng &rng) {
    const Operator g = random_gaussian(n, n, rng);
    return 0.5 * (g + g.adjoint());
}

inline VectorState random_vector_state(Eigen::Index n, Rng &rng) {
    return VectorState::normalized(random_gaussian(n, 1, rng).col(0));
}

/// Full-rank state G G* / tr(G G*) for a Gaussian G.
inline DensityState random_density(Eigen::Index n, Rng &rng) {
    const Operator g = random_gaussian(n, n, rng);
    Operator rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityState(rho);
}

/// Uniform draw from the probability simplex of the given size.
inline std::vector<double> random_simplex(std::size_t n, Rng &rng) {
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> w(n);
    double s = 0.0;
    for (double &x : w) {
        x = ex(rng);
        s += x;
    }
    for (double &x : w) {
        x /= s;
    }
    return w;
}

} // namespace entangle
