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

// Contexts (orthonormal bases), context coefficients, the context and
// residual maps, and the two residual shapes whose spectra are known in
// closed form.

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "operators.hpp"
#include "random.hpp"

namespace entangle {

/// An ordered orthonormal basis {phi_i}; column i of basis() is phi_i.
class Context {
  public:
    explicit Context(Operator basis) : basis_(std::move(basis)) {
        detail::require_square(basis_, "Context");
        const Eigen::Index n = basis_.cols();
        const Operator gram = basis_.adjoint() * basis_;
        if ((gram - Operator::Identity(n, n)).cwiseAbs().maxCoeff() > state_tol) {
            throw InvariantError("Context: basis vectors are not orthonormal");
        }
        const Operator completeness = basis_ * basis_.adjoint();
        if ((completeness - Operator::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9) {
            throw InvariantError("Context: projections do not sum to the identity");
        }
    }

    explicit Context(const std::vector<VectorState> &vectors)
        : Context(stack(vectors)) {}

    static Context standard(Eigen::Index n) {
        return Context(Operator(Operator::Identity(n, n)));
    }

    /// Orthonormalized complex Gaussian matrix.
    static Context random(Eigen::Index n, Rng &rng) {
        return Context(random_unitary(n, rng));
    }

    [[nodiscard]] Eigen::Index dim() const { return basis_.cols(); }
    [[nodiscard]] const Operator &basis() const { return basis_; }
    [[nodiscard]] ComplexVector vector(Eigen::Index i) const { return basis_.col(i); }
    [[nodiscard]] VectorState state(Eigen::Index i) const { return VectorState(basis_.col(i)); }
    [[nodiscard]] Operator projector(Eigen::Index i) const {
        return entangle::projector(basis_.col(i));
    }

    /// Matrix of A in this basis: entry (i, j) = <phi_i, A phi_j>.
    [[nodiscard]] Operator coordinates(const Operator &a) const {
        detail::require_same_dim(static_cast<std::size_t>(dim()),
                                 static_cast<std::size_t>(a.rows()), "Context");
        return basis_.adjoint() * a * basis_;
    }

    /// Inverse of coordinates().
    [[nodiscard]] Operator from_coordinates(const Operator &m) const {
        return basis_ * m * basis_.adjoint();
    }

  private:
    static Operator stack(const std::vector<VectorState> &vectors) {
        if (vectors.empty()) {
            throw InvariantError("Context: no basis vectors");
        }
        const auto n = static_cast<Eigen::Index>(vectors.size());
        Operator m(vectors.front().dim(), n);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (vectors[static_cast<std::size_t>(i)].dim() != m.rows()) {
                throw DimensionError("Context: basis vectors differ in dimension");
            }
            m.col(i) = vectors[static_cast<std::size_t>(i)].vec();
        }
        return m;
    }

    Operator basis_;
};

/// c(A) = [sum_i V_{phi_i}(A)]^{1/2}
inline double context_coefficient(const Operator &a, const Context &ctx) {
    detail::require_same_dim(static_cast<std::size_t>(a.rows()),
                             static_cast<std::size_t>(ctx.dim()), "context_coefficient");
    double total = 0.0;
    for (Eigen::Index i = 0; i < ctx.dim(); ++i) {
        total += variance(ctx.state(i), a);
    }
    return std::sqrt(total);
}

/// L(A) = sum_i <phi_i, A phi_i> |phi_i><phi_i|
inline Operator context_map(const Operator &a, const Context &ctx) {
    const Operator coords = ctx.coordinates(a);
    const Operator diag = coords.diagonal().asDiagonal();
    return ctx.from_coordinates(diag);
}

/// R(A) = sum_{i != j} <phi_i, A phi_j> |phi_i><phi_j| = A - L(A)
inline Operator residual_map(const Operator &a, const Context &ctx) {
    return a - context_map(a, ctx);
}

/// True iff A commutes with every projection of the context, i.e.
/// max_i ||A P_i - P_i A|| <= tol.
inline bool is_measurable(const Operator &a, const Context &ctx, double tol = 1e-10) {
    detail::require_same_dim(static_cast<std::size_t>(a.rows()),
                             static_cast<std::size_t>(ctx.dim()), "is_measurable");
    for (Eigen::Index i = 0; i < ctx.dim(); ++i) {
        const Operator p = ctx.projector(i);
        if (hs_norm(a * p - p * a) > tol) {
            return false;
        }
    }
    return true;
}

/// alpha * sum_{i != j} |phi_i><phi_j|
inline Operator offdiag_uniform(const Context &ctx, cplx alpha) {
    if (!(std::abs(alpha) > 0.0)) {
        throw InvariantError("offdiag_uniform: alpha must be nonzero");
    }
    const Eigen::Index n = ctx.dim();
    Operator coords = Operator::Constant(n, n, alpha);
    coords.diagonal().setZero();
    return ctx.from_coordinates(coords);
}

/// Eigenstructure of sum_{i != j} |phi_i><phi_j| in context coordinates:
/// n - 1 on psi = n^{-1/2} sum_k phi_k and -1 on an orthonormal basis of
/// the complement of psi.
struct OffdiagSpectrum {
    double top_value = 0.0;
    ComplexVector top_vector;
    double rest_value = -1.0;
    Operator rest_vectors; // n x (n - 1), orthonormal columns

    /// Vectors expressed in the ambient space of ctx: column 0 is psi.
    [[nodiscard]] Operator in_context(const Context &ctx) const {
        Operator coords(top_vector.size(), top_vector.size());
        coords.col(0) = top_vector;
        coords.rightCols(rest_vectors.cols()) = rest_vectors;
        return ctx.basis() * coords;
    }
};

/// The complement basis is the Gram-Schmidt orthonormalization of
/// phi_1 - phi_2, phi_1 + phi_2 - 2 phi_3, ..., which gives
/// (phi_1 + ... + phi_k - k phi_{k+1}) / sqrt(k (k + 1)).
inline OffdiagSpectrum offdiag_uniform_spectrum(Eigen::Index n) {
    if (n < 2) {
        throw InvariantError("offdiag_uniform_spectrum: n must be at least 2");
    }
    OffdiagSpectrum s;
    s.top_value = static_cast<double>(n - 1);
    s.top_vector = ComplexVector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    s.rest_value = -1.0;
    s.rest_vectors = Operator::Zero(n, n - 1);
    for (Eigen::Index k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double norm = std::sqrt(kk * (kk + 1.0));
        s.rest_vectors.col(k - 1).head(k).setConstant(1.0 / norm);
        s.rest_vectors(k, k - 1) = -kk / norm;
    }
    return s;
}

struct EigenPair {
    cplx value;
    ComplexVector vector;
};

/// Eigenpairs of R = a |phi_1><phi_2| + b |phi_2><phi_1| on a two-dimensional
/// context. R is normal iff |a| = |b|; nullopt otherwise. With a = |a| e^{i theta},
/// b = |a| e^{i eta}:
///   lambda_1 =  |a| e^{i(theta + eta)/2},  psi_1 = (phi_1 + e^{i(eta - theta)/2} phi_2) / sqrt 2
///   lambda_2 = -lambda_1,                 psi_2 = (-e^{i(theta - eta)/2} phi_1 + phi_2) / sqrt 2
inline std::optional<std::array<EigenPair, 2>>
dim2_residual_eigen(cplx a, cplx b, const Context &ctx) {
    if (ctx.dim() != 2) {
        throw DimensionError("dim2_residual_eigen: context must be two-dimensional");
    }
    if (std::abs(a) == 0.0 || std::abs(b) == 0.0) {
        throw InvariantError("dim2_residual_eigen: a and b must be nonzero");
    }
    if (std::abs(std::abs(a) - std::abs(b)) > state_tol) {
        return std::nullopt;
    }
    const double theta = std::arg(a);
    const double eta = std::arg(b);
    const cplx i(0.0, 1.0);
    const cplx lambda1 = std::abs(a) * std::exp(i * (theta + eta) / 2.0);
    const double r = 1.0 / std::sqrt(2.0);
    const ComplexVector phi1 = ctx.vector(0);
    const ComplexVector phi2 = ctx.vector(1);
    ComplexVector psi1 = r * (phi1 + std::exp(i * (eta - theta) / 2.0) * phi2);
    ComplexVector psi2 = r * (-std::exp(i * (theta - eta) / 2.0) * phi1 + phi2);
    return std::array<EigenPair, 2>{EigenPair{lambda1, std::move(psi1)},
                                    EigenPair{-lambda1, std::move(psi2)}};
}

} // namespace entangle
