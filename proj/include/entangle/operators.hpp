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

// Dense complex operators on a finite-dimensional Hilbert space, vector and
// density states, and the quantum statistics of an operator in a state.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace entangle {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double state_tol = 1e-10;

inline Operator adjoint(const Operator &a) { return a.adjoint(); }

/// <A, B> = tr(A* B)
inline cplx hs_inner(const Operator &a, const Operator &b) {
    detail::require_same_dim(static_cast<std::size_t>(a.rows()),
                             static_cast<std::size_t>(b.rows()), "hs_inner");
    detail::require_same_dim(static_cast<std::size_t>(a.cols()),
                             static_cast<std::size_t>(b.cols()), "hs_inner");
    // tr(A* B) = sum_ij conj(A_ij) B_ij
    return (a.conjugate().array() * b.array()).sum();
}

/// ||A|| = tr(A* A)^{1/2}, the Frobenius norm.
inline double hs_norm(const Operator &a) { return a.norm(); }

/// |phi><phi|
inline Operator ket_bra(const ComplexVector &ket, const ComplexVector &bra) {
    return ket * bra.adjoint();
}

inline Operator projector(const ComplexVector &v) { return ket_bra(v, v); }

/// Spectral data of a Hermitian operator. Eigenvalues are in descending
/// order; vectors(:, k) belongs to values[k].
struct HermitianEigen {
    Eigen::VectorXd values;
    Operator vectors;
};

namespace detail {

inline double hermiticity_defect(const Operator &a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

// First index whose magnitude is within 1e-12 of the largest component.
inline Eigen::Index dominant_index(const ComplexVector &v) {
    const double peak = v.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v[k]) >= peak - 1e-12) {
            return k;
        }
    }
    return 0;
}

// Rotate the phase so the dominant component is real and positive.
inline void fix_phase(Eigen::Ref<ComplexVector> v) {
    const cplx c = v[dominant_index(v)];
    if (std::abs(c) > 0.0) {
        v *= std::conj(c) / std::abs(c);
    }
}

inline void require_square(const Operator &a, const char *what) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw DimensionError(std::string(what) + ": operator must be square and non-empty");
    }
}

} // namespace detail

/// Eigendecomposition A = sum_k values[k] |v_k><v_k| of a Hermitian operator.
/// Ties are ordered by the position of each eigenvector's dominant component
/// and every eigenvector is phased so that component is real positive.
inline HermitianEigen hermitian_eigen(const Operator &a) {
    detail::require_square(a, "hermitian_eigen");
    const double scale = std::max(1.0, hs_norm(a));
    if (detail::hermiticity_defect(a) > state_tol * scale) {
        throw InvariantError("hermitian_eigen: operator is not Hermitian");
    }
    const Operator h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> solver(h);
    if (solver.info() != Eigen::Success) {
        throw InvariantError("hermitian_eigen: eigensolver did not converge");
    }
    const Eigen::Index n = h.rows();
    Operator vecs = solver.eigenvectors();
    std::vector<Eigen::Index> dominant(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        detail::fix_phase(vecs.col(k));
        dominant[static_cast<std::size_t>(k)] = detail::dominant_index(vecs.col(k));
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const Eigen::VectorXd &vals = solver.eigenvalues();
    std::ranges::stable_sort(order, [&](Eigen::Index x, Eigen::Index y) {
        if (std::abs(vals[x] - vals[y]) > 1e-12 * scale) {
            return vals[x] > vals[y];
        }
        return dominant[static_cast<std::size_t>(x)] <
               dominant[static_cast<std::size_t>(y)];
    });
    HermitianEigen out{Eigen::VectorXd(n), Operator(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = vals[order[static_cast<std::size_t>(k)]];
        out.vectors.col(k) = vecs.col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

/// A unit vector phi, also standing for the pure state P_phi.
class VectorState {
  public:
    explicit VectorState(ComplexVector amplitudes) : amp_(std::move(amplitudes)) {
        if (amp_.size() == 0) {
            throw InvariantError("VectorState: empty amplitude vector");
        }
        if (std::abs(amp_.norm() - 1.0) > state_tol) {
            throw InvariantError("VectorState: vector is not unit norm");
        }
    }

    /// Rescales a nonzero vector to unit norm.
    static VectorState normalized(const ComplexVector &v) {
        const double n = v.norm();
        if (!(n > 0.0)) {
            throw InvariantError("VectorState: cannot normalize the zero vector");
        }
        return VectorState(v / n);
    }

    static VectorState basis(Eigen::Index dim, Eigen::Index k) {
        ComplexVector v = ComplexVector::Zero(dim);
        v[k] = 1.0;
        return VectorState(std::move(v));
    }

    [[nodiscard]] const ComplexVector &vec() const { return amp_; }
    [[nodiscard]] Eigen::Index dim() const { return amp_.size(); }
    [[nodiscard]] Operator projector() const { return entangle::projector(amp_); }

  private:
    ComplexVector amp_;
};

/// A positive operator of unit trace.
class DensityState {
  public:
    explicit DensityState(const Operator &rho) {
        detail::require_square(rho, "DensityState");
        if (detail::hermiticity_defect(rho) > state_tol) {
            throw InvariantError("DensityState: matrix is not Hermitian");
        }
        if (std::abs(rho.trace() - cplx(1.0)) > state_tol) {
            throw InvariantError("DensityState: trace is not 1");
        }
        rho_ = 0.5 * (rho + rho.adjoint());
        Eigen::SelfAdjointEigenSolver<Operator> solver(rho_, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -state_tol) {
            throw InvariantError("DensityState: matrix has a negative eigenvalue");
        }
    }

    explicit DensityState(const VectorState &phi) : rho_(phi.projector()) {}

    static DensityState maximally_mixed(Eigen::Index dim) {
        return DensityState(Operator(Operator::Identity(dim, dim) / static_cast<double>(dim)));
    }

    [[nodiscard]] const Operator &matrix() const { return rho_; }
    [[nodiscard]] Eigen::Index dim() const { return rho_.rows(); }

  private:
    Operator rho_;
};

/// E_rho(A) = tr(rho A)
inline cplx expectation(const DensityState &rho, const Operator &a) {
    detail::require_same_dim(static_cast<std::size_t>(rho.dim()),
                             static_cast<std::size_t>(a.rows()), "expectation");
    detail::require_square(a, "expectation");
    return (rho.matrix() * a).trace();
}

/// E_phi(A) = <phi, A phi>
inline cplx expectation(const VectorState &phi, const Operator &a) {
    detail::require_same_dim(static_cast<std::size_t>(phi.dim()),
                             static_cast<std::size_t>(a.rows()), "expectation");
    detail::require_square(a, "expectation");
    return phi.vec().dot(a * phi.vec());
}

/// V_rho(A) = E_rho(|A|^2) - |E_rho(A)|^2 with |A|^2 = A* A.
inline double variance(const DensityState &rho, const Operator &a) {
    const cplx mean = expectation(rho, a);
    const double second = (rho.matrix() * (a.adjoint() * a)).trace().real();
    return std::max(0.0, second - std::norm(mean));
}

/// V_phi(A) = <phi, |A|^2 phi> - |<phi, A phi>|^2, evaluated as the
/// cancellation-free ||A phi - <phi, A phi> phi||^2.
inline double variance(const VectorState &phi, const Operator &a) {
    detail::require_same_dim(static_cast<std::size_t>(phi.dim()),
                             static_cast<std::size_t>(a.rows()), "variance");
    detail::require_square(a, "variance");
    const ComplexVector a_phi = a * phi.vec();
    const cplx mean = phi.vec().dot(a_phi);
    return (a_phi - mean * phi.vec()).squaredNorm();
}

/// Hermitian square root of a state. Eigenvalues below 1e-14 (round-off
/// level for a unit-trace matrix) are taken as zero.
inline Operator psd_sqrt(const DensityState &rho) {
    const HermitianEigen eig = hermitian_eigen(rho.matrix());
    const Eigen::VectorXd roots =
        eig.values.unaryExpr([](double x) { return x > 1e-14 ? std::sqrt(x) : 0.0; });
    return eig.vectors * roots.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

/// If V_rho(A) <= tol, returns the c with A rho^{1/2} = c rho^{1/2}, namely
/// c = E_rho(A), after checking that identity to within sqrt(tol) relative
/// to max(1, ||A||). Returns nullopt when the variance is positive.
inline std::optional<cplx> variance_zero_witness(const DensityState &rho,
                                                 const Operator &a,
                                                 double tol = 1e-10) {
    if (variance(rho, a) > tol) {
        return std::nullopt;
    }
    const cplx c = expectation(rho, a);
    const Operator root = psd_sqrt(rho);
    const double scale = std::max(1.0, hs_norm(a));
    if (hs_norm(a * root - c * root) > std::sqrt(tol) * scale) {
        return std::nullopt;
    }
    return c;
}

} // namespace entangle
