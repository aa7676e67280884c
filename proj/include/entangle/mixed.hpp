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

// Entanglement number of a mixed bipartite state: the infimum, over all
// decompositions rho = sum_i p_i |psi_i><psi_i| into pure states, of
// sum_i p_i e(psi_i).
//
// Every decomposition with m terms arises from the spectral decomposition
// rho = sum_j mu_j |chi_j><chi_j| (rank r) through an m x r isometry V:
//   w_i = sum_j V_ij sqrt(mu_j) chi_j,  p_i = ||w_i||^2,  psi_i = w_i / ||w_i||.
// The optimizer searches this isometry space with multi-start Nelder-Mead.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "bipartite.hpp"
#include "classical.hpp"
#include "nelder_mead.hpp"
#include "operators.hpp"
#include "random.hpp"

namespace entangle {

inline constexpr double weight_cutoff = 1e-12;

/// rho = sum_i weights_i |vectors_i><vectors_i| with unit vectors.
class PureDecomposition {
  public:
    PureDecomposition(classical::ProbMeasure weights, std::vector<ComplexVector> vectors)
        : weights_(std::move(weights)), vectors_(std::move(vectors)) {
        if (weights_.size() != vectors_.size()) {
            throw DimensionError("PureDecomposition: weight and vector counts differ");
        }
        for (const auto &v : vectors_) {
            if (v.size() != vectors_.front().size()) {
                throw DimensionError("PureDecomposition: vectors differ in dimension");
            }
            if (std::abs(v.norm() - 1.0) > state_tol) {
                throw InvariantError("PureDecomposition: vector is not unit norm");
            }
        }
    }

    [[nodiscard]] const classical::ProbMeasure &weights() const { return weights_; }
    [[nodiscard]] const std::vector<ComplexVector> &vectors() const { return vectors_; }
    [[nodiscard]] std::size_t size() const { return vectors_.size(); }
    [[nodiscard]] Eigen::Index dim() const { return vectors_.empty() ? 0 : vectors_.front().size(); }

    [[nodiscard]] Operator reconstruct() const {
        Operator rho = Operator::Zero(dim(), dim());
        for (std::size_t i = 0; i < size(); ++i) {
            rho += weights_[i] * projector(vectors_[i]);
        }
        return rho;
    }

    /// Largest entrywise deviation of the reconstruction from rho.
    [[nodiscard]] double reconstruction_error(const DensityState &rho) const {
        detail::require_same_dim(static_cast<std::size_t>(dim()),
                                 static_cast<std::size_t>(rho.dim()), "PureDecomposition");
        return (reconstruct() - rho.matrix()).cwiseAbs().maxCoeff();
    }

    [[nodiscard]] bool decomposes(const DensityState &rho, double tol = 1e-9) const {
        return dim() == rho.dim() && reconstruction_error(rho) <= tol;
    }

  private:
    classical::ProbMeasure weights_;
    std::vector<ComplexVector> vectors_;
};

/// m x r isometry V (V* V = I) selecting a decomposition of a rank-r state.
class DecompositionParam {
  public:
    explicit DecompositionParam(Operator v) : v_(std::move(v)) {
        if (v_.rows() < v_.cols() || v_.cols() == 0) {
            throw DimensionError("DecompositionParam: need m >= r >= 1");
        }
        const Operator gram = v_.adjoint() * v_;
        if ((gram - Operator::Identity(v_.cols(), v_.cols())).cwiseAbs().maxCoeff() > 1e-9) {
            throw InvariantError("DecompositionParam: V is not an isometry");
        }
    }

    [[nodiscard]] const Operator &v() const { return v_; }
    [[nodiscard]] Eigen::Index terms() const { return v_.rows(); }
    [[nodiscard]] Eigen::Index rank() const { return v_.cols(); }

  private:
    Operator v_;
};

namespace detail {

// Nonzero part of the spectrum: weights mu_j > 1e-12 and eigenvectors chi_j.
struct Spectrum {
    Eigen::VectorXd mu;
    Operator chi; // D x r
};

inline Spectrum nonzero_spectrum(const DensityState &rho) {
    const HermitianEigen eig = hermitian_eigen(rho.matrix());
    Eigen::Index r = 0;
    while (r < eig.values.size() && eig.values[r] > weight_cutoff) {
        ++r;
    }
    return {eig.values.head(r), eig.vectors.leftCols(r)};
}

// Columns w_i = sum_j V_ij sqrt(mu_j) chi_j, i.e. W = chi diag(sqrt mu) V^T.
inline Operator unnormalized_terms(const Spectrum &s, const Operator &v) {
    const Eigen::VectorXd roots = s.mu.cwiseSqrt();
    return s.chi * roots.cast<cplx>().asDiagonal() * v.transpose();
}

inline PureDecomposition decomposition_from_terms(const Operator &w) {
    std::vector<double> weights;
    std::vector<ComplexVector> vectors;
    double total = 0.0;
    for (Eigen::Index i = 0; i < w.cols(); ++i) {
        const double p = w.col(i).squaredNorm();
        if (p > weight_cutoff) {
            weights.push_back(p);
            vectors.emplace_back(w.col(i) / std::sqrt(p));
            total += p;
        }
    }
    for (double &p : weights) {
        p /= total;
    }
    return {classical::ProbMeasure(std::move(weights)), std::move(vectors)};
}

inline void require_bipartite(const DensityState &rho, FactorDims dims) {
    if (dims.a <= 0 || dims.b <= 0) {
        throw DimensionError("mixed-state entanglement requires factor dimensions");
    }
    if (dims.total() != rho.dim()) {
        throw DimensionError("factor dimensions do not multiply to the state dimension");
    }
}

} // namespace detail

/// Eigenvalues above 1e-12 as weights, eigenvectors as the pure terms.
inline PureDecomposition spectral_pure_decomposition(const DensityState &rho) {
    const detail::Spectrum s = detail::nonzero_spectrum(rho);
    return detail::decomposition_from_terms(
        detail::unnormalized_terms(s, Operator::Identity(s.mu.size(), s.mu.size())));
}

inline PureDecomposition decomposition_from_param(const DensityState &rho,
                                                  const DecompositionParam &p) {
    const detail::Spectrum s = detail::nonzero_spectrum(rho);
    if (p.rank() != s.mu.size()) {
        throw DimensionError("decomposition_from_param: V must have rank(rho) columns");
    }
    return detail::decomposition_from_terms(detail::unnormalized_terms(s, p.v()));
}

/// The isometry reproducing a given decomposition, padded with zero rows to
/// `terms` rows: V_ij = <chi_j, sqrt(p_i) psi_i> / sqrt(mu_j).
inline DecompositionParam param_from_decomposition(const DensityState &rho,
                                                   const PureDecomposition &d,
                                                   Eigen::Index terms = 0) {
    if (!d.decomposes(rho)) {
        throw InvariantError("param_from_decomposition: decomposition does not reconstruct rho");
    }
    const detail::Spectrum s = detail::nonzero_spectrum(rho);
    const auto m = std::max<Eigen::Index>(terms, static_cast<Eigen::Index>(d.size()));
    Operator v = Operator::Zero(m, s.mu.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const ComplexVector w = std::sqrt(d.weights()[i]) * d.vectors()[i];
        for (Eigen::Index j = 0; j < s.mu.size(); ++j) {
            v(static_cast<Eigen::Index>(i), j) = s.chi.col(j).dot(w) / std::sqrt(s.mu[j]);
        }
    }
    return DecompositionParam(std::move(v));
}

/// e_A(rho) = sum_i p_i e(psi_i). Throws if d does not decompose rho.
inline double decomposition_entanglement(const DensityState &rho, const PureDecomposition &d,
                                         FactorDims dims) {
    detail::require_bipartite(rho, dims);
    if (!d.decomposes(rho)) {
        throw InvariantError("decomposition_entanglement: decomposition does not reconstruct rho");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        total += d.weights()[i] *
                 pure_entanglement_number(BipartiteVectorState(d.vectors()[i], dims));
    }
    return total;
}

struct OptimizerOptions {
    int restarts = 100;
    /// Nelder-Mead iterations per restart.
    int max_iters = 4000;
    double stagnation_tol = 1e-12;
    int patience = 200;
    double sep_threshold = 1e-3;
    std::uint64_t seed = 0;
    /// Number of decomposition terms; 0 selects min(max(r^2, r), 16).
    int m = 0;
    /// Worker threads for restarts; 0 uses the hardware concurrency.
    int threads = 0;
};

struct MixedResult {
    double value = 0.0;
    PureDecomposition best;
    bool converged = false;
    /// e_A(rho) of the spectral decomposition, the starting point of restart 0.
    double spectral_value = 0.0;
    int best_restart = 0;
    int terms = 0;
};

namespace detail {

// Local chart of the Stiefel manifold of m x r isometries around a unitary
// base U0: x -> U0 exp(K(x)) [I_r; 0], where K = [[A, -B*], [B, 0]] with A
// r x r skew-Hermitian and B (m - r) x r. The chart has 2 m r - r^2 real
// coordinates, the dimension of the manifold.
class StiefelChart {
  public:
    StiefelChart(Operator base, Eigen::Index rank) : base_(std::move(base)), r_(rank) {}

    [[nodiscard]] Eigen::Index coords() const {
        const Eigen::Index m = base_.rows();
        return 2 * m * r_ - r_ * r_;
    }

    [[nodiscard]] Operator isometry(const Eigen::VectorXd &x) const {
        const Eigen::Index m = base_.rows();
        Operator k = Operator::Zero(m, m);
        Eigen::Index at = 0;
        for (Eigen::Index i = 0; i < r_; ++i) {
            k(i, i) = cplx(0.0, x[at++]);
            for (Eigen::Index j = i + 1; j < r_; ++j) {
                const cplx z(x[at], x[at + 1]);
                at += 2;
                k(i, j) = z;
                k(j, i) = -std::conj(z);
            }
        }
        for (Eigen::Index i = r_; i < m; ++i) {
            for (Eigen::Index j = 0; j < r_; ++j) {
                const cplx z(x[at], x[at + 1]);
                at += 2;
                k(i, j) = z;
                k(j, i) = -std::conj(z);
            }
        }
        // K = -i H with H = i K Hermitian, so exp(K) = Q exp(-i h) Q*.
        const Operator h = cplx(0.0, 1.0) * k;
        Eigen::SelfAdjointEigenSolver<Operator> eig(h);
        const Eigen::VectorXd &vals = eig.eigenvalues();
        Eigen::VectorXcd phases(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            phases[i] = std::exp(cplx(0.0, -vals[i]));
        }
        const Operator &q = eig.eigenvectors();
        const Operator first_cols =
            q * phases.asDiagonal() * q.topRows(r_).adjoint();
        return base_ * first_cols;
    }

    [[nodiscard]] const Operator &base() const { return base_; }

  private:
    Operator base_;
    Eigen::Index r_;
};

// Unitary whose first r columns are the isometry v.
inline Operator complete_to_unitary(const Operator &v) {
    const Eigen::Index m = v.rows();
    Eigen::HouseholderQR<Operator> qr(v);
    Operator q = qr.householderQ() * Operator::Identity(m, m);
    q.leftCols(v.cols()) = v;
    return q;
}

inline double objective(const Spectrum &s, const Operator &v, FactorDims dims) {
    const Operator w = unnormalized_terms(s, v);
    double total = 0.0;
    for (Eigen::Index i = 0; i < w.cols(); ++i) {
        if (w.col(i).squaredNorm() <= weight_cutoff) {
            continue;
        }
        total += weighted_entanglement_from_coeff(coefficient_matrix(w.col(i), dims));
    }
    return total;
}

struct RestartOutcome {
    double value = std::numeric_limits<double>::infinity();
    Operator v;
    bool converged = false;
};

// One restart: repeated Nelder-Mead rounds, each re-centred on the best point
// found so far with a halved initial step, until a round fails to improve
// or the iteration budget is spent.
inline RestartOutcome run_restart(const Spectrum &s, FactorDims dims, Operator base,
                                  const OptimizerOptions &opts) {
    const Eigen::Index r = s.mu.size();
    RestartOutcome out;
    StiefelChart chart(std::move(base), r);
    auto f = [&](const Eigen::VectorXd &x) { return objective(s, chart.isometry(x), dims); };

    std::vector<double> trace;
    double step = 0.5;
    int budget = opts.max_iters;
    out.v = chart.isometry(Eigen::VectorXd::Zero(chart.coords()));
    out.value = objective(s, out.v, dims);
    trace.push_back(out.value);
    while (budget > 0) {
        optim::NelderMeadOptions nm;
        nm.max_iters = budget;
        nm.initial_step = step;
        nm.stagnation_tol = opts.stagnation_tol;
        nm.patience = std::max(1, opts.patience);
        const optim::NelderMeadResult res = nelder_mead(f, Eigen::VectorXd::Zero(chart.coords()), nm);
        budget -= std::max(1, res.iterations);
        trace.insert(trace.end(), res.trace.begin() + 1, res.trace.end());
        const bool improved = out.value - res.value > opts.stagnation_tol;
        if (res.value < out.value) {
            out.value = res.value;
            out.v = chart.isometry(res.x);
        }
        if (!improved && res.stalled) {
            out.converged = true;
            break;
        }
        chart = StiefelChart(complete_to_unitary(out.v), r);
        step = std::max(step * 0.5, 1e-6);
    }
    const auto p = static_cast<std::size_t>(std::max(1, opts.patience));
    if (!out.converged && trace.size() > p) {
        out.converged = trace[trace.size() - 1 - p] - trace.back() < opts.stagnation_tol;
    }
    return out;
}

} // namespace detail

/// Numerical infimum of e_A(rho) over pure-state decompositions with m terms.
/// Restart 0 starts at the spectral decomposition and restart 1 at
/// `warm_start` (by default the best rank(rho)-term decomposition when
/// m > rank(rho)); the rest start at Haar-random isometries. Restarts are
/// seeded individually so the result does not depend on thread scheduling.
inline MixedResult entanglement_number_mixed(const DensityState &rho, FactorDims dims,
                                             const OptimizerOptions &opts = {},
                                             const std::optional<PureDecomposition> &warm_start = std::nullopt) {
    detail::require_bipartite(rho, dims);
    if (opts.restarts < 1) {
        throw InvariantError("entanglement_number_mixed: restarts must be positive");
    }
    const detail::Spectrum s = detail::nonzero_spectrum(rho);
    const Eigen::Index r = s.mu.size();
    Eigen::Index m = opts.m > 0 ? opts.m : std::min<Eigen::Index>(std::max(r * r, r), 16);
    if (m < r) {
        throw InvariantError("entanglement_number_mixed: m must be at least rank(rho)");
    }
    std::optional<PureDecomposition> warm = warm_start;
    if (!warm && m > r) {
        // Every r-term decomposition is also an m-term one, so seeding from
        // the best r-term result keeps the value monotone in m.
        OptimizerOptions square = opts;
        square.m = static_cast<int>(r);
        warm = entanglement_number_mixed(rho, dims, square).best;
    }
    if (warm) {
        m = std::max<Eigen::Index>(m, static_cast<Eigen::Index>(warm->size()));
    }

    std::vector<Operator> bases(static_cast<std::size_t>(opts.restarts));
    for (int k = 0; k < opts.restarts; ++k) {
        if (k == 0) {
            bases[0] = Operator::Identity(m, m);
        } else if (k == 1 && warm) {
            bases[1] = detail::complete_to_unitary(param_from_decomposition(rho, *warm, m).v());
        } else {
            Rng rng = make_rng(opts.seed, static_cast<std::uint64_t>(k));
            bases[static_cast<std::size_t>(k)] = random_unitary(m, rng);
        }
    }

    std::vector<detail::RestartOutcome> outcomes(bases.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < bases.size(); k = next++) {
            outcomes[k] = detail::run_restart(s, dims, bases[k], opts);
        }
    };
    const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    const auto threads = std::min<std::size_t>(opts.threads > 0 ? static_cast<std::size_t>(opts.threads) : hw,
                                               bases.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < outcomes.size(); ++k) {
        if (outcomes[k].value < outcomes[best].value) {
            best = k;
        }
    }
    const PureDecomposition spectral = spectral_pure_decomposition(rho);
    PureDecomposition best_d =
        detail::decomposition_from_terms(detail::unnormalized_terms(s, outcomes[best].v));
    const double spectral_value = decomposition_entanglement(rho, spectral, dims);
    double value = decomposition_entanglement(rho, best_d, dims);
    if (value > spectral_value) {
        // Only reachable through rounding when restart 0 never moved.
        best_d = spectral;
        value = spectral_value;
    }
    return {value, std::move(best_d), outcomes[best].converged, spectral_value,
            static_cast<int>(best), static_cast<int>(m)};
}

/// The optimizer's decomposition, accepted as a separability certificate when
/// its value is at most sep_threshold and every term has
/// e(psi_i) <= sqrt(sep_threshold).
inline std::optional<PureDecomposition> certificate_from_result(const MixedResult &res,
                                                                FactorDims dims,
                                                                double sep_threshold) {
    if (res.value > sep_threshold) {
        return std::nullopt;
    }
    const double bound = std::sqrt(sep_threshold);
    for (const auto &v : res.best.vectors()) {
        if (pure_entanglement_number(BipartiteVectorState(v, dims)) > bound) {
            return std::nullopt;
        }
    }
    return res.best;
}

/// A decomposition into (numerically) factorized pure states, or nullopt.
/// Absence does not prove entanglement.
inline std::optional<PureDecomposition> separability_certificate(const DensityState &rho,
                                                                 FactorDims dims,
                                                                 const OptimizerOptions &opts = {}) {
    return certificate_from_result(entanglement_number_mixed(rho, dims, opts), dims,
                                   opts.sep_threshold);
}

/// Example state: rho = (|phi (x) phi><phi (x) phi| + |phi_1 (x) phi_1><phi_1 (x) phi_1|) / 2
/// on C^2 (x) C^2 with phi = (phi_1 + phi_2) / sqrt 2 in the standard basis.
/// Separable by construction, yet both spectral vectors are entangled.
struct SeparableExample {
    DensityState rho;
    PureDecomposition spectral;
    PureDecomposition separable;
};

inline SeparableExample example9_state() {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexVector phi1(2), phi(2);
    phi1 << 1.0, 0.0;
    phi << r, r;
    const ComplexVector pp = tensor(phi, phi);
    const ComplexVector p11 = tensor(phi1, phi1);
    const DensityState rho(Operator(0.5 * projector(pp) + 0.5 * projector(p11)));
    PureDecomposition separable(classical::ProbMeasure({0.5, 0.5}), {pp, p11});
    return {rho, spectral_pure_decomposition(rho), std::move(separable)};
}

} // namespace entangle
