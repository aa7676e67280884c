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

// Bipartite structure on H1 (x) H2: Kronecker products, Schmidt
// decomposition, and the objects generated by an entanglement
// E = (lambda, A, B): the vector psi_E, the separable part rho_E and the
// entanglement operator B_E with P_E = rho_E + B_E.
//
// Index convention: basis vector e_i (x) e_j of C^dA (x) C^dB sits at
// position i * dB + j, so a bipartite vector reshaped row-major is its
// dA x dB coefficient matrix.

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "classical.hpp"
#include "contexts.hpp"
#include "operators.hpp"

namespace entangle {

struct FactorDims {
    Eigen::Index a = 0;
    Eigen::Index b = 0;

    [[nodiscard]] Eigen::Index total() const { return a * b; }
    friend bool operator==(const FactorDims &, const FactorDims &) = default;
};

/// A (x) B, entry ((i, j), (k, l)) = A_ik B_jl.
inline Operator tensor(const Operator &a, const Operator &b) {
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
        }
    }
    return out;
}

inline ComplexVector tensor(const ComplexVector &x, const ComplexVector &y) {
    ComplexVector out(x.size() * y.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        out.segment(i * y.size(), y.size()) = x[i] * y;
    }
    return out;
}

/// Row-major reshape of a vector on C^dA (x) C^dB into its coefficient matrix.
inline Operator coefficient_matrix(const ComplexVector &v, FactorDims dims) {
    if (dims.a <= 0 || dims.b <= 0 || v.size() != dims.total()) {
        throw DimensionError("coefficient_matrix: dims do not factor the vector length");
    }
    Operator c(dims.a, dims.b);
    for (Eigen::Index i = 0; i < dims.a; ++i) {
        for (Eigen::Index j = 0; j < dims.b; ++j) {
            c(i, j) = v[i * dims.b + j];
        }
    }
    return c;
}

/// Unit vector psi = sum_ij C_ij e_i (x) e_j.
class BipartiteVectorState {
  public:
    explicit BipartiteVectorState(Operator coeff) : coeff_(std::move(coeff)) {
        if (coeff_.size() == 0) {
            throw InvariantError("BipartiteVectorState: empty coefficient matrix");
        }
        if (std::abs(coeff_.norm() - 1.0) > state_tol) {
            throw InvariantError("BipartiteVectorState: state is not unit norm");
        }
    }

    BipartiteVectorState(const ComplexVector &v, FactorDims dims)
        : BipartiteVectorState(coefficient_matrix(v, dims)) {}

    static BipartiteVectorState product(const VectorState &x, const VectorState &y) {
        return BipartiteVectorState(Operator(x.vec() * y.vec().transpose()));
    }

    [[nodiscard]] FactorDims dims() const { return {coeff_.rows(), coeff_.cols()}; }
    [[nodiscard]] const Operator &coeff() const { return coeff_; }

    [[nodiscard]] ComplexVector vector() const {
        ComplexVector v(coeff_.size());
        for (Eigen::Index i = 0; i < coeff_.rows(); ++i) {
            v.segment(i * coeff_.cols(), coeff_.cols()) = coeff_.row(i).transpose();
        }
        return v;
    }

    [[nodiscard]] VectorState state() const { return VectorState(vector()); }

  private:
    Operator coeff_;
};

/// (lambda, A, B) with lambda supported on {1..n} and both contexts of dim n.
class Entanglement {
  public:
    Entanglement(classical::ProbMeasure lambda, Context ctx_a, Context ctx_b)
        : lambda_(pad(lambda, ctx_a.dim())), ctx_a_(std::move(ctx_a)),
          ctx_b_(std::move(ctx_b)) {
        if (ctx_a_.dim() != ctx_b_.dim()) {
            throw DimensionError("Entanglement: contexts differ in dimension");
        }
    }

    [[nodiscard]] const classical::ProbMeasure &lambda() const { return lambda_; }
    [[nodiscard]] const Context &ctx_a() const { return ctx_a_; }
    [[nodiscard]] const Context &ctx_b() const { return ctx_b_; }
    [[nodiscard]] Eigen::Index dim() const { return ctx_a_.dim(); }

    /// phi_i (x) psi_i
    [[nodiscard]] ComplexVector paired_vector(Eigen::Index i) const {
        return tensor(ctx_a_.vector(i), ctx_b_.vector(i));
    }

  private:
    static classical::ProbMeasure pad(const classical::ProbMeasure &lambda, Eigen::Index n) {
        if (static_cast<Eigen::Index>(lambda.size()) > n) {
            for (std::size_t i = static_cast<std::size_t>(n); i < lambda.size(); ++i) {
                if (lambda[i] > classical::zero_tol) {
                    throw InvariantError("Entanglement: support of lambda exceeds the context dimension");
                }
            }
        }
        std::vector<double> w(static_cast<std::size_t>(n), 0.0);
        for (std::size_t i = 0; i < std::min(lambda.size(), w.size()); ++i) {
            w[i] = lambda[i];
        }
        return classical::ProbMeasure(std::move(w));
    }

    classical::ProbMeasure lambda_;
    Context ctx_a_;
    Context ctx_b_;
};

/// D = A (x) B = {phi_i (x) psi_j}, ordered i * n + j.
inline Context product_context(const Context &a, const Context &b) {
    return Context(tensor(a.basis(), b.basis()));
}

/// psi_E = sum_i sqrt(lambda_i) phi_i (x) psi_i
inline BipartiteVectorState psi_from_entanglement(const Entanglement &e) {
    const Eigen::Index n = e.dim();
    Operator c = Operator::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = e.lambda()[static_cast<std::size_t>(i)];
        if (w > 0.0) {
            c += std::sqrt(w) * e.ctx_a().vector(i) * e.ctx_b().vector(i).transpose();
        }
    }
    return BipartiteVectorState(std::move(c));
}

/// Schmidt decomposition via the SVD of the coefficient matrix (the smaller
/// factor is zero-padded first). lambda_i = sigma_i^2 in descending order;
/// the first nonzero component of each phi_i is real positive.
inline Entanglement schmidt_decompose(const BipartiteVectorState &psi) {
    const FactorDims d = psi.dims();
    const Eigen::Index n = std::max(d.a, d.b);
    Operator c = Operator::Zero(n, n);
    c.topLeftCorner(d.a, d.b) = psi.coeff();
    Eigen::JacobiSVD<Operator> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Operator u = svd.matrixU();
    Operator v = svd.matrixV().conjugate();
    const Eigen::VectorXd sigma = svd.singularValues();

    std::vector<double> lambda(static_cast<std::size_t>(n));
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        lambda[static_cast<std::size_t>(i)] = sigma[i] * sigma[i];
        total += sigma[i] * sigma[i];
    }
    for (double &w : lambda) {
        w /= total;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const cplx z = u(k, i);
            if (std::abs(z) > 1e-12) {
                const cplx phase = std::conj(z) / std::abs(z);
                u.col(i) *= phase;
                v.col(i) /= phase;
                break;
            }
        }
    }
    return {classical::ProbMeasure(std::move(lambda)), Context(std::move(u)),
            Context(std::move(v))};
}

/// e(psi) = e(lambda) for the Schmidt weights lambda of psi.
inline double pure_entanglement_number(const BipartiteVectorState &psi) {
    return classical::entanglement_number(schmidt_decompose(psi).lambda());
}

/// e(psi) from the purity of the reduced state: sum_i lambda_i^2 = ||C C*||^2.
/// Accepts an unnormalized coefficient matrix and returns ||C||^2 e(C / ||C||),
/// the weighted contribution of that term to a decomposition.
inline double weighted_entanglement_from_coeff(const Operator &c) {
    const double p = c.squaredNorm();
    const double purity = (c * c.adjoint()).squaredNorm();
    return std::sqrt(std::max(0.0, p * p - purity));
}

/// Factorized iff the leading Schmidt weight is 1 within 1e-10.
inline bool is_factorized(const BipartiteVectorState &psi) {
    return schmidt_decompose(psi).lambda()[0] >= 1.0 - state_tol;
}

/// rho_E = sum_i lambda_i P_{phi_i} (x) P_{psi_i}
inline DensityState rho_E(const Entanglement &e) {
    const Eigen::Index n = e.dim();
    Operator rho = Operator::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = e.lambda()[static_cast<std::size_t>(i)];
        if (w > 0.0) {
            rho += w * projector(e.paired_vector(i));
        }
    }
    return DensityState(rho);
}

/// B_E = sum_{i != j} sqrt(lambda_i lambda_j) |phi_i (x) psi_i><phi_j (x) psi_j|
inline Operator entanglement_operator(const Entanglement &e) {
    const Eigen::Index n = e.dim();
    Operator b = Operator::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double li = e.lambda()[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j) {
            const double lj = e.lambda()[static_cast<std::size_t>(j)];
            if (i != j && li > 0.0 && lj > 0.0) {
                b += std::sqrt(li * lj) * ket_bra(e.paired_vector(i), e.paired_vector(j));
            }
        }
    }
    return b;
}

/// Three independently computed entanglement measures of E; they coincide.
struct EntanglementTriple {
    double context_coeff; // c_D(B_E) over D = A (x) B
    double hs;            // ||B_E||
    double e;             // e(lambda)
};

inline EntanglementTriple verify_entanglement_triple(const Entanglement &e) {
    const Operator b = entanglement_operator(e);
    return {context_coefficient(b, product_context(e.ctx_a(), e.ctx_b())), hs_norm(b),
            classical::entanglement_number(e.lambda())};
}

struct RealEigenPair {
    double value;
    ComplexVector vector;
};

/// Spectrum of B_psi on C^2 (x) C^2 in product-context coordinates: 0 on
/// phi_1 (x) psi_2 and phi_2 (x) psi_1, +-sqrt(lambda_1 lambda_2) on
/// (phi_1 (x) psi_1 +- phi_2 (x) psi_2) / sqrt 2.
inline std::array<RealEigenPair, 4> dim2_B_spectrum(double lam1, double lam2) {
    if (lam1 < 0.0 || lam2 < 0.0 || std::abs(lam1 + lam2 - 1.0) > classical::zero_tol) {
        throw InvariantError("dim2_B_spectrum: (lam1, lam2) is not a probability pair");
    }
    const double s = std::sqrt(lam1 * lam2);
    const double r = 1.0 / std::sqrt(2.0);
    auto basis = [](Eigen::Index k) {
        ComplexVector v = ComplexVector::Zero(4);
        v[k] = 1.0;
        return v;
    };
    return {RealEigenPair{0.0, basis(1)}, RealEigenPair{0.0, basis(2)},
            RealEigenPair{s, r * (basis(0) + basis(3))},
            RealEigenPair{-s, r * (basis(0) - basis(3))}};
}

/// (1/n, ..., 1/n) with the given contexts.
inline Entanglement maximally_entangled(Eigen::Index n, const Context &ctx_a,
                                        const Context &ctx_b) {
    if (n < 2) {
        throw InvariantError("maximally_entangled: n must be at least 2");
    }
    if (ctx_a.dim() != n || ctx_b.dim() != n) {
        throw DimensionError("maximally_entangled: contexts must have dimension n");
    }
    return {classical::ProbMeasure::uniform(static_cast<std::size_t>(n)), ctx_a, ctx_b};
}

/// {phi_i (x) phi_i} followed by (phi_i (x) phi_j + phi_j (x) phi_i) / sqrt 2
/// and then (phi_i (x) phi_j - phi_j (x) phi_i) / sqrt 2, pairs i < j in
/// lexicographic order. The first n(n+1)/2 vectors are symmetric.
inline Context symmetric_antisymmetric_basis(const Context &ctx) {
    const Eigen::Index n = ctx.dim();
    Operator out(n * n, n * n);
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        out.col(col++) = tensor(ctx.vector(i), ctx.vector(i));
    }
    const double r = 1.0 / std::sqrt(2.0);
    for (double sign : {1.0, -1.0}) {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                out.col(col++) = r * (tensor(ctx.vector(i), ctx.vector(j)) +
                                      sign * tensor(ctx.vector(j), ctx.vector(i)));
            }
        }
    }
    return Context(std::move(out));
}

} // namespace entangle
