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

// JSON interchange. Complex numbers are [re, im] pairs, vectors are arrays
// of pairs, matrices are arrays of rows.

#include <string>
#include <vector>

#include <json.hpp>

#include "bipartite.hpp"
#include "classical.hpp"
#include "contexts.hpp"
#include "mixed.hpp"
#include "operators.hpp"

namespace entangle::io {

using json = nlohmann::json;

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("expected a complex number as [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const ComplexVector &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(to_json(v[i]));
    }
    return out;
}

inline ComplexVector vector_from_json(const json &j) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("expected a non-empty array of [re, im] pairs");
    }
    ComplexVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
    }
    return v;
}

inline json to_json(const Operator &m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out.push_back(to_json(ComplexVector(m.row(i).transpose())));
    }
    return out;
}

/// Row arrays must share one length; squareness is the caller's concern.
inline Operator matrix_from_json(const json &j) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("expected a non-empty array of rows");
    }
    const ComplexVector first = vector_from_json(j[0]);
    Operator m(static_cast<Eigen::Index>(j.size()), first.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const ComplexVector row = vector_from_json(j[i]);
        if (row.size() != m.cols()) {
            throw ParseError("matrix rows differ in length");
        }
        m.row(static_cast<Eigen::Index>(i)) = row.transpose();
    }
    return m;
}

inline json to_json(const classical::ProbMeasure &u) {
    return json(std::vector<double>(u.weights().begin(), u.weights().end()));
}

inline std::vector<double> reals_from_json(const json &j) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("expected a non-empty array of numbers");
    }
    std::vector<double> out;
    for (const auto &x : j) {
        if (!x.is_number()) {
            throw ParseError("expected a number");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

inline classical::ProbMeasure prob_measure_from_json(const json &j) {
    return classical::ProbMeasure(reals_from_json(j));
}

inline json to_json(const classical::ProductMeasure &u) {
    json out = json::array();
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        std::vector<double> row(static_cast<std::size_t>(u.cols()));
        for (Eigen::Index k = 0; k < u.cols(); ++k) {
            row[static_cast<std::size_t>(k)] = u.weights()(i, k);
        }
        out.push_back(row);
    }
    return out;
}

inline classical::ProductMeasure product_measure_from_json(const json &j) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("expected a non-empty array of rows");
    }
    const auto first = reals_from_json(j[0]);
    Eigen::MatrixXd w(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(first.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto row = reals_from_json(j[i]);
        if (row.size() != first.size()) {
            throw ParseError("measure rows differ in length");
        }
        for (std::size_t k = 0; k < row.size(); ++k) {
            w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
        }
    }
    return classical::ProductMeasure(std::move(w));
}

/// A context is the array of its basis vectors.
inline json to_json(const Context &ctx) {
    json out = json::array();
    for (Eigen::Index i = 0; i < ctx.dim(); ++i) {
        out.push_back(to_json(ctx.vector(i)));
    }
    return out;
}

inline Context context_from_json(const json &j) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("expected an array of basis vectors");
    }
    const auto n = static_cast<Eigen::Index>(j.size());
    Operator basis(n, n);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const ComplexVector v = vector_from_json(j[i]);
        if (v.size() != n) {
            throw DimensionError("context: need as many basis vectors as the dimension");
        }
        basis.col(static_cast<Eigen::Index>(i)) = v;
    }
    return Context(std::move(basis));
}

inline json to_json(const BipartiteVectorState &psi) {
    return {{"dimA", psi.dims().a}, {"dimB", psi.dims().b}, {"coeff", to_json(psi.coeff())}};
}

inline BipartiteVectorState bipartite_state_from_json(const json &j) {
    if (!j.is_object() || !j.contains("dimA") || !j.contains("dimB") || !j.contains("coeff")) {
        throw ParseError("expected {dimA, dimB, coeff}");
    }
    const Operator c = matrix_from_json(j.at("coeff"));
    if (c.rows() != j.at("dimA").get<Eigen::Index>() || c.cols() != j.at("dimB").get<Eigen::Index>()) {
        throw DimensionError("coefficient matrix does not match dimA x dimB");
    }
    return BipartiteVectorState(c);
}

inline json to_json(const Entanglement &e) {
    return {{"lambda", to_json(e.lambda())}, {"ctxA", to_json(e.ctx_a())}, {"ctxB", to_json(e.ctx_b())}};
}

inline Entanglement entanglement_from_json(const json &j) {
    if (!j.is_object() || !j.contains("lambda") || !j.contains("ctxA") || !j.contains("ctxB")) {
        throw ParseError("expected {lambda, ctxA, ctxB}");
    }
    return {prob_measure_from_json(j.at("lambda")), context_from_json(j.at("ctxA")),
            context_from_json(j.at("ctxB"))};
}

inline json to_json(const PureDecomposition &d) {
    json vectors = json::array();
    for (const auto &v : d.vectors()) {
        vectors.push_back(to_json(v));
    }
    return {{"weights", to_json(d.weights())}, {"vectors", vectors}};
}

inline PureDecomposition decomposition_from_json(const json &j) {
    if (!j.is_object() || !j.contains("weights") || !j.contains("vectors") || !j.at("vectors").is_array()) {
        throw ParseError("expected {weights, vectors}");
    }
    std::vector<ComplexVector> vectors;
    for (const auto &v : j.at("vectors")) {
        vectors.push_back(vector_from_json(v));
    }
    return {prob_measure_from_json(j.at("weights")), std::move(vectors)};
}

inline json to_json(const OptimizerOptions &o) {
    return {{"restarts", o.restarts},     {"max_iters", o.max_iters},
            {"stagnation_tol", o.stagnation_tol}, {"patience", o.patience},
            {"sep_threshold", o.sep_threshold},   {"seed", o.seed},
            {"m", o.m}};
}

/// Missing keys keep their defaults.
inline OptimizerOptions optimizer_options_from_json(const json &j, OptimizerOptions o = {}) {
    if (!j.is_object()) {
        throw ParseError("optimizer options must be a JSON object");
    }
    try {
        if (j.contains("restarts")) o.restarts = j.at("restarts").get<int>();
        if (j.contains("max_iters")) o.max_iters = j.at("max_iters").get<int>();
        if (j.contains("stagnation_tol")) o.stagnation_tol = j.at("stagnation_tol").get<double>();
        if (j.contains("patience")) o.patience = j.at("patience").get<int>();
        if (j.contains("sep_threshold")) o.sep_threshold = j.at("sep_threshold").get<double>();
        if (j.contains("seed")) o.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("m")) o.m = j.at("m").get<int>();
    } catch (const json::exception &e) {
        throw ParseError(std::string("optimizer options: ") + e.what());
    }
    return o;
}

} // namespace entangle::io
