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

#include <complex>

#include <Eigen/Dense>

#include <entangle/operators.hpp>

namespace entangle::testing {

/// max_ij |a_ij - b_ij|
inline double max_abs_diff(const Operator &a, const Operator &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

/// |<x, y>| = ||x|| ||y|| within tol, i.e. equal up to a global phase.
inline bool same_ray(const ComplexVector &x, const ComplexVector &y, double tol) {
    return std::abs(std::abs(x.dot(y)) - x.norm() * y.norm()) <= tol;
}

/// || A v - value v || for an alleged eigenpair.
inline double eigen_residual(const Operator &a, const ComplexVector &v, cplx value) {
    return (a * v - value * v).norm();
}

} // namespace entangle::testing
