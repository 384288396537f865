/*
 * Copyright 2026 dbracket contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "dbracket/check.hpp"
#include "dbracket/linalg.hpp"
#include "dbracket/symplectic.hpp"

#include <array>
#include <string>
#include <vector>

namespace dbr {

/// pi_c = 1/2 (s^2 + t^2 - (1-c)/2) d_s^d_t and pi = 1/4 d_s^d_t on the odd
/// chart (s, t, sigma, tau), sigma and tau standing for d_s and d_t.
struct NecklaceStructure {
    Rational c;
    DarbouxChart chart;
    Poly pi_c, pi;
};

NecklaceStructure build_necklace(const Rational& c);

/// The Poisson structure on C^2 (coordinates u, ub, v, vb with momenta
/// th_u, ...) and the Bruhat structure pi_1 in the chart (w, wb).
struct SU2Structures {
    DarbouxChart c2;
    Poly pi_su2;
    DarbouxChart wchart;
    Poly pi1;
};

SU2Structures build_su2_structures();

/// [pi, pi] for an even bivector; throws std::invalid_argument otherwise.
Poly schouten_square(const Poly& pi, const DarbouxChart& dc);

/// Matrices of d on the n-th Fourier mode, truncated modulo I^(N+1).
/// Bases: X0 = I^m (m = 0..N); X1 = I^m xi, I^m eta interleaved (index 2m,
/// 2m+1); X2 = I^m xi eta. xi stands for d_I, eta for d_theta.
struct ModeComplex {
    int n = 0;
    int N = 0;
    Matrix d0, d1;
};

ModeComplex mode_matrices(const Rational& c, int n, int N);

struct CohomologyReport {
    std::array<int, 3> dims{};
    std::array<std::vector<std::string>, 3> generators;
    std::string provenance;  // "computed" or "recorded-constant"
    std::vector<std::pair<std::string, std::string>> inputs;  // name -> provenance
    Report report;
};

/// Exact cohomology of one mode at truncation N, compared with N + 2.
CohomologyReport mode_cohomology(const Rational& c, int n, int N);

/// Recorded Mayer-Vietoris inputs for the cover by the annulus U and the two
/// open hemispheres V.
struct MayerVietorisData {
    std::array<int, 3> v{2, 0, 0};
    std::array<int, 3> uv{2, 2, 0};
    std::array<int, 3> ranks{2, 1, 0};  // of H^k(U) + H^k(V) -> H^k(U cap V)
};

/// Global dims from the local mode-0 report (|c| < 1) or the de Rham
/// cohomology of S^2 (|c| > 1). Throws std::invalid_argument for c = +-1 and
/// std::runtime_error when the exactness arithmetic fails.
CohomologyReport global_assembly(const Rational& c, const CohomologyReport& local,
                                 const MayerVietorisData& mv = {});

struct ModularVolume {
    /// Components in the (x, y) chart and in the (s, t) chart.
    VectorField delta_xy, delta_st;
    DarbouxChart xy;
    Poly pi_c_xy;
    std::string volume_expr;  // empty for |c| <= 1
    double volume = 0;
    Report report;
};

ModularVolume modular_and_volume(const Rational& c);

/// [pi_c, E] = pi, differences of pi_c, the rescaling of the disk, the
/// classes of pi_c and of the rotation in the mode-0 complex, and the C^2
/// bracket table. Throws std::invalid_argument for c = 1.
Report structure_identities(const Rational& c, int N = 12);

/// Printable multivector for a combination of mode basis vectors.
std::string mode_element(int n, int degree, const Vec& v);

}  // namespace dbr
