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

// Structures assembled directly in code, independent of the preset files.

#pragma once

#include "dbracket/algebroid.hpp"
#include "dbracket/parse.hpp"

#include <string>
#include <vector>

namespace test {

using namespace dbr;

inline ChartPtr base_chart(const std::vector<std::string>& names) {
    std::vector<GradedVariable> v;
    for (const auto& n : names) v.push_back({n, 0, 0, 0});
    return Chart::make(v);
}

inline std::vector<std::string> numbered(const std::string& stem, int r) {
    std::vector<std::string> out;
    for (int k = 1; k <= r; ++k) out.push_back(stem + std::to_string(k));
    return out;
}

inline int levi_civita(int a, int b, int c) {
    if (a == b || b == c || a == c) return 0;
    int inv = (a > b) + (a > c) + (b > c);
    return (inv % 2) ? -1 : 1;
}

inline AlgebroidSpec su2(const ChartPtr& base, const std::string& stem = "xi") {
    auto s = AlgebroidSpec::zero(base, numbered(stem, 3));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) s.structure[a][b][c] = Poly(base, GaussRat(levi_civita(a, b, c)));
    return s;
}

inline AlgebroidSpec tangent(const ChartPtr& base, const std::string& stem = "xi") {
    auto s = AlgebroidSpec::zero(base, numbered(stem, base->size()));
    for (int a = 0; a < base->size(); ++a) s.anchor[a][a] = Poly(base, GaussRat(1));
    return s;
}

/// Dual structure of su(2) from the cobracket sigma(X) = -[X, e2^e3].
inline AlgebroidSpec su2_dual(const ChartPtr& base) {
    auto s = AlgebroidSpec::zero(base, numbered("th", 3));
    // sigma(e_a) as antisymmetric matrix B[i][j] with sigma = sum_{i<j} B[i][j] e_i^e_j
    for (int a = 0; a < 3; ++a) {
        int B[3][3] = {};
        auto add_wedge = [&](int i, int j, int coef) {
            B[i][j] += coef;
            B[j][i] -= coef;
        };
        for (int k = 0; k < 3; ++k) {
            add_wedge(k, 2, -levi_civita(a, 1, k));  // -[e_a,e2] ^ e3
            add_wedge(1, k, -levi_civita(a, 2, k));  // -e2 ^ [e_a,e3]
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s.structure[i][j][a] = Poly(base, GaussRat(B[i][j]));
    }
    return s;
}

/// Lie algebroid of the cotangent bundle of a Poisson structure P^{ab}:
/// anchor P^{ai}, bracket [dx^a, dx^b] = d P^{ab}.
inline AlgebroidSpec cotangent_poisson(const ChartPtr& base, const std::vector<std::vector<Poly>>& P,
                                       const std::string& stem = "th") {
    int n = base->size();
    auto s = AlgebroidSpec::zero(base, numbered(stem, n));
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < n; ++i) s.anchor[a][i] = P[a][i];
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) s.structure[a][b][c] = P[a][b].partial(c);
    return s;
}

inline ProtoSpec pair(AlgebroidSpec a, AlgebroidSpec astar) {
    ProtoSpec p;
    p.a = std::move(a);
    p.astar = std::move(astar);
    return p;
}

inline ProtoSpec su2_bialgebra() {
    auto pt = base_chart({});
    return pair(su2(pt), su2_dual(pt));
}

inline ProtoSpec poisson_r2() {
    auto b = base_chart({"x1", "x2"});
    Poly x1 = parse_poly("x1", b), z(b);
    std::vector<std::vector<Poly>> P = {{z, x1}, {-x1, z}};
    return pair(tangent(b), cotangent_poisson(b, P));
}

inline ProtoSpec weil_su2() {
    auto b = base_chart({"u1", "u2", "u3"});
    std::vector<std::vector<Poly>> P(3, std::vector<Poly>(3, Poly(b)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (levi_civita(k, i, j)) P[i][j] += parse_poly("u" + std::to_string(k + 1), b) * GaussRat(levi_civita(k, i, j));
    return pair(tangent(b), cotangent_poisson(b, P));
}

inline ProtoSpec standard(int n) {
    auto b = base_chart(numbered("x", n));
    return pair(tangent(b), AlgebroidSpec::zero(b, numbered("th", n)));
}

inline AlgebroidSpec so2_action() {
    auto b = base_chart({"x", "y"});
    auto s = AlgebroidSpec::zero(b, {"xi1"});
    s.anchor[0][0] = parse_poly("-y", b);
    s.anchor[0][1] = parse_poly("x", b);
    return s;
}

}  // namespace test
