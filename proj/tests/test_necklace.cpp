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

#include "doctest.h"

#include "dbracket/necklace.hpp"
#include "dbracket/parse.hpp"
#include "test_util.hpp"

#include <cmath>
#include <numbers>

using namespace dbr;

namespace {

// Action-angle chart with pi = I d_I ^ d_theta as an odd function.
DarbouxChart action_angle() {
    auto ch = Chart::make({{"I", 0, 0, 0}, {"th", 0, 0, 0}, {"xi", 1, 0, 0}, {"eta", 1, 0, 0}});
    return DarbouxChart(ch, {{0, 2}, {1, 3}}, 1);
}

Poly I_pow(const DarbouxChart& dc, int m) { return Poly::variable(dc.chart(), 0).pow(m); }

Poly drop_above(const Poly& p, int N) {
    Poly out(p.chart());
    for (const auto& [m, c] : p.terms())
        if (m[0] <= N) out.add_term(m, c);
    return out;
}

// d (g e^{i n th}) with the th-derivative replaced by i n, using the
// reference bracket.
Poly oracle_d(const DarbouxChart& dc, const Poly& g, int n, int N) {
    Poly pi = parse_poly("I*xi*eta", dc.chart());
    Poly th = Poly::variable(dc.chart(), 1);
    Poly plain = test::naive_bracket(pi, g, dc);
    Poly dth = test::naive_bracket(pi, g * th, dc) - plain * th;
    return drop_above(plain + dth * GaussRat(Rational(0), Rational(n)), N);
}

Poly basis_elem(const DarbouxChart& dc, int degree, int k) {
    if (degree == 0) return I_pow(dc, k);
    if (degree == 1) return I_pow(dc, k / 2) * Poly::variable(dc.chart(), k % 2 ? 3 : 2);
    return I_pow(dc, k) * parse_poly("xi*eta", dc.chart());
}

Poly column_poly(const DarbouxChart& dc, const Matrix& m, int j, int degree) {
    Poly out(dc.chart());
    for (int i = 0; i < m.rows(); ++i) out += basis_elem(dc, degree, i) * m(i, j);
    return out;
}

double quadrature_volume(double c) {
    const int n = 20000;
    auto f = [&](double t) {
        if (t >= 1) return 4 * std::numbers::pi / (c + 1);
        double u = t / (1 - t);
        return 4 * std::numbers::pi / ((1 + u) * ((c + 1) * u + c - 1)) / ((1 - t) * (1 - t));
    };
    double h = 1.0 / n, s = f(0) + f(1);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4 : 2) * f(k * h);
    return s * h / 3;
}

}  // namespace

TEST_CASE("mode matrices match the bracket with pi") {
    auto dc = action_angle();
    for (int n : {0, 1, -2, 3}) {
        const int N = 6;
        auto mc = mode_matrices(0, n, N);
        for (int m = 0; m <= N; ++m) {
            CHECK(column_poly(dc, mc.d0, m, 1) == oracle_d(dc, basis_elem(dc, 0, m), n, N));
        }
        for (int k = 0; k < 2 * (N + 1); ++k) {
            CHECK(column_poly(dc, mc.d1, k, 2) == oracle_d(dc, basis_elem(dc, 1, k), n, N));
        }
        CHECK((mc.d1 * mc.d0).is_zero());
    }
    auto m0 = mode_matrices(0, 0, 8);
    CHECK(column_poly(dc, m0.d0, 2, 1) == parse_poly("-2*I^2*eta", dc.chart()));
    auto m1 = mode_matrices(0, 1, 8);
    CHECK(column_poly(dc, m1.d0, 0, 1) == parse_poly("i*I*xi", dc.chart()));
    CHECK_THROWS_AS(mode_matrices(0, 0, 2), std::invalid_argument);
}

TEST_CASE("mode cohomology") {
    for (const Rational& c : {Rational(0), Rational(1, 2), Rational(3)}) {
        auto r = mode_cohomology(c, 0, 12);
        CHECK(r.dims == std::array<int, 3>{1, 2, 1});
        CHECK(r.report.all_pass());
        CHECK(r.generators[0] == std::vector<std::string>{"1"});
        CHECK(r.generators[1] == std::vector<std::string>{"d_theta", "I d_I"});
        CHECK(r.generators[2] == std::vector<std::string>{"I d_I^d_theta"});
    }
    for (int n : {1, -1, 3, 7}) {
        auto r = mode_cohomology(0, n, 12);
        CHECK(r.dims == std::array<int, 3>{0, 0, 0});
        CHECK(r.report.all_pass());
    }
    CHECK(mode_cohomology(0, 0, 4).dims == std::array<int, 3>{1, 2, 1});
}

TEST_CASE("mode element printing") {
    Vec v(4);
    v[0] = GaussRat(1);
    v[2] = GaussRat(-2);
    CHECK(mode_element(0, 0, v) == "1 - 2 I^2");
    CHECK(mode_element(2, 0, v) == "(1 - 2 I^2) e^(2 i theta)");
    Vec w(4);
    w[3] = GaussRat(Rational(0), Rational(1));
    CHECK(mode_element(0, 1, w) == "i I d_theta");
    CHECK(mode_element(0, 2, Vec(3)) == "0");
}

TEST_CASE("global assembly") {
    auto local = mode_cohomology(0, 0, 12);
    auto g = global_assembly(0, local);
    CHECK(g.dims == std::array<int, 3>{1, 1, 2});
    CHECK(g.provenance == "computed");
    bool has_recorded = false;
    for (const auto& [name, prov] : g.inputs) has_recorded = has_recorded || prov == "recorded-constant";
    CHECK(has_recorded);
    CHECK(global_assembly(Rational(1, 2), mode_cohomology(Rational(1, 2), 0, 12)).dims == std::array<int, 3>{1, 1, 2});
    auto s = global_assembly(3, local);
    CHECK(s.dims == std::array<int, 3>{1, 0, 1});
    CHECK(s.provenance == "recorded-constant");
    CHECK(global_assembly(-5, local).dims == std::array<int, 3>{1, 0, 1});
    CHECK_THROWS_AS(global_assembly(1, local), std::invalid_argument);
    CHECK_THROWS_AS(global_assembly(-1, local), std::invalid_argument);
    MayerVietorisData bad;
    bad.ranks = {3, 1, 0};
    CHECK_THROWS_AS(global_assembly(0, local, bad), std::runtime_error);
    MayerVietorisData bad2;
    bad2.uv = {2, 2, 1};
    CHECK_THROWS_AS(global_assembly(0, local, bad2), std::runtime_error);
}

TEST_CASE("modular field and volume") {
    for (const Rational& c : {Rational(0), Rational(3), Rational(-3), Rational(5, 2)}) {
        auto mv = modular_and_volume(c);
        CHECK(mv.report.all_pass());
        CHECK(mv.delta_xy.str() == modular_and_volume(0).delta_xy.str());
    }
    CHECK(modular_and_volume(0).volume_expr.empty());
    for (double c : {3.0, 1.5, 11.0, -3.0, -1.25}) {
        auto mv = modular_and_volume(Rational(static_cast<long>(c * 4), 4));
        CHECK(mv.volume == doctest::Approx(quadrature_volume(c)).epsilon(1e-9));
    }
    CHECK(modular_and_volume(3).volume_expr == "2*pi*ln(2)");
    CHECK(modular_and_volume(-3).volume < 0);
}

TEST_CASE("structure identities") {
    for (const Rational& c : {Rational(0), Rational(1, 2), Rational(-2), Rational(3)}) {
        auto r = structure_identities(c);
        for (const auto& ch : r.checks) CHECK_MESSAGE(ch.status != Status::fail, ch.name << ": " << ch.residual);
    }
    CHECK_THROWS_AS(structure_identities(1), std::invalid_argument);
}

TEST_CASE("necklace structures") {
    auto nk = build_necklace(0);
    CHECK(nk.pi_c == parse_poly("1/2*(s^2 + t^2 - 1/2)*sigma*tau", nk.chart.chart()));
    CHECK(schouten_square(nk.pi_c, nk.chart).is_zero());
    CHECK_THROWS_AS(schouten_square(parse_poly("s*sigma", nk.chart.chart()), nk.chart), std::invalid_argument);
    auto su = build_su2_structures();
    CHECK(schouten_square(su.pi_su2, su.c2).is_zero());
    // reference bracket agrees on the Schouten square
    CHECK(test::naive_bracket(su.pi1, su.pi1, su.wchart).is_zero());
    Poly odd = parse_poly("s*t*sigma*tau + s^2*sigma*tau", nk.chart.chart());
    CHECK(schouten_square(odd, nk.chart) == test::naive_bracket(odd, odd, nk.chart));
}
