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

#include "dbracket/spec_document.hpp"
#include "test_specs.hpp"

using namespace dbr;

namespace {

// Entry-by-entry comparison through the printed normal forms, since the
// two sides live on different chart objects.
void same_algebroid(const AlgebroidSpec& a, const AlgebroidSpec& b) {
    REQUIRE(a.rank() == b.rank());
    REQUIRE(a.dim() == b.dim());
    for (int i = 0; i < a.dim(); ++i) CHECK(a.base->var(i).name == b.base->var(i).name);
    for (int k = 0; k < a.rank(); ++k) {
        CHECK(a.fiber[k] == b.fiber[k]);
        for (int i = 0; i < a.dim(); ++i) CHECK(a.anchor[k][i].str() == b.anchor[k][i].str());
        for (int l = 0; l < a.rank(); ++l)
            for (int c = 0; c < a.rank(); ++c) CHECK(a.structure[k][l][c].str() == b.structure[k][l][c].str());
    }
}

int error_column(const std::string& text) {
    try {
        parse_spec(text);
    } catch (const SpecError& e) {
        return e.column();
    }
    return -1;
}

int error_line(const std::string& text) {
    try {
        parse_spec(text);
    } catch (const SpecError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("presets agree with the structures built in code") {
    auto pt = test::base_chart({});
    same_algebroid(load_preset("su2").algebroid(), test::su2(pt));
    auto sb = test::su2_bialgebra();
    same_algebroid(load_preset("su2-bialgebra").algebroid(), sb.a);
    same_algebroid(load_preset("su2-bialgebra").dual_algebroid(), sb.astar);
    for (int n = 1; n <= 3; ++n) {
        auto b = test::base_chart(test::numbered("x", n));
        same_algebroid(load_preset("tangent-R" + std::to_string(n)).algebroid(), test::tangent(b));
        auto st = test::standard(n);
        same_algebroid(load_preset("standard-R" + std::to_string(n)).algebroid(), st.a);
        same_algebroid(load_preset("standard-R" + std::to_string(n)).dual_algebroid(), st.astar);
    }
    auto pr = test::poisson_r2();
    same_algebroid(load_preset("poisson-R2").algebroid(), pr.a);
    same_algebroid(load_preset("poisson-R2").dual_algebroid(), pr.astar);
    auto w = test::weil_su2();
    same_algebroid(load_preset("weil-su2").algebroid(), w.a);
    same_algebroid(load_preset("weil-su2").dual_algebroid(), w.astar);
    same_algebroid(load_preset("brst-so2-on-R2").algebroid(), test::so2_action());
    auto tw = load_preset("exact-twist-R3");
    CHECK(tw.kind == SpecKind::exact_courant);
    CHECK(tw.phi->str() == "x2*xi1*xi2*xi3");
    CHECK(tw.omega->str() == "x1*xi2*xi3");
    same_algebroid(tw.algebroid(), test::standard(3).a);
    CHECK(load_preset("necklace").c == Rational(0));
}

TEST_CASE("every preset round-trips") {
    auto names = preset_names();
    CHECK(names.size() >= 13);
    for (const auto& name : names) {
        CAPTURE(name);
        auto doc = load_preset(name);
        CHECK(doc.preset == name);
        std::string text = print_spec(doc);
        auto again = parse_spec(text);
        CHECK(print_spec(again) == text);
        CHECK(again.echo.empty());
    }
    CHECK_THROWS_AS(load_preset("no-such-preset"), std::invalid_argument);
}

TEST_CASE("antisymmetric completion") {
    auto doc = parse_spec("kind: algebroid\nbase:\nfiber: e1 e2 e3\nC[1][2][3] = 1\n");
    REQUIRE(doc.echo.size() == 1);
    CHECK(doc.echo[0] == "completed C[2][1][3] = -1 by antisymmetry");
    CHECK(doc.algebroid().structure[1][0][2].str() == "-1");
    auto both = parse_spec("kind: algebroid\nbase:\nfiber: e1 e2 e3\nC[1][2][3] = 1\nC[2][1][3] = -1\n");
    CHECK(both.echo.empty());
    CHECK(error_line("kind: algebroid\nbase:\nfiber: e1 e2\nC[1][2][1] = 1\nC[2][1][1] = 2\n") == 5);
    CHECK_THROWS_AS(parse_spec("kind: algebroid\nbase:\nfiber: e1 e2\nC[1][1][2] = 1\n"), SpecError);
}

TEST_CASE("positioned diagnostics") {
    std::string head = "kind: algebroid\nbase: x\nfiber: xi\n";
    CHECK(error_column(head + "A[1][1] = x^\n") == 13);
    CHECK(error_line(head + "A[1][1] = x^\n") == 4);
    CHECK(error_column(head + "A[1][1] = y\n") == 11);
    CHECK(error_column(head + "A[1][1] = x x\n") > 0);
    CHECK(error_line(head + "\n# comment\nA[2][1] = 1\n") == 6);
    CHECK_THROWS_AS(parse_spec("base: x\nfiber: xi\n"), SpecError);
    CHECK_THROWS_AS(parse_spec("kind: banana\n"), SpecError);
    CHECK_THROWS_AS(parse_spec(head + "A[1][1] = 1\nA[1][1] = 2\n"), SpecError);
    CHECK_THROWS_AS(parse_spec(head + "phi = 1\n"), SpecError);
    CHECK_THROWS_AS(parse_spec(head + "Q = 1\n"), SpecError);
    CHECK_THROWS_AS(parse_spec(head + "A[1] = 1\n"), SpecError);
    CHECK_THROWS_AS(parse_spec(head + "nonsense\n"), SpecError);
    CHECK_THROWS_AS(parse_spec("kind: algebroid\nbase: x\nfiber: x\n"), SpecError);
    CHECK_THROWS_AS(parse_spec("kind: algebroid\nbase: x\nfiber: xi\nA[1][1] = xi\n"), SpecError);
    CHECK_THROWS_AS(parse_spec("kind: necklace\n"), SpecError);
    CHECK_THROWS_AS(parse_spec("kind: necklace\nc = 1/0\n"), SpecError);
    CHECK_THROWS_AS(parse_spec("kind: bialgebroid\nbase: x\nfiber: xi\n"), SpecError);
    CHECK_THROWS_AS(parse_spec("kind: exact-courant\nbase: x\nfiber: a\n"), SpecError);
    try {
        parse_spec(head + "A[1][1] = x^\n");
    } catch (const SpecError& e) {
        CHECK(std::string(e.what()) == "line 4, column 13: expected integer exponent");
    }
}

TEST_CASE("round trip keeps complex coefficients and phi") {
    std::string text =
        "kind: proto\nbase: x\nfiber: a1 a2 a3\ndual: b1 b2 b3\n"
        "A[1][1] = (1/2 + 3*i)*x^2 - i*x\nphi = 2*x*a1*a2*a3\npsi = -1/3*b1*b2*b3\n";
    auto doc = parse_spec(text);
    auto printed = print_spec(doc);
    CHECK(print_spec(parse_spec(printed)) == printed);
    CHECK(doc.phi->str() == "2*x*a1*a2*a3");
    CHECK(doc.proto().psi.str() == "-1/3*b1*b2*b3");
    auto dflt = parse_spec("kind: algebroid\nbase: th1\nfiber: xi1\n");
    CHECK(dflt.dual == std::vector<std::string>{"th_1"});
}
