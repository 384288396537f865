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

#include "dbracket/graded.hpp"
#include "dbracket/parse.hpp"
#include "test_util.hpp"

using namespace dbr;

namespace {

ChartPtr small_chart() {
    return Chart::make({{"x", 0, 0, 0}, {"y", 0, 1, 1}, {"xi1", 1, 0, 1}, {"xi2", 1, 0, 1}, {"xi3", 1, 1, 0}});
}

}  // namespace

TEST_CASE("odd anticommutation and squares") {
    auto c = small_chart();
    Poly x1 = Poly::variable(c, "xi1"), x2 = Poly::variable(c, "xi2");
    CHECK((x1 * x2).str() == "xi1*xi2");
    CHECK((x2 * x1).str() == "-xi1*xi2");
    CHECK((x1 * x1).is_zero());
    CHECK((x2 * x1) == -(x1 * x2));
}

TEST_CASE("cross terms cancel") {
    auto c = small_chart();
    Poly a = parse_poly("x + xi1*xi2", c), b = parse_poly("x - xi1*xi2", c);
    CHECK((a * b).str() == "x^2");
}

TEST_CASE("left derivatives") {
    auto c = small_chart();
    Poly p = parse_poly("xi1*xi2", c);
    CHECK(p.partial("xi1").str() == "xi2");
    CHECK(p.partial("xi2").str() == "-xi1");
    CHECK(parse_poly("x^2*xi1", c).partial("x").str() == "2*x*xi1");
}

TEST_CASE("gradings") {
    auto c = small_chart();
    CHECK(Poly(c, GaussRat(1)).gradings() == std::set<Grading>{{0, 0}});
    auto g = parse_poly("y*xi1", c).gradings();
    REQUIRE(g.size() == 1);
    CHECK(g.begin()->eps == 1);
    CHECK(g.begin()->delta == 2);
    CHECK(g.begin()->kappa() == 3);
}

TEST_CASE("parse and print") {
    auto c = small_chart();
    CHECK(parse_poly("x^2*xi1 - 1/2*xi1*xi2", c).str() == "-1/2*xi1*xi2 + x^2*xi1");
    CHECK(parse_poly("xi1*xi1", c).str() == "0");
    CHECK(parse_poly("xi2*xi1", c).str() == "-xi1*xi2");
    CHECK(parse_poly("(1+2*i)*x - i*y + 3/4 - i", c).str() == "3/4 - i + (1 + 2*i)*x - i*y");
    CHECK(parse_poly("x/2", c).str() == "1/2*x");
    for (const char* bad : {"xi^", "x +", "2*q", "x/y", "(x", "x^a"}) CHECK_THROWS_AS(parse_poly(bad, c), ParseError);
    try {
        parse_poly("xi1^", c);
    } catch (const ParseError& e) {
        CHECK(e.column() == 5);
    }
}

TEST_CASE("chart mismatch is an error") {
    auto a = small_chart(), b = small_chart();
    CHECK_THROWS_AS((void)(Poly(a, GaussRat(1)) == Poly(b, GaussRat(1))), ChartError);
    CHECK_THROWS_AS(Poly(a) * Poly(b), ChartError);
    CHECK_THROWS_AS(parse_poly("x", a).partial("nope"), ChartError);
}

TEST_CASE("random algebra laws") {
    auto c = small_chart();
    test::Rng rng(7);
    for (int trial = 0; trial < 150; ++trial) {
        Poly p = test::random_homogeneous(rng, c, 3), q = test::random_homogeneous(rng, c, 3),
             r = test::random_homogeneous(rng, c, 3);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        int sp = p.parity().value_or(0), sq = q.parity().value_or(0);
        CHECK(p * q == ((sp * sq) ? -(q * p) : q * p));
        CHECK(parse_poly(p.str(), c) == p);
        // oracle: schoolbook product in the free algebra followed by sorting
        CHECK(test::naive_product(p, q) == p * q);
        for (int u = 0; u < c->size(); ++u)
            for (int v = 0; v < c->size(); ++v) {
                int s = c->var(u).parity * c->var(v).parity;
                Poly uv = p.partial(v).partial(u), vu = p.partial(u).partial(v);
                CHECK(uv == (s ? -vu : vu));
            }
        for (int u = 0; u < c->size(); ++u) {
            int s = c->var(u).parity * sp;
            Poly lhs = (p * q).partial(u);
            Poly rhs = p.partial(u) * q + (s ? -(p * q.partial(u)) : p * q.partial(u));
            CHECK(lhs == rhs);
        }
        if (!p.is_zero() && !q.is_zero() && !(p * q).is_zero() && p.gradings().size() == 1 &&
            q.gradings().size() == 1) {
            Grading gp = *p.gradings().begin(), gq = *q.gradings().begin();
            for (auto g : (p * q).gradings()) {
                CHECK(g.eps == gp.eps + gq.eps);
                CHECK(g.delta == gp.delta + gq.delta);
            }
        }
    }
}
