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

// One line per acceptance criterion. Exit status is nonzero when a
// criterion fails that is not listed as known-unattainable; --strict makes
// every failure count.

#include "dbracket/algebroid.hpp"
#include "dbracket/commands.hpp"
#include "dbracket/courant.hpp"
#include "dbracket/necklace.hpp"
#include "dbracket/shla.hpp"
#include "dbracket/spec_document.hpp"
#include "test_util.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <set>
#include <string>

using namespace dbr;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        } else if (!cond) {
            detail += "; " + what;
        }
    }
};

const Check* find(const Report& r, const std::string& prefix) {
    for (const auto& c : r.checks)
        if (c.name.rfind(prefix, 0) == 0) return &c;
    return nullptr;
}

bool passes(const Report& r, const std::string& prefix) {
    const Check* c = find(r, prefix);
    return c && c->status == Status::pass;
}

DoubleModel model(const std::string& preset) { return DoubleModel(load_preset(preset).proto()); }

Outcome kernel_laws() {
    Outcome o;
    test::Rng rng(2026);
    auto even = Chart::make({{"x", 0, 0, 0}, {"xi1", 1, 0, 1}, {"xi2", 1, 0, 1},
                             {"p_x", 0, 1, 1}, {"p_xi1", 1, 1, 0}, {"p_xi2", 1, 1, 0}});
    auto odd = Chart::make({{"x1", 0, 0, 0}, {"x2", 0, 0, 0}, {"th1", 1, 1, 0}, {"th2", 1, 1, 0}});
    const DarbouxChart charts[2] = {DarbouxChart(even, {{0, 3}, {1, 4}, {2, 5}}, 0),
                                    DarbouxChart(odd, {{0, 2}, {1, 3}}, 1)};
    int triples = 0;
    for (const auto& dc : charts) {
        const int e = dc.bracket_parity();
        auto sgn = [](int k) { return GaussRat(k % 2 ? -1 : 1); };
        for (int t = 0; t < 120; ++t) {
            Poly a = test::random_homogeneous(rng, dc.chart(), 3);
            Poly b = test::random_homogeneous(rng, dc.chart(), 3);
            Poly c = test::random_homogeneous(rng, dc.chart(), 3);
            int pa = *a.parity(), pb = *b.parity();
            auto br = [&](const Poly& u, const Poly& v) { return canonical_bracket(u, v, dc); };
            ++triples;
            o.require((a * b) * c == a * (b * c), "associativity");
            o.require(a * b == b * a * sgn(pa * pb), "supercommutativity");
            o.require(br(a, b) == -br(b, a) * sgn((pa + e) * (pb + e)), "bracket symmetry");
            o.require(br(a, b * c) == br(a, b) * c + b * br(a, c) * sgn((pa + e) * pb), "graded Leibniz");
            o.require(br(a, br(b, c)) == br(br(a, b), c) + br(b, br(a, c)) * sgn((pa + e) * (pb + e)),
                      "graded Jacobi");
        }
    }
    if (o.ok) o.detail = std::to_string(triples) + " triples, both bracket parities";
    return o;
}

Outcome algebroid_gate() {
    Outcome o;
    std::vector<std::string> good;
    for (const char* name : {"su2", "tangent-R2", "brst-so2-on-R2"}) {
        bool before = o.ok;
        auto doc = load_preset(name);
        o.require(check_lie_algebroid(doc.algebroid()).all_pass(), std::string(name) + " does not pass");
        try {
            auto bad = perturb_structure(doc);
            auto rep = check_lie_algebroid(bad.algebroid());
            bool printed = !rep.all_pass() && !rep.checks[0].residual.empty();
            o.require(printed, std::string(name) + " perturbed still passes");
        } catch (const UsageError& e) {
            o.require(false, std::string(name) + ": " + e.what());
        }
        if (o.ok == before && o.detail.empty()) good.push_back(name);
    }
    if (o.ok) o.detail = "3 presets pass, perturbed copies fail with residuals";
    else if (!good.empty()) {
        std::string g;
        for (const auto& n : good) g += (g.empty() ? "" : ", ") + n;
        o.detail += " (" + g + ": pass, perturbed fail)";
    }
    return o;
}

Outcome bialgebroid_gate() {
    Outcome o;
    for (const char* name : {"su2-bialgebra", "poisson-R2"}) {
        auto spec = load_preset(name).proto();
        o.require(check_bialgebroid(DoubleModel(spec)).all_pass(), std::string(name) + " fails");
        std::swap(spec.a, spec.astar);
        o.require(check_bialgebroid(DoubleModel(spec)).all_pass(), std::string(name) + " dual fails");
    }
    if (o.ok) o.detail = "su2-bialgebra, poisson-R2 and their duals";
    return o;
}

Outcome doubling() {
    Outcome o;
    int tuples = 0;
    for (const char* name : {"su2-bialgebra", "poisson-R2"}) {
        CourantStructure s{model(name)};
        auto rep = verify_axioms(s, s.generator_family());
        o.require(rep.checks.size() == 5 && rep.all_pass(), std::string(name) + " axioms fail");
        for (const auto& c : rep.checks) tuples += std::atoi(c.detail.c_str());
    }
    if (o.ok) o.detail = "five axioms, " + std::to_string(tuples) + " tuples";
    return o;
}

Outcome derived_fidelity() {
    Outcome o;
    CourantStructure s{model("standard-R2")};
    auto fam = s.generator_family();
    auto rep = check_standard_formula(s, fam);
    o.require(rep.all_pass(), rep.checks[0].residual);
    int basis = 0, scaled = 0;
    for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = 0; j < fam.size(); ++j) (i < 4 && j < 4 ? basis : scaled)++;
    if (o.ok) o.detail = std::to_string(basis) + " basis pairs, " + std::to_string(scaled) + " coordinate-scaled pairs";
    return o;
}

Outcome equivalence() {
    Outcome o;
    for (const char* name : {"su2-bialgebra", "poisson-R2", "standard-R2"}) {
        CourantStructure s{model(name)};
        auto fam = s.generator_family();
        auto skew = verify_skew_definition(s, fam);
        auto lem = verify_lemmas(s, fam);
        o.require(passes(skew, "(1) J(e1,e2,e3) = D T"), std::string(name) + ": J - DT");
        o.require(passes(skew, "e1 o e2 = [e1,e2] + 1/2 D"), std::string(name) + ": skew definition");
        o.require(passes(lem, "T(e1,e2,D f)"), std::string(name) + ": T(e1,e2,D f) identity");
        o.require(passes(lem, "K + 2J = 0"), std::string(name) + ": K + 2J");
    }
    if (o.ok) o.detail = "su2-bialgebra, poisson-R2, standard-R2";
    return o;
}

Outcome shla() {
    Outcome o;
    for (const char* name : {"standard-R1", "su2-bialgebra"}) {
        CourantStructure s{model(name)};
        auto rep = shla_check(s, 4, shla_generators(s));
        o.require(rep.all_pass(), std::string(name) + " fails");
        for (const char* sub : {"n = 1", "n = 2", "n = 3", "n = 4", "(l2 l2 + l3 l1)", "(l3 l2 - l2 l3)"})
            o.require(passes(rep, sub), std::string(name) + ": " + sub);
    }
    if (o.ok) o.detail = "n = 1..4 with both named sub-checks";
    return o;
}

Outcome twists() {
    Outcome o;
    auto closed = load_preset("exact-twist-R3");
    auto t = twist_exact(closed.charts.base, closed.phi_or_zero(), closed.omega);
    o.require(t.report.all_pass(), "closed twist fails");
    for (const char* c : {"phi' - phi exact", "splitting map: F(e1 o e2)", "splitting map preserves", "splitting map: F(D f)"})
        o.require(passes(t.report, c), std::string("gauge: ") + c);
    auto open = load_preset("exact-twist-R4-open");
    auto u = twist_exact(open.charts.base, open.phi_or_zero(), std::nullopt);
    std::vector<std::string> failed;
    for (const auto& c : u.report.checks)
        if (c.name.size() > 3 && c.name[0] == '(' && c.name[2] == ')' && c.status == Status::fail)
            failed.push_back(c.name.substr(0, 3));
    o.require(failed == std::vector<std::string>{"(1)"}, "non-closed: failing axioms differ from (1)");
    o.require(passes(u.report, "axiom 1 defect"), "defect does not match d phi");
    o.require(passes(u.report, "defect nonzero"), "defect vanishes on coordinates");
    if (o.ok) o.detail = "closed passes, open fails only axiom 1 with the d phi defect, gauge holds";
    return o;
}

Outcome weil_brst() {
    Outcome o;
    auto w = model("weil-su2");
    o.require(check_double_square(w).all_pass(), "weil-su2 D^2");
    o.require(check_weil_restriction(w).all_pass(), "weil restriction");
    auto b = model("brst-so2-on-R2");
    o.require(check_double_square(b).all_pass(), "brst D^2");
    o.require(check_brst(b).all_pass(), "brst identities");
    if (o.ok) o.detail = "D^2 = 0 on all generators, Weil restriction and BRST identities";
    return o;
}

std::string mode_text(const CohomologyReport& r) {
    std::string s;
    for (const auto& c : r.report.checks) s += c.name + "|" + status_name(c.status) + "|" + c.detail + "\n";
    for (const auto& g : r.generators)
        for (const auto& x : g) s += x + "\n";
    return s + std::to_string(r.dims[0]) + std::to_string(r.dims[1]) + std::to_string(r.dims[2]);
}

Outcome local_cohomology() {
    Outcome o;
    auto m0 = mode_cohomology(0, 0, 12);
    o.require(m0.dims == std::array<int, 3>{1, 2, 1}, "mode 0 dims");
    o.require(m0.generators[1] == std::vector<std::string>{"d_theta", "I d_I"}, "H^1 generators");
    o.require(m0.report.all_pass(), "mode 0 stability");
    for (int n = 1; n <= 5; ++n) {
        auto r = mode_cohomology(0, n, 12);
        o.require(r.dims == std::array<int, 3>{0, 0, 0} && r.report.all_pass(), "mode " + std::to_string(n));
    }
    for (const Rational& c : {Rational(1, 2), Rational(-1, 2)})
        o.require(mode_text(mode_cohomology(c, 0, 12)) == mode_text(m0), "mode 0 report depends on c");
    if (o.ok) o.detail = "(1,2,1) spanned by 1; d_theta, I d_I; I d_I^d_theta; modes 1..5 acyclic";
    return o;
}

Outcome global_cohomology() {
    Outcome o;
    auto g0 = global_assembly(0, mode_cohomology(0, 0, 12));
    o.require(g0.dims == std::array<int, 3>{1, 1, 2}, "c = 0 dims");
    std::set<std::string> provs;
    for (const auto& [name, p] : g0.inputs) provs.insert(p);
    o.require(provs == std::set<std::string>{"computed", "recorded-constant"}, "provenance split");
    auto g2 = global_assembly(2, mode_cohomology(2, 0, 12));
    o.require(g2.dims == std::array<int, 3>{1, 0, 1}, "c = 2 dims");
    o.require(g2.provenance == "recorded-constant", "c = 2 provenance");
    if (o.ok) o.detail = "(1,1,2) at c = 0, (1,0,1) at c = 2, inputs marked computed / recorded-constant";
    return o;
}

Outcome identities() {
    Outcome o;
    for (const Rational& c : {Rational(0), Rational(1, 2)}) {
        auto r = structure_identities(c, 12);
        for (const char* n : {"[pi_c, E] = pi", "pi_c - pi_c'", "pi_c not in im d", "Delta_omega not in im d"})
            o.require(passes(r, n), std::string(n) + " at c = " + to_string(c));
        o.require(r.all_pass(), "some identity fails at c = " + to_string(c));
    }
    if (o.ok) o.detail = "c = 0 and c = 1/2";
    return o;
}

Outcome volume() {
    Outcome o;
    auto mv = modular_and_volume(3);
    double expect = 2 * std::numbers::pi * std::log(2.0);
    char buf[64];
    std::snprintf(buf, sizeof buf, "|V(3) - 2 pi ln 2| = %.3g", std::abs(mv.volume - expect));
    o.require(std::abs(mv.volume - expect) < 1e-12, buf);
    if (o.ok) o.detail = buf;
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds, 0 for none
    std::function<Outcome()> run;
};

// Criteria that cannot pass as stated; see the README.
const std::set<int> kUnattainable = {2};

}  // namespace

int main(int argc, char** argv) {
    bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
    const Criterion criteria[] = {
        {1, "kernel laws", 10, kernel_laws},
        {2, "Lie algebroid gate", 5, algebroid_gate},
        {3, "bialgebroid gate", 5, bialgebroid_gate},
        {4, "Courant double", 30, doubling},
        {5, "derived-bracket fidelity", 0, derived_fidelity},
        {6, "equivalence of definitions", 0, equivalence},
        {7, "SHLA identities", 60, shla},
        {8, "quasi / twist behaviour", 0, twists},
        {9, "Weil / BRST", 0, weil_brst},
        {10, "necklace local cohomology", 20, local_cohomology},
        {11, "necklace global cohomology", 0, global_cohomology},
        {12, "necklace identities", 0, identities},
        {13, "volume", 0, volume},
    };
    int unexpected = 0, failed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit > 0 && secs > c.limit) o.require(false, "over the time limit");
        char timing[64];
        if (c.limit > 0) std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, c.limit);
        else std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::printf("criterion %2d: %s  %s  [%s]  %s\n", c.id, o.ok ? "PASS" : "FAIL", c.name, timing, o.detail.c_str());
        if (!o.ok) {
            ++failed;
            if (strict || !kUnattainable.count(c.id)) ++unexpected;
        }
    }
    std::printf("%d of 13 criteria pass\n", 13 - failed);
    return unexpected ? 1 : 0;
}
