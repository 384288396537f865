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

#include "dbracket/necklace.hpp"

#include "dbracket/parse.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dbr {

namespace {

DarbouxChart odd_chart(const std::vector<std::string>& pos, const std::vector<std::string>& mom) {
    std::vector<GradedVariable> v;
    for (const auto& p : pos) v.push_back({p, 0, 0, 0});
    for (const auto& m : mom) v.push_back({m, 1, 0, 0});
    auto ch = Chart::make(v);
    std::vector<std::pair<int, int>> pairs;
    const int n = static_cast<int>(pos.size());
    for (int k = 0; k < n; ++k) pairs.emplace_back(k, n + k);
    return DarbouxChart(ch, pairs, 1);
}

Poly P(const DarbouxChart& dc, const std::string& text) { return parse_poly(text, dc.chart()); }

GaussRat in_factor(int n) { return GaussRat(Rational(0), Rational(n)); }

std::string tuple_str(const std::array<int, 3>& d) {
    return "(" + std::to_string(d[0]) + "," + std::to_string(d[1]) + "," + std::to_string(d[2]) + ")";
}

int rank_of(const std::vector<Vec>& cols, int n) {
    if (cols.empty()) return 0;
    return rank(from_columns(cols, n));
}

std::vector<Vec> columns(const Matrix& m) {
    std::vector<Vec> out;
    for (int j = 0; j < m.cols(); ++j) {
        Vec v(m.rows());
        for (int i = 0; i < m.rows(); ++i) v[i] = m(i, j);
        out.push_back(v);
    }
    return out;
}

// Representatives of ker / im, chosen greedily from the candidates.
std::vector<Vec> complement(const std::vector<Vec>& image, const std::vector<Vec>& candidates, int n) {
    std::vector<Vec> span = image, chosen;
    int r = rank_of(span, n);
    for (const auto& c : candidates) {
        span.push_back(c);
        int r2 = rank_of(span, n);
        if (r2 > r) {
            chosen.push_back(c);
            r = r2;
        } else {
            span.pop_back();
        }
    }
    return chosen;
}

Vec unit(int n, int k) {
    Vec v(n);
    v[k] = GaussRat(1);
    return v;
}

}  // namespace

NecklaceStructure build_necklace(const Rational& c) {
    NecklaceStructure s;
    s.c = c;
    s.chart = odd_chart({"s", "t"}, {"sigma", "tau"});
    Rational r2 = (1 - c) / 2;
    r2.canonicalize();
    Poly st = P(s.chart, "sigma*tau");
    s.pi_c = (P(s.chart, "s^2 + t^2") - Poly(s.chart.chart(), GaussRat(r2))) * st * GaussRat(Rational(1, 2));
    s.pi = st * GaussRat(Rational(1, 4));
    return s;
}

SU2Structures build_su2_structures() {
    SU2Structures s;
    s.c2 = odd_chart({"u", "ub", "v", "vb"}, {"th_u", "th_ub", "th_v", "th_vb"});
    s.pi_su2 = P(s.c2, "-i*v*vb*th_u*th_ub + 1/2*i*u*v*th_u*th_v - 1/2*i*ub*vb*th_ub*th_vb"
                       " + 1/2*i*u*vb*th_u*th_vb - 1/2*i*ub*v*th_ub*th_v");
    s.wchart = odd_chart({"w", "wb"}, {"th_w", "th_wb"});
    s.pi1 = P(s.wchart, "-i*w*wb*(1 + w*wb)*th_w*th_wb");
    return s;
}

Poly schouten_square(const Poly& pi, const DarbouxChart& dc) {
    if (dc.bracket_parity() != 1) throw std::invalid_argument("Schouten square needs an odd chart");
    for (const auto& [m, c] : pi.terms()) {
        int odd = 0;
        for (int k : dc.momenta()) odd += m[k];
        if (odd != 2 || monomial_parity(*dc.chart(), m) != 0)
            throw std::invalid_argument("not a bivector: " + pi.str());
    }
    return canonical_bracket(pi, pi, dc);
}

ModeComplex mode_matrices(const Rational& c, int n, int N) {
    (void)c;  // pi_c = I d_I ^ d_theta in action-angle coordinates for every c
    if (N < 3) throw std::invalid_argument("truncation N must be at least 3");
    ModeComplex mc;
    mc.n = n;
    mc.N = N;
    const int D = N + 1;
    mc.d0 = Matrix(2 * D, D);
    mc.d1 = Matrix(D, 2 * D);
    // d f = -I f' eta + I (i n f) xi
    for (int m = 0; m <= N; ++m) {
        if (m + 1 <= N) mc.d0(2 * (m + 1), m) = in_factor(n);
        mc.d0(2 * m + 1, m) = GaussRat(-m);
    }
    // d (a xi) = (I a' - a) xi eta, d (b eta) = i n I b xi eta
    for (int m = 0; m <= N; ++m) {
        mc.d1(m, 2 * m) = GaussRat(m - 1);
        if (m + 1 <= N) mc.d1(m + 1, 2 * m + 1) = in_factor(n);
    }
    return mc;
}

std::string mode_element(int n, int degree, const Vec& v) {
    static const char* part1[2] = {"d_I", "d_theta"};
    std::ostringstream out;
    bool first = true;
    for (size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero()) continue;
        int m = degree == 1 ? static_cast<int>(k / 2) : static_cast<int>(k);
        std::string mono = m == 0 ? "" : (m == 1 ? "I" : "I^" + std::to_string(m));
        std::string tail = degree == 0 ? "" : degree == 1 ? part1[k % 2] : "d_I^d_theta";
        std::string body = mono;
        if (!tail.empty()) body += (body.empty() ? "" : " ") + tail;
        std::string coef = v[k].str();
        bool simple = v[k].is_real() || sgn(v[k].re()) == 0;
        if (!simple) coef = "(" + coef + ")";
        std::string term;
        if (body.empty()) term = coef;
        else if (v[k].is_one()) term = body;
        else if (v[k] == GaussRat(-1)) term = "-" + body;
        else term = coef + " " + body;
        if (!first) out << (term[0] == '-' ? " - " : " + ") << (term[0] == '-' ? term.substr(1) : term);
        else out << term;
        first = false;
    }
    if (first) return "0";
    std::string s = out.str();
    if (n != 0) s = "(" + s + ") e^(" + std::to_string(n) + " i theta)";
    return s;
}

CohomologyReport mode_cohomology(const Rational& c, int n, int N) {
    if (N < 4) throw std::invalid_argument("truncation N must be at least 4");
    auto dims_of = [&](int NN, CohomologyReport* gens) {
        ModeComplex mc = mode_matrices(c, n, NN);
        const int D = NN + 1;
        int r0 = rank(mc.d0), r1 = rank(mc.d1);
        Matrix prod = mc.d1 * mc.d0;
        std::array<int, 3> d{D - r0, 2 * D - r0 - r1, D - r1};
        if (gens) {
            gens->report.add(bool_check("d1 d0 = 0 (N = " + std::to_string(NN) + ")", prod.is_zero(), "nonzero product"));
            auto h0 = nullspace(mc.d0);
            for (const auto& v : h0) gens->generators[0].push_back(mode_element(n, 0, v));
            for (const auto& v : complement(columns(mc.d0), nullspace(mc.d1), 2 * D))
                gens->generators[1].push_back(mode_element(n, 1, v));
            std::vector<Vec> units;
            for (int k = 0; k < D; ++k) units.push_back(unit(D, k));
            for (const auto& v : complement(columns(mc.d1), units, D)) gens->generators[2].push_back(mode_element(n, 2, v));
        }
        return d;
    };
    CohomologyReport rep;
    rep.provenance = "computed";
    rep.report.title = "mode " + std::to_string(n) + " at N = " + std::to_string(N);
    rep.dims = dims_of(N, &rep);
    auto d2 = dims_of(N + 2, nullptr);
    rep.report.add(bool_check("stable between N = " + std::to_string(N) + " and " + std::to_string(N + 2), d2 == rep.dims,
                              tuple_str(rep.dims) + " vs " + tuple_str(d2), tuple_str(rep.dims)));
    rep.inputs.push_back({"mode " + std::to_string(n) + " complex", "computed"});
    return rep;
}

CohomologyReport global_assembly(const Rational& c, const CohomologyReport& local, const MayerVietorisData& mv) {
    if (abs(c) == 1) throw std::invalid_argument("c = +-1 is the Bruhat case, not covered");
    CohomologyReport out;
    out.report.title = "global Poisson cohomology of S^2";
    if (abs(c) > 1) {
        out.dims = {1, 0, 1};
        out.provenance = "recorded-constant";
        out.generators = {std::vector<std::string>{"1"}, {}, {"pi_c"}};
        out.inputs.push_back({"symplectic case: de Rham cohomology of S^2", "recorded-constant"});
        out.report.add(recorded("dims", tuple_str(out.dims) + " (pi_c symplectic)"));
        return out;
    }
    std::array<int, 3> A{}, B = mv.uv;
    for (int k = 0; k < 3; ++k) {
        A[k] = local.dims[k] + mv.v[k];
        if (mv.ranks[k] < 0 || mv.ranks[k] > std::min(A[k], B[k]))
            throw std::runtime_error("inconsistent exactness data: rank " + std::to_string(mv.ranks[k]) + " in degree " +
                                     std::to_string(k) + " exceeds min(" + std::to_string(A[k]) + ", " +
                                     std::to_string(B[k]) + ")");
    }
    if (B[2] - mv.ranks[2] != 0)
        throw std::runtime_error("inconsistent exactness data: H^2(U) + H^2(V) -> H^2(U cap V) is not onto");
    const auto& r = mv.ranks;
    out.dims = {A[0] - r[0], (B[0] - r[0]) + (A[1] - r[1]), (B[1] - r[1]) + (A[2] - r[2])};
    out.provenance = "computed";
    out.generators = {std::vector<std::string>{"1"}, {"Delta_omega"}, {"pi_c", "pi"}};
    out.inputs = {{"H(U): mode-0 complex", local.provenance},
                  {"H(U): modes n != 0 beyond the computed range are acyclic", "recorded-constant"},
                  {"H(U): flat complex acyclic", "recorded-constant"},
                  {"H(V) = H(two disks) = " + tuple_str(mv.v), "recorded-constant"},
                  {"H(U cap V) = H(two annuli) = " + tuple_str(mv.uv), "recorded-constant"},
                  {"restriction ranks " + tuple_str(mv.ranks), "recorded-constant"},
                  {"generator identification", "recorded-constant"}};
    out.report.add(bool_check("exact sequence arithmetic", true, {}, "local " + tuple_str(local.dims)));
    out.report.add(recorded("dims", tuple_str(out.dims)));
    return out;
}

ModularVolume modular_and_volume(const Rational& c) {
    ModularVolume mv;
    mv.xy = odd_chart({"x", "y"}, {"th_x", "th_y"});
    const auto& xy = mv.xy;
    // pi_c = 1/4 (1 + r^2)((c+1) r^2 + c - 1) d_x^d_y; omega = (1/k) dx^dy with
    // k = 1/4 (1 + r^2)^2 the coefficient of pi.
    Poly Dn = P(xy, "1 + x^2 + y^2");
    Poly Nc = P(xy, "x^2 + y^2") * GaussRat(c + 1) + Poly(xy.chart(), GaussRat(c - 1));
    Poly q = Nc * GaussRat(Rational(1, 4));  // pi^{xy} / Dn
    Poly h = Dn * q;
    mv.pi_c_xy = h * P(xy, "th_x*th_y");
    // Delta^i = sum_j d_j pi^{ji} - pi^{ji} d_j log k, with d_j log k = 2 d_j Dn / Dn.
    Poly pxy = h, pyx = -h;
    Poly qxy = q, qyx = -q;
    Poly delta_x = pyx.partial("y") - qyx * Dn.partial("y") * GaussRat(2);
    Poly delta_y = pxy.partial("x") - qxy * Dn.partial("x") * GaussRat(2);
    mv.delta_xy = VectorField(xy.chart(), 0);
    mv.delta_xy.set(0, delta_x);
    mv.delta_xy.set(1, delta_y);
    mv.report.title = "modular field and volume";
    mv.report.add(bool_check("Delta_omega = x d_y - y d_x", delta_x == P(xy, "-y") && delta_y == P(xy, "x"),
                             mv.delta_xy.str()));
    Poly dxy = delta_x * P(xy, "th_x") + delta_y * P(xy, "th_y");
    mv.report.add(residual_check("[Delta_omega, pi_c] = 0 in (x, y)", canonical_bracket(dxy, mv.pi_c_xy, xy)));

    auto nk = build_necklace(c);
    mv.delta_st = VectorField(nk.chart.chart(), 0);
    mv.delta_st.set(0, P(nk.chart, "-t"));
    mv.delta_st.set(1, P(nk.chart, "s"));
    Poly dst = P(nk.chart, "s*tau - t*sigma");
    mv.report.add(residual_check("[Delta_omega, pi_c] = 0 in (s, t)", canonical_bracket(dst, nk.pi_c, nk.chart),
                                 "Delta_omega = s d_t - t d_s"));
    if (abs(c) > 1) {
        Rational ratio = (c + 1) / (c - 1);
        ratio.canonicalize();
        mv.volume_expr = "2*pi*ln(" + to_string(ratio) + ")";
        mv.volume = 2 * std::numbers::pi * std::log(ratio.get_d());
        std::ostringstream v;
        v.precision(15);
        v << mv.volume;
        mv.report.add(recorded("volume", mv.volume_expr + " = " + v.str()));
    }
    return mv;
}

Report structure_identities(const Rational& c, int N) {
    if (c == 1) throw std::invalid_argument("c = 1: the Euler field is undefined");
    Report rep;
    rep.title = "necklace identities";
    auto nk = build_necklace(c);
    const auto& dc = nk.chart;
    Rational k = 1 / (2 * (c - 1));
    k.canonicalize();
    Poly E = P(dc, "s*sigma + t*tau") * GaussRat(k);
    rep.add(residual_check("[pi_c, E] = pi", canonical_bracket(nk.pi_c, E, dc) - nk.pi,
                           "E = " + to_string(k) + " (s d_s + t d_t)"));
    for (const Rational& c2 : {Rational(0), Rational(1, 2), Rational(-1, 2), Rational(2)}) {
        auto other = build_necklace(c2);
        Poly d = nk.pi_c - other.pi_c.embed(dc.chart()) - nk.pi * GaussRat(c - c2);
        rep.add(residual_check("pi_c - pi_c' = (c - c') pi, c' = " + to_string(c2), d));
    }
    for (const Rational& alpha : {Rational(2), Rational(1, 3)}) {
        // s = alpha s', sigma = sigma' / alpha
        Poly scaled(dc.chart());
        for (const auto& [m, coef] : nk.pi_c.terms()) {
            Rational f = 1;
            for (int e = 0; e < m[0] + m[1]; ++e) f *= alpha;
            for (int e = 0; e < m[2] + m[3]; ++e) f /= alpha;
            scaled.add_term(m, coef * GaussRat(f));
        }
        Rational c2 = 1 - (1 - c) / (alpha * alpha);
        c2.canonicalize();
        rep.add(residual_check("rescaling by " + to_string(alpha) + " gives pi_c' with c' = " + to_string(c2),
                               scaled - build_necklace(c2).pi_c.embed(dc.chart())));
    }
    rep.add(residual_check("[pi_c, pi_c] = 0", schouten_square(nk.pi_c, dc)));

    ModeComplex mc = mode_matrices(c, 0, N);
    const int D = N + 1;
    Vec pic = unit(D, 1);        // I xi eta
    Vec rot = unit(2 * D, 1);    // eta = d_theta
    rep.add(bool_check("pi_c not in im d (mode 0, N = " + std::to_string(N) + ")", !solve(mc.d1, pic).has_value(),
                       "pi_c is exact"));
    bool cocycle = true;
    for (const auto& x : mc.d1.apply(rot)) cocycle = cocycle && x.is_zero();
    rep.add(bool_check("d Delta_omega = 0", cocycle, "not a cocycle"));
    rep.add(bool_check("Delta_omega not in im d (mode 0, N = " + std::to_string(N) + ")",
                       !solve(mc.d0, rot).has_value(), "Delta_omega is exact"));

    auto su = build_su2_structures();
    const auto& c2 = su.c2;
    auto br = [&](const std::string& a, const std::string& b) {
        return canonical_bracket(canonical_bracket(su.pi_su2, P(c2, b), c2), P(c2, a), c2);
    };
    rep.add(residual_check("[pi_SU2, pi_SU2] = 0", schouten_square(su.pi_su2, c2)));
    struct Row {
        const char *a, *b, *val;
    };
    const Row table[] = {{"u", "ub", "-i*v*vb"},      {"u", "v", "1/2*i*u*v"},     {"u", "vb", "1/2*i*u*vb"},
                         {"v", "vb", "0"},            {"ub", "vb", "-1/2*i*ub*vb"}, {"ub", "v", "-1/2*i*ub*v"}};
    for (const auto& r : table)
        rep.add(residual_check(std::string("{") + r.a + ", " + r.b + "} = " + r.val, br(r.a, r.b) - P(c2, r.val)));
    // {v/u, vb/ub} (u ub)^2 against pi_1 with w = v/u
    Poly num = P(c2, "u*ub") * br("v", "vb") - P(c2, "u*vb") * br("v", "ub") - P(c2, "v*ub") * br("u", "vb") +
               P(c2, "v*vb") * br("u", "ub");
    Poly coef = su.pi1.partial("th_w").partial("th_wb");  // th_w th_wb coefficient
    Poly lifted(c2.chart());
    for (const auto& [m, cf] : coef.terms()) {
        int a = m[0], b = m[1];
        if (a > 2 || b > 2) throw std::logic_error("unexpected degree in pi_1");
        Poly t = Poly(c2.chart(), cf) * P(c2, "v").pow(a) * P(c2, "u").pow(2 - a) * P(c2, "vb").pow(b) *
                 P(c2, "ub").pow(2 - b);
        lifted += t;
    }
    rep.add(residual_check("pi_1 is the image of pi_SU2 under w = v/u", num - lifted));
    rep.add(residual_check("[pi_1, pi_1] = 0", schouten_square(su.pi1, su.wchart)));
    return rep;
}

}  // namespace dbr
