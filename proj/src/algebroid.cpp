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

#include "dbracket/algebroid.hpp"

#include <set>
#include <stdexcept>

namespace dbr {

AlgebroidSpec AlgebroidSpec::zero(ChartPtr base, std::vector<std::string> fiber) {
    AlgebroidSpec s;
    s.base = base;
    s.fiber = std::move(fiber);
    int r = s.rank(), n = base->size();
    s.anchor.assign(r, std::vector<Poly>(n, Poly(base)));
    s.structure.assign(r, std::vector<std::vector<Poly>>(r, std::vector<Poly>(r, Poly(base))));
    return s;
}

void AlgebroidSpec::validate() const {
    int r = rank(), n = dim();
    if (static_cast<int>(anchor.size()) != r || static_cast<int>(structure.size()) != r)
        throw std::invalid_argument("anchor/structure tables do not match the fibre rank");
    std::vector<int> all;
    for (int k = 0; k < n; ++k) {
        if (base->var(k).parity != 0) throw std::invalid_argument("base coordinates must be even");
        all.push_back(k);
    }
    for (int a = 0; a < r; ++a) {
        if (static_cast<int>(anchor[a].size()) != n || static_cast<int>(structure[a].size()) != r)
            throw std::invalid_argument("malformed table row");
        for (const auto& p : anchor[a])
            if (p.chart() != base || !p.uses_only(all)) throw std::invalid_argument("anchor entry is not a base function");
        for (int b = 0; b < r; ++b) {
            if (static_cast<int>(structure[a][b].size()) != r) throw std::invalid_argument("malformed table row");
            for (int c = 0; c < r; ++c) {
                const Poly& p = structure[a][b][c];
                if (p.chart() != base) throw std::invalid_argument("structure entry is not a base function");
                if (p != -structure[b][a][c])
                    throw std::invalid_argument("structure functions are not antisymmetric in C[" +
                                                std::to_string(a + 1) + "][" + std::to_string(b + 1) + "][" +
                                                std::to_string(c + 1) + "]");
            }
        }
    }
}

namespace {

SideCharts make_side(const std::vector<std::string>& base, const std::vector<std::string>& fiber, int fib_eps,
                     int fib_delta) {
    std::vector<GradedVariable> pi_vars, cot_vars;
    for (const auto& b : base) {
        pi_vars.push_back({b, 0, 0, 0});
        cot_vars.push_back({b, 0, 0, 0});
    }
    for (const auto& f : fiber) {
        pi_vars.push_back({f, 1, fib_eps, fib_delta});
        cot_vars.push_back({f, 1, fib_eps, fib_delta});
    }
    for (const auto& b : base) cot_vars.push_back({"p_" + b, 0, 1, 1});
    for (const auto& f : fiber) cot_vars.push_back({"p_" + f, 1, 1 - fib_eps, 1 - fib_delta});
    SideCharts s;
    s.pi = Chart::make(pi_vars);
    auto cot = Chart::make(cot_vars);
    int n = static_cast<int>(base.size()), r = static_cast<int>(fiber.size());
    std::vector<std::pair<int, int>> pairs;
    for (int k = 0; k < n; ++k) {
        s.x.push_back(k);
        s.px.push_back(n + r + k);
        pairs.emplace_back(k, n + r + k);
    }
    for (int a = 0; a < r; ++a) {
        s.fib.push_back(n + a);
        s.pfib.push_back(2 * n + r + a);
        pairs.emplace_back(n + a, 2 * n + r + a);
    }
    s.cot = DarbouxChart(cot, pairs, 0);
    return s;
}

Poly var(const DarbouxChart& dc, int k) { return Poly::variable(dc.chart(), k); }

}  // namespace

PairCharts make_pair_charts(const std::vector<std::string>& base, const std::vector<std::string>& fiber,
                            const std::vector<std::string>& dual_fiber) {
    if (fiber.size() != dual_fiber.size()) throw std::invalid_argument("A and A* must have the same rank");
    std::set<std::string> names(base.begin(), base.end());
    for (const auto& v : fiber)
        if (!names.insert(v).second) throw std::invalid_argument("duplicate coordinate name " + v);
    for (const auto& v : dual_fiber)
        if (!names.insert(v).second) throw std::invalid_argument("duplicate coordinate name " + v);
    for (const auto& v : names)
        if (names.count("p_" + v)) throw std::invalid_argument("name p_" + v + " is reserved for a momentum");
    PairCharts pc;
    std::vector<GradedVariable> bv;
    for (const auto& b : base) bv.push_back({b, 0, 0, 0});
    pc.base = Chart::make(bv);
    pc.a = make_side(base, fiber, 0, 1);
    pc.astar = make_side(base, dual_fiber, 1, 0);
    return pc;
}

Poly build_mu(const AlgebroidSpec& spec, const SideCharts& side) {
    const auto& dc = side.cot;
    Poly mu(dc.chart());
    int r = spec.rank(), n = spec.dim();
    for (int a = 0; a < r; ++a)
        for (int i = 0; i < n; ++i) {
            const Poly& A = spec.anchor[a][i];
            if (A.is_zero()) continue;
            mu += var(dc, side.fib[a]) * A.embed(dc.chart()) * var(dc, side.px[i]);
        }
    GaussRat half(Rational(-1, 2));
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            for (int c = 0; c < r; ++c) {
                const Poly& C = spec.structure[a][b][c];
                if (C.is_zero()) continue;
                mu += C.embed(dc.chart()) * var(dc, side.fib[a]) * var(dc, side.fib[b]) * var(dc, side.pfib[c]) * half;
            }
    return mu;
}

Poly build_gamma_star(const AlgebroidSpec& astar, const SideCharts& a_side) {
    const auto& dc = a_side.cot;
    Poly g(dc.chart());
    int r = astar.rank(), n = astar.dim();
    for (int a = 0; a < r; ++a)
        for (int i = 0; i < n; ++i) {
            const Poly& A = astar.anchor[a][i];
            if (A.is_zero()) continue;
            g += A.embed(dc.chart()) * var(dc, a_side.px[i]) * var(dc, a_side.pfib[a]);
        }
    GaussRat half(Rational(-1, 2));
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            for (int c = 0; c < r; ++c) {
                const Poly& C = astar.structure[a][b][c];
                if (C.is_zero()) continue;
                g += var(dc, a_side.fib[c]) * C.embed(dc.chart()) * var(dc, a_side.pfib[a]) *
                     var(dc, a_side.pfib[b]) * half;
            }
    return g;
}

VectorField cartan_differential(const AlgebroidSpec& spec, const ChartPtr& pi) {
    VectorField d(pi, 1);
    int r = spec.rank(), n = spec.dim();
    std::vector<int> x, f;
    for (int i = 0; i < n; ++i) x.push_back(pi->index_of(spec.base->var(i).name));
    for (int a = 0; a < r; ++a) f.push_back(pi->index_of(spec.fiber[a]));
    for (int i = 0; i < n; ++i) {
        Poly v(pi);
        for (int a = 0; a < r; ++a) v += Poly::variable(pi, f[a]) * spec.anchor[a][i].embed(pi);
        d.set(x[i], v);
    }
    GaussRat half(Rational(-1, 2));
    for (int c = 0; c < r; ++c) {
        Poly v(pi);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                if (!spec.structure[a][b][c].is_zero())
                    v += spec.structure[a][b][c].embed(pi) * Poly::variable(pi, f[a]) * Poly::variable(pi, f[b]) * half;
        d.set(f[c], v);
    }
    return d;
}

Report check_lie_algebroid(const AlgebroidSpec& spec) {
    spec.validate();
    std::vector<std::string> base;
    for (const auto& v : spec.base->vars()) base.push_back(v.name);
    std::vector<std::string> dual;
    for (int a = 0; a < spec.rank(); ++a) dual.push_back("dual_" + spec.fiber[a]);
    PairCharts pc = make_pair_charts(base, spec.fiber, dual);
    Report rep;
    rep.title = "Lie algebroid";
    Poly mu = build_mu(spec, pc.a);
    rep.add(residual_check("{mu,mu} = 0", canonical_bracket(mu, mu, pc.a.cot)));
    VectorField d = cartan_differential(spec, pc.a.pi);
    Poly sq(pc.a.pi);
    std::string worst;
    for (int k = 0; k < pc.a.pi->size(); ++k) {
        Poly dd = d.apply(d.component(k));
        if (!dd.is_zero() && worst.empty()) worst = "d^2(" + pc.a.pi->var(k).name + ") = " + dd.str();
    }
    rep.add(bool_check("Cartan differential squares to zero", worst.empty(), worst));
    return rep;
}

DoubleModel::DoubleModel(ProtoSpec spec) : spec_(std::move(spec)) {
    spec_.a.validate();
    spec_.astar.validate();
    if (spec_.a.base != spec_.astar.base) throw std::invalid_argument("A and A* must share the base chart");
    std::vector<std::string> base;
    for (const auto& v : spec_.a.base->vars()) base.push_back(v.name);
    charts_ = make_pair_charts(base, spec_.a.fiber, spec_.astar.fiber);
    const auto& a = charts_.a;
    const auto& s = charts_.astar;
    theta_.mu = build_mu(spec_.a, a);
    gamma_ = build_mu(spec_.astar, s);
    theta_.lgamma = legendre(gamma_, s.cot, a.cot);
    Poly phi = spec_.phi.chart() ? spec_.phi.embed(a.pi) : Poly(a.pi);
    Poly psi = spec_.psi.chart() ? spec_.psi.embed(s.pi) : Poly(s.pi);
    for (auto g : phi.gradings())
        if (g != Grading{0, 3}) throw std::invalid_argument("phi must be a 3-form in the A* direction (degree 3 in xi)");
    for (auto g : psi.gradings())
        if (g != Grading{3, 0}) throw std::invalid_argument("psi must be of degree 3 in the dual fibre coordinates");
    theta_.phi = phi.embed(a.cot.chart());
    theta_.lpsi = legendre(psi.embed(s.cot.chart()), s.cot, a.cot);
    theta_.theta = theta_.mu + theta_.lgamma + theta_.phi + theta_.lpsi;
}

Poly DoubleModel::to_cot(const Poly& p) const { return p.embed(charts_.a.cot.chart()); }

Poly DoubleModel::from_cot_to_pi(const Poly& p) const {
    std::vector<int> allowed = charts_.a.x;
    allowed.insert(allowed.end(), charts_.a.fib.begin(), charts_.a.fib.end());
    if (!p.uses_only(allowed)) throw std::invalid_argument("polynomial involves momenta: " + p.str());
    return p.embed(charts_.a.pi);
}

Report check_bialgebroid(const DoubleModel& m) {
    Report rep;
    rep.title = "Lie bialgebroid";
    const auto& a = m.charts().a.cot;
    const auto& s = m.charts().astar.cot;
    const auto& t = m.theta();
    rep.add(residual_check("{mu,mu} = 0", canonical_bracket(t.mu, t.mu, a)));
    rep.add(residual_check("{gamma,gamma} = 0", canonical_bracket(m.gamma(), m.gamma(), s)));
    rep.add(residual_check("{mu,L*gamma} = 0", canonical_bracket(t.mu, t.lgamma, a)));
    return rep;
}

Report check_proto(const DoubleModel& m) {
    const auto& a = m.cot();
    const auto& t = m.theta();
    auto br = [&](const Poly& u, const Poly& v) { return canonical_bracket(u, v, a); };
    GaussRat half(Rational(1, 2));
    Report rep;
    rep.title = "proto-bialgebroid";
    rep.add(residual_check("(2,4) 1/2{mu,mu} + {L*gamma,phi} = 0", br(t.mu, t.mu) * half + br(t.lgamma, t.phi)));
    rep.add(residual_check("(3,3) {mu,L*gamma} + {phi,L*psi} = 0", br(t.mu, t.lgamma) + br(t.phi, t.lpsi)));
    rep.add(residual_check("(4,2) 1/2{gamma,gamma} + {mu,L*psi} = 0",
                           br(t.lgamma, t.lgamma) * half + br(t.mu, t.lpsi)));
    rep.add(residual_check("(1,5) {mu,phi} = 0", br(t.mu, t.phi)));
    rep.add(residual_check("(5,1) {gamma,psi} = 0", br(t.lgamma, t.lpsi)));
    return rep;
}

namespace {

std::vector<Poly> function_generators(const DoubleModel& m) {
    const auto& pc = m.charts().a;
    std::vector<Poly> g;
    for (int k : pc.x) g.push_back(Poly::variable(pc.cot.chart(), k));
    for (int k : pc.fib) g.push_back(Poly::variable(pc.cot.chart(), k));
    if (!pc.x.empty() && !pc.fib.empty())
        g.push_back(Poly::variable(pc.cot.chart(), pc.x[0]) * Poly::variable(pc.cot.chart(), pc.fib[0]));
    return g;
}

}  // namespace

Report check_derivation_property(const DoubleModel& m) {
    const auto& a = m.cot();
    const auto& t = m.theta();
    auto sch = [&](const Poly& u, const Poly& v) {
        Poly r(a.chart());
        auto parts = u.parity_parts();
        for (int p = 0; p < 2; ++p) {
            if (parts[p].is_zero()) continue;
            Poly s = canonical_bracket(canonical_bracket(t.lgamma, parts[p], a), v, a);
            r += p ? s : -s;
        }
        return r;
    };
    auto dA = [&](const Poly& u) { return canonical_bracket(t.mu, u, a); };
    Report rep;
    rep.title = "d_A derivation of the A* bracket";
    auto gens = function_generators(m);
    std::string first;
    for (const auto& u : gens)
        for (const auto& v : gens) {
            int up = u.parity().value_or(0);
            Poly res = dA(sch(u, v)) - sch(dA(u), v) - (up ? sch(u, dA(v)) : -sch(u, dA(v)));
            if (!res.is_zero() && first.empty()) first = "(" + u.str() + ", " + v.str() + "): " + res.str();
        }
    rep.add(bool_check("d_A[a,b] = [d_A a,b] + (-1)^{a+1}[a,d_A b] on generators", first.empty(), first));
    return rep;
}

DoubleDifferential double_differential(const DoubleModel& m) {
    DoubleDifferential d;
    d.field = hamiltonian_field(m.theta().theta, m.cot());
    if (d.field.is_zero()) d.field = VectorField(m.cot().chart(), 1);
    d.warning = !canonical_bracket(m.theta().theta, m.theta().theta, m.cot()).is_zero();
    return d;
}

Report check_double_square(const DoubleModel& m) {
    auto d = double_differential(m);
    Report rep;
    rep.title = "Drinfeld double";
    const auto& ch = m.cot().chart();
    int bad = 0;
    std::string first;
    for (int k = 0; k < ch->size(); ++k) {
        Poly dd = d.field.apply(d.field.component(k));
        if (!dd.is_zero()) {
            ++bad;
            if (first.empty()) first = "D^2(" + ch->var(k).name + ") = " + dd.str();
        }
    }
    rep.add(bool_check("D^2 = 0 on all " + std::to_string(ch->size()) + " generators", bad == 0, first));
    if (d.warning) rep.notes.push_back("warning: {theta,theta} != 0");
    return rep;
}

Poly schouten_bracket(const DoubleModel& m, const Poly& xi, const Poly& eta) {
    Poly a = m.to_cot(xi), b = m.to_cot(eta);
    std::vector<int> allowed = m.charts().a.x;
    allowed.insert(allowed.end(), m.charts().a.fib.begin(), m.charts().a.fib.end());
    if (!a.uses_only(allowed) || !b.uses_only(allowed))
        throw std::invalid_argument("schouten bracket arguments must not involve momenta");
    const auto& dc = m.cot();
    Poly r(dc.chart());
    auto parts = a.parity_parts();
    for (int p = 0; p < 2; ++p) {
        if (parts[p].is_zero()) continue;
        Poly s = canonical_bracket(canonical_bracket(m.theta().lgamma, parts[p], dc), b, dc);
        r += p ? s : -s;
    }
    return m.from_cot_to_pi(r);
}

namespace {

// Hamiltonian lift of a field on ΠA to T*ΠA.
Poly lift_pi_field(const DoubleModel& m, const VectorField& v) {
    const auto& dc = m.cot();
    VectorField w(dc.chart(), v.parity());
    for (const auto& [k, c] : v.components()) w.set(dc.chart()->index_of(v.chart()->var(k).name), m.to_cot(c));
    return hamiltonian_lift(w, dc);
}

}  // namespace

Report check_brst(const DoubleModel& m) {
    const auto& pc = m.charts().a;
    const auto& dc = pc.cot;
    VectorField dA = cartan_differential(m.spec().a, pc.pi);
    auto D = [&](const Poly& p) { return canonical_bracket(m.theta().theta, p, dc); };
    Report rep;
    rep.title = "BRST differential";
    std::string f1, f2, f3, f4;
    for (int i = 0; i < m.spec().a.dim(); ++i) {
        Poly x = Poly::variable(pc.pi, pc.x[i]);
        Poly r = D(m.to_cot(x)) - m.to_cot(dA.apply(x));
        if (!r.is_zero() && f1.empty()) f1 = r.str();
        VectorField v(pc.pi, 0);
        v.set(pc.x[i], Poly(pc.pi, GaussRat(1)));
        Poly r3 = D(lift_pi_field(m, v)) - lift_pi_field(m, commutator(dA, v));
        if (!r3.is_zero() && f3.empty()) f3 = r3.str();
    }
    for (int a = 0; a < m.spec().a.rank(); ++a) {
        Poly xi = Poly::variable(pc.pi, pc.fib[a]);
        Poly r = D(m.to_cot(xi)) - m.to_cot(dA.apply(xi));
        if (!r.is_zero() && f2.empty()) f2 = r.str();
        VectorField ix(pc.pi, 1);
        ix.set(pc.fib[a], Poly(pc.pi, GaussRat(1)));
        Poly r4 = D(lift_pi_field(m, ix)) - lift_pi_field(m, commutator(dA, ix));
        if (!r4.is_zero() && f4.empty()) f4 = r4.str();
    }
    rep.add(bool_check("D(pi*f) = pi*(d_A f)", f1.empty(), f1));
    rep.add(bool_check("D(pi*xi) = pi*(d_A xi)", f2.empty(), f2));
    rep.add(bool_check("D(h_v) = h_[d_A,v]", f3.empty(), f3));
    rep.add(bool_check("D(h_{i_X}) = h_[d_A,i_X]", f4.empty(), f4));
    return rep;
}

Report check_weil_restriction(const DoubleModel& m) {
    const auto& pc = m.charts().a;
    const auto& dc = pc.cot;
    auto ch = dc.chart();
    auto d = double_differential(m);
    int r = m.spec().a.rank();
    std::vector<int> zero = pc.x;
    zero.insert(zero.end(), pc.fib.begin(), pc.fib.end());
    Report rep;
    rep.title = "Weil differential";
    std::string stable;
    for (int k : zero) {
        Poly c = d.field.component(k).zero_out(zero);
        if (!c.is_zero() && stable.empty()) stable = "D(" + ch->var(k).name + ")|F = " + c.str();
    }
    rep.add(bool_check("fibre over the origin is D-stable", stable.empty(), stable));
    // Lie algebra constants from the dual structure: C^c_ab = Cbar^{ab}_c.
    auto C = [&](int a, int b, int c) { return m.spec().astar.structure[a][b][c].embed(ch); };
    GaussRat half(Rational(-1, 2));
    std::string mism;
    for (int c = 0; c < r; ++c) {
        Poly want_u(ch), want_t = Poly::variable(ch, pc.px[c]);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) {
                want_u += C(a, b, c) * Poly::variable(ch, pc.px[a]) * Poly::variable(ch, pc.pfib[b]);
                want_t += C(a, b, c) * Poly::variable(ch, pc.pfib[a]) * Poly::variable(ch, pc.pfib[b]) * half;
            }
        Poly got_u = d.field.component(pc.px[c]).zero_out(zero);
        Poly got_t = d.field.component(pc.pfib[c]).zero_out(zero);
        if (got_u != want_u && mism.empty())
            mism = "D(" + ch->var(pc.px[c]).name + ") = " + got_u.str() + " expected " + want_u.str();
        if (got_t != want_t && mism.empty())
            mism = "D(" + ch->var(pc.pfib[c]).name + ") = " + got_t.str() + " expected " + want_t.str();
    }
    rep.add(bool_check("restriction to F matches the Weil differential", mism.empty(), mism));
    VectorField restricted(ch, 1);
    for (int k : pc.px) restricted.set(k, d.field.component(k).zero_out(zero));
    for (int k : pc.pfib) restricted.set(k, d.field.component(k).zero_out(zero));
    std::string sq;
    for (const auto& [k, c] : restricted.components()) {
        Poly dd = restricted.apply(c);
        if (!dd.is_zero() && sq.empty()) sq = "D^2(" + ch->var(k).name + ") = " + dd.str();
    }
    rep.add(bool_check("restricted D squares to zero", sq.empty(), sq));
    return rep;
}

}  // namespace dbr
