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

#include "dbracket/symplectic.hpp"

#include <set>

namespace dbr {

DarbouxChart::DarbouxChart(ChartPtr chart, std::vector<std::pair<int, int>> pairs, int bracket_parity)
    : chart_(std::move(chart)), pairs_(std::move(pairs)), parity_(bracket_parity) {
    int n = chart_->size();
    partner_.assign(n, -1);
    role_.assign(n, -1);
    for (auto [q, p] : pairs_) {
        if (q < 0 || q >= n || p < 0 || p >= n || q == p) throw ChartError("bad Darboux pair");
        if (role_[q] != -1 || role_[p] != -1)
            throw ChartError("variable in two Darboux pairs: " + chart_->var(role_[q] != -1 ? q : p).name);
        int want = (chart_->var(q).parity + parity_) & 1;
        if (chart_->var(p).parity != want)
            throw ChartError("momentum " + chart_->var(p).name + " has the wrong parity");
        role_[q] = 0;
        role_[p] = 1;
        partner_[q] = p;
        partner_[p] = q;
    }
    for (int k = 0; k < n; ++k)
        if (role_[k] == -1) throw ChartError("variable " + chart_->var(k).name + " is not paired");
}

std::vector<int> DarbouxChart::positions() const {
    std::vector<int> out;
    for (auto [q, p] : pairs_) out.push_back(q);
    return out;
}

std::vector<int> DarbouxChart::momenta() const {
    std::vector<int> out;
    for (auto [q, p] : pairs_) out.push_back(p);
    return out;
}

namespace {

inline int sgn_pow(int e) { return (e & 1) ? -1 : 1; }

// Coefficient {f, z^A} of d/dz^A in the hamiltonian field of f (f of parity fp).
Poly field_coefficient(const Poly& f, int fp, int var, const DarbouxChart& dc) {
    const Chart& ch = *dc.chart();
    int e = dc.bracket_parity();
    int other = dc.partner(var);
    int a = ch.var(var).parity;
    if (dc.is_momentum(var)) {
        // {f, p} = -(-1)^{(f+e)(p+e)} {p, q} d_q f
        Poly c = f.partial(other);
        if (sgn_pow((fp + e) * (a + e)) > 0) c = -c;
        return c;
    }
    // {f, q} = -(-1)^{(f+e)(q+e)} {q, p} d_p f, {q, p} = -(-1)^{(q+e)(p+e)}
    int p = ch.var(other).parity;
    Poly c = f.partial(other);
    if (sgn_pow((fp + e) * (a + e) + (a + e) * (p + e)) < 0) c = -c;
    return c;
}

}  // namespace

Poly canonical_bracket(const Poly& p, const Poly& q, const DarbouxChart& dc) {
    if (p.chart() != dc.chart() || q.chart() != dc.chart())
        throw ChartError("bracket arguments are not on the Darboux chart");
    Poly out(dc.chart());
    if (p.is_zero() || q.is_zero()) return out;
    auto parts = p.parity_parts();
    for (int fp = 0; fp < 2; ++fp) {
        const Poly& f = parts[fp];
        if (f.is_zero()) continue;
        for (auto [x, y] : dc.pairs()) {
            for (int var : {x, y}) {
                Poly dg = q.partial(var);
                if (dg.is_zero()) continue;
                Poly c = field_coefficient(f, fp, var, dc);
                if (c.is_zero()) continue;
                out += c * dg;
            }
        }
    }
    return out;
}

Poly VectorField::component(int var) const {
    auto it = comps_.find(var);
    return it == comps_.end() ? Poly(chart_) : it->second;
}

void VectorField::set(int var, Poly value) {
    if (value.chart() != chart_) throw ChartError("vector field component on another chart");
    if (value.is_zero()) comps_.erase(var);
    else comps_[var] = std::move(value);
}

Poly VectorField::apply(const Poly& f) const {
    if (f.chart() != chart_) throw ChartError("vector field applied across charts");
    Poly out(chart_);
    for (const auto& [var, c] : comps_) {
        Poly d = f.partial(var);
        if (!d.is_zero()) out += c * d;
    }
    return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    if (o.chart_ != chart_) throw ChartError("vector fields on different charts");
    for (const auto& [var, c] : o.comps_) set(var, component(var) + c);
    return *this;
}

VectorField operator-(VectorField a, const VectorField& b) {
    return a += GaussRat(-1) * b;
}

VectorField operator*(const GaussRat& c, VectorField v) {
    VectorField r(v.chart_, v.parity_);
    for (auto& [var, p] : v.comps_) r.set(var, p * c);
    return r;
}

bool operator==(const VectorField& a, const VectorField& b) {
    if (a.chart_ != b.chart_) throw ChartError("vector fields on different charts");
    return a.comps_ == b.comps_;
}

std::string VectorField::str() const {
    if (comps_.empty()) return "0";
    std::string out;
    for (const auto& [var, c] : comps_) {
        if (!out.empty()) out += "; ";
        out += chart_->var(var).name + ": " + c.str();
    }
    return out;
}

VectorField commutator(const VectorField& v, const VectorField& w) {
    if (v.chart() != w.chart()) throw ChartError("commutator across charts");
    VectorField r(v.chart(), (v.parity() + w.parity()) & 1);
    std::set<int> vars;
    for (const auto& [k, c] : v.components()) vars.insert(k);
    for (const auto& [k, c] : w.components()) vars.insert(k);
    bool minus = !((v.parity() * w.parity()) & 1);
    for (int k : vars) {
        Poly a = v.apply(w.component(k));
        Poly b = w.apply(v.component(k));
        r.set(k, minus ? a - b : a + b);
    }
    return r;
}

VectorField hamiltonian_field(const Poly& f, const DarbouxChart& dc) {
    if (f.chart() != dc.chart()) throw ChartError("hamiltonian not on the Darboux chart");
    if (f.is_zero()) return VectorField(dc.chart(), 0);
    auto par = f.parity();
    if (!par) throw ChartError("hamiltonian has mixed parity");
    VectorField v(dc.chart(), (*par + dc.bracket_parity()) & 1);
    for (int k = 0; k < dc.chart()->size(); ++k) v.set(k, field_coefficient(f, *par, k, dc));
    return v;
}

Poly hamiltonian_lift(const VectorField& v, const DarbouxChart& dc) {
    if (dc.bracket_parity() != 0) throw ChartError("hamiltonian lift needs an even chart");
    if (v.chart() != dc.chart()) throw ChartError("vector field not on the Darboux chart");
    auto pos = dc.positions();
    Poly h(dc.chart());
    for (const auto& [var, c] : v.components()) {
        if (!dc.is_position(var) || !c.uses_only(pos))
            throw ChartError("lifted field must live on the positions");
        h += c * Poly::variable(dc.chart(), dc.partner(var));
    }
    return h;
}

Poly legendre(const Poly& p, const DarbouxChart& source, const DarbouxChart& target) {
    if (p.chart() != source.chart()) throw ChartError("legendre input not on the source chart");
    if (source.pairs().size() != target.pairs().size() || source.bracket_parity() != 0 ||
        target.bracket_parity() != 0)
        throw ChartError("legendre charts do not match");
    const Chart& s = *source.chart();
    const Chart& t = *target.chart();
    std::vector<int> map(s.size(), -1);
    for (size_t k = 0; k < source.pairs().size(); ++k) {
        auto [sq, sp] = source.pairs()[k];
        auto [tq, tp] = target.pairs()[k];
        if (s.var(sq).parity != t.var(tq).parity) throw ChartError("legendre pair parity mismatch");
        if (s.var(sq).parity == 0) {
            if (s.var(sq).name != t.var(tq).name) throw ChartError("base mismatch: " + s.var(sq).name);
            map[sq] = tq;
            map[sp] = tp;
        } else {
            map[sq] = tp;
            map[sp] = tq;
        }
    }
    return p.transport(target.chart(), map);
}

Poly derived_bracket(const Poly& theta, const Poly& a, const Poly& b, const DarbouxChart& dc) {
    if (dc.bracket_parity() == 0) return canonical_bracket(canonical_bracket(theta, a, dc), b, dc);
    Poly out(dc.chart());
    auto parts = a.parity_parts();
    for (int ap = 0; ap < 2; ++ap) {
        if (parts[ap].is_zero()) continue;
        Poly r = canonical_bracket(canonical_bracket(theta, parts[ap], dc), b, dc);
        out += (ap == 1) ? r : -r;
    }
    return out;
}

VectorField de_rham(const PiTChart& pc) {
    VectorField d(pc.chart, 1);
    for (auto [x, xi] : pc.pairs) {
        if (pc.chart->var(xi).parity == pc.chart->var(x).parity)
            throw ChartError("velocity must have opposite parity");
        d.set(x, Poly::variable(pc.chart, xi));
    }
    return d;
}

VectorField interior(const PiTChart& pc, const VectorField& x) {
    if (x.chart() != pc.chart) throw ChartError("interior field on another chart");
    std::map<int, Poly> comps;
    for (const auto& [var, c] : x.components()) {
        bool found = false;
        for (auto [b, v] : pc.pairs)
            if (b == var) {
                comps.emplace(v, c);
                found = true;
            }
        if (!found) throw ChartError("interior field has a component off the base");
    }
    return interior_fiber(pc.chart, comps, x.parity());
}

VectorField interior_fiber(const ChartPtr& chart, const std::map<int, Poly>& comps, int parity) {
    VectorField r(chart, (parity + 1) & 1);
    for (const auto& [var, c] : comps) r.set(var, (parity & 1) ? -c : c);
    return r;
}

VectorField lie_derivative(const VectorField& d, const VectorField& ix) { return commutator(d, ix); }

}  // namespace dbr
