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

#include "dbracket/graded.hpp"

#include <algorithm>

namespace dbr {

std::shared_ptr<const Chart> Chart::make(std::vector<GradedVariable> vars) {
    if (static_cast<int>(vars.size()) > kMaxVars)
        throw ChartError("chart has more than " + std::to_string(kMaxVars) + " variables");
    auto chart = std::make_shared<Chart>();
    for (size_t k = 0; k < vars.size(); ++k) {
        auto& v = vars[k];
        if (v.parity != 0 && v.parity != 1) throw ChartError("parity must be 0 or 1: " + v.name);
        if (v.eps < 0 || v.delta < 0) throw ChartError("negative weight: " + v.name);
        if (v.name.empty() || v.name == "i") throw ChartError("reserved variable name '" + v.name + "'");
        v.index = static_cast<int>(k);
        if (!chart->by_name_.emplace(v.name, v.index).second)
            throw ChartError("duplicate variable " + v.name);
    }
    chart->vars_ = std::move(vars);
    return chart;
}

std::optional<int> Chart::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

int Chart::index_of(const std::string& name) const {
    auto idx = find(name);
    if (!idx) throw ChartError("unknown variable " + name);
    return *idx;
}

int product_sign(const Chart& chart, const Monomial& a, const Monomial& b) {
    // number of pairs (p in a, q in b), both odd, with p after q
    int n = chart.size();
    int swaps = 0;
    int odd_in_a_after = 0;
    for (int k = n - 1; k >= 0; --k) {
        if (chart.var(k).parity == 0) continue;
        if (a.e[k] && b.e[k]) return 0;
        if (b.e[k]) swaps += odd_in_a_after;
        if (a.e[k]) ++odd_in_a_after;
    }
    return (swaps & 1) ? -1 : 1;
}

int monomial_parity(const Chart& chart, const Monomial& m) {
    int p = 0;
    for (int k = 0; k < chart.size(); ++k)
        if (chart.var(k).parity) p ^= (m.e[k] & 1);
    return p;
}

Grading monomial_grading(const Chart& chart, const Monomial& m) {
    Grading g;
    for (int k = 0; k < chart.size(); ++k) {
        g.eps += m.e[k] * chart.var(k).eps;
        g.delta += m.e[k] * chart.var(k).delta;
    }
    return g;
}

Poly::Poly(ChartPtr chart, GaussRat c) : chart_(std::move(chart)) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

Poly Poly::variable(ChartPtr chart, int index) {
    if (index < 0 || index >= chart->size()) throw ChartError("variable index out of range");
    Poly p(chart);
    Monomial m;
    m.e[index] = 1;
    m.degree = 1;
    p.terms_.emplace(m, GaussRat(1));
    return p;
}

Poly Poly::variable(ChartPtr chart, const std::string& name) {
    int idx = chart->index_of(name);
    return variable(std::move(chart), idx);
}

Poly Poly::product_of(ChartPtr chart, const std::vector<int>& indices) {
    Poly p(chart, GaussRat(1));
    for (int k : indices) p = p * variable(chart, k);
    return p;
}

void Poly::check_same(const Poly& o) const {
    if (!chart_ || !o.chart_) throw ChartError("polynomial without chart");
    if (chart_ != o.chart_) throw ChartError("polynomials live on different charts");
}

void Poly::add_term(const Monomial& m, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly& Poly::operator*=(const GaussRat& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    const Chart& chart = *a.chart_;
    Poly r(a.chart_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            int s = product_sign(chart, ma, mb);
            if (s == 0) continue;
            Monomial m;
            for (int k = 0; k < chart.size(); ++k) {
                int e = ma.e[k] + mb.e[k];
                if (e > 255) throw std::overflow_error("exponent overflow");
                m.e[k] = static_cast<uint8_t>(e);
            }
            m.degree = static_cast<uint16_t>(ma.degree + mb.degree);
            GaussRat c = ca * cb;
            if (s < 0) c = -c;
            r.add_term(m, c);
        }
    }
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    a.check_same(b);
    return a.terms_ == b.terms_;
}

Poly Poly::pow(unsigned k) const {
    Poly r(chart_, GaussRat(1));
    for (unsigned j = 0; j < k; ++j) r = r * *this;
    return r;
}

Poly Poly::partial(int index) const {
    const Chart& chart = *chart_;
    if (index < 0 || index >= chart.size()) throw ChartError("variable index out of range");
    Poly r(chart_);
    bool odd = chart.var(index).parity == 1;
    for (const auto& [m, c] : terms_) {
        if (m.e[index] == 0) continue;
        Monomial d = m;
        d.e[index] = static_cast<uint8_t>(m.e[index] - 1);
        d.degree = static_cast<uint16_t>(m.degree - 1);
        GaussRat v = c;
        if (odd) {
            int before = 0;
            for (int k = 0; k < index; ++k)
                if (chart.var(k).parity == 1 && m.e[k]) ++before;
            if (before & 1) v = -v;
        } else {
            v *= GaussRat(static_cast<long>(m.e[index]));
        }
        r.add_term(d, v);
    }
    return r;
}

Poly Poly::partial(const std::string& name) const { return partial(chart_->index_of(name)); }

std::optional<int> Poly::parity() const {
    std::optional<int> p;
    for (const auto& [m, c] : terms_) {
        int q = monomial_parity(*chart_, m);
        if (p && *p != q) return std::nullopt;
        p = q;
    }
    return p;
}

std::array<Poly, 2> Poly::parity_parts() const {
    std::array<Poly, 2> parts{Poly(chart_), Poly(chart_)};
    for (const auto& [m, c] : terms_) parts[monomial_parity(*chart_, m)].terms_.emplace(m, c);
    return parts;
}

std::set<Grading> Poly::gradings() const {
    std::set<Grading> g;
    for (const auto& [m, c] : terms_) g.insert(monomial_grading(*chart_, m));
    return g;
}

Poly Poly::component(Grading g) const {
    Poly r(chart_);
    for (const auto& [m, c] : terms_)
        if (monomial_grading(*chart_, m) == g) r.terms_.emplace(m, c);
    return r;
}

GaussRat Poly::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? GaussRat() : it->second;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

bool Poly::uses_only(const std::vector<int>& allowed) const {
    std::array<bool, Chart::kMaxVars> ok{};
    for (int k : allowed) ok[k] = true;
    for (const auto& [m, c] : terms_)
        for (int k = 0; k < chart_->size(); ++k)
            if (m.e[k] && !ok[k]) return false;
    return true;
}

std::vector<int> Poly::used_variables() const {
    std::vector<int> out;
    for (int k = 0; k < chart_->size(); ++k)
        for (const auto& [m, c] : terms_)
            if (m.e[k]) {
                out.push_back(k);
                break;
            }
    return out;
}

Poly Poly::evaluate(const std::map<int, GaussRat>& values) const {
    for (const auto& [k, v] : values)
        if (chart_->var(k).parity != 0) throw ChartError("cannot evaluate odd variable " + chart_->var(k).name);
    Poly r(chart_);
    for (const auto& [m, c] : terms_) {
        Monomial d = m;
        GaussRat v = c;
        for (const auto& [k, val] : values) {
            for (int j = 0; j < m.e[k]; ++j) v *= val;
            d.degree = static_cast<uint16_t>(d.degree - m.e[k]);
            d.e[k] = 0;
        }
        r.add_term(d, v);
    }
    return r;
}

Poly Poly::zero_out(const std::vector<int>& indices) const {
    Poly r(chart_);
    for (const auto& [m, c] : terms_) {
        bool hit = false;
        for (int k : indices) hit = hit || m.e[k] != 0;
        if (!hit) r.terms_.emplace(m, c);
    }
    return r;
}

Poly Poly::transport(ChartPtr target, const std::vector<int>& index_map) const {
    const Chart& src = *chart_;
    if (static_cast<int>(index_map.size()) != src.size()) throw ChartError("transport map has wrong size");
    for (int k = 0; k < src.size(); ++k) {
        int t = index_map[k];
        if (t < 0) continue;
        if (t >= target->size()) throw ChartError("transport target out of range");
        if (target->var(t).parity != src.var(k).parity)
            throw ChartError("transport changes parity of " + src.var(k).name);
    }
    Poly r(target);
    for (const auto& [m, c] : terms_) {
        Monomial d;
        std::vector<int> odd_targets;
        for (int k = 0; k < src.size(); ++k) {
            if (!m.e[k]) continue;
            int t = index_map[k];
            if (t < 0) throw ChartError("variable " + src.var(k).name + " has no image");
            if (src.var(k).parity == 1) {
                if (d.e[t]) goto vanish;
                odd_targets.push_back(t);
            }
            d.e[t] = static_cast<uint8_t>(d.e[t] + m.e[k]);
        }
        {
            d.degree = m.degree;
            int inversions = 0;
            for (size_t p = 0; p < odd_targets.size(); ++p)
                for (size_t q = p + 1; q < odd_targets.size(); ++q)
                    if (odd_targets[p] > odd_targets[q]) ++inversions;
            r.add_term(d, (inversions & 1) ? -c : c);
        }
    vanish:;
    }
    return r;
}

Poly Poly::embed(ChartPtr target) const {
    std::vector<int> map(chart_->size(), -1);
    for (int k = 0; k < chart_->size(); ++k) {
        auto t = target->find(chart_->var(k).name);
        if (t) map[k] = *t;
    }
    return transport(std::move(target), map);
}

namespace {

std::string monomial_text(const Chart& chart, const Monomial& m) {
    std::string out;
    for (int k = 0; k < chart.size(); ++k) {
        if (!m.e[k]) continue;
        if (!out.empty()) out += "*";
        out += chart.var(k).name;
        if (m.e[k] > 1) out += "^" + std::to_string(m.e[k]);
    }
    return out;
}

std::string term_text(const Chart& chart, const Monomial& m, const GaussRat& c) {
    if (m.is_one()) return c.str();
    std::string mono = monomial_text(chart, m);
    if (c.is_real()) {
        if (c.re() == 1) return mono;
        if (c.re() == -1) return "-" + mono;
        return to_string(c.re()) + "*" + mono;
    }
    if (sgn(c.re()) == 0) return c.str() + "*" + mono;
    return "(" + c.str() + ")*" + mono;
}

}  // namespace

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string t = term_text(*chart_, m, c);
        if (first) {
            out = t;
            first = false;
        } else if (t[0] == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
    }
    return out;
}

}  // namespace dbr
