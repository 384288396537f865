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

#include "dbracket/shla.hpp"

#include <numeric>
#include <stdexcept>

namespace dbr {

std::string ShlaElement::str() const {
    static const char* kind[3] = {"section", "function", "constant"};
    if (degree < 0 || degree > 2) return "0";
    return std::string(kind[degree]) + " " + (value.is_zero() ? std::string("0") : value.str());
}

ShlaElement ShlaMaps::zero(int degree) const {
    if (degree == 0) return {0, Poly(s_.cot().chart())};
    return {degree, Poly(s_.base())};
}

ShlaElement ShlaMaps::l(int k, const std::vector<ShlaElement>& a) const {
    if (static_cast<int>(a.size()) != k) throw std::invalid_argument("l_k needs k arguments");
    int deg = k - 2;
    for (const auto& x : a) deg += x.degree;
    if (deg < 0 || deg > 2) return zero(deg);
    const GaussRat half(Rational(1, 2));
    if (k == 1) {
        if (a[0].degree == 1) return {0, s_.d(a[0].value).embedded};
        if (a[0].degree == 2) return {1, a[0].value};
        return zero(deg);
    }
    if (k == 2) {
        if (a[0].degree == 0 && a[1].degree == 0)
            return {0, s_.skew(s_.section(a[0].value), s_.section(a[1].value)).embedded};
        if (a[0].degree == 0 && a[1].degree == 1) return {1, s_.anchor_apply(s_.section(a[0].value), a[1].value) * half};
        if (a[0].degree == 1 && a[1].degree == 0)
            return {1, -(s_.anchor_apply(s_.section(a[1].value), a[0].value) * half)};
        return zero(deg);
    }
    if (k == 3 && a[0].degree == 0 && a[1].degree == 0 && a[2].degree == 0)
        return {1, -s_.t_tensor(s_.section(a[0].value), s_.section(a[1].value), s_.section(a[2].value))};
    return zero(deg);
}

ShlaElement ShlaMaps::identity(const std::vector<ShlaElement>& xs) const {
    const int n = static_cast<int>(xs.size());
    int deg = n - 3;
    for (const auto& x : xs) deg += x.degree;
    ShlaElement out = zero(deg);
    if (deg < 0 || deg > 2) return out;
    for (int i = 1; i <= n; ++i) {
        int j = n + 1 - i;
        int outer = ((i * (j - 1)) % 2) ? -1 : 1;
        // (i, n-i)-unshuffles as subsets of size i, lowest positions first.
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (__builtin_popcount(mask) != i) continue;
            std::vector<int> order;
            for (int p = 0; p < n; ++p)
                if (mask & (1u << p)) order.push_back(p);
            for (int p = 0; p < n; ++p)
                if (!(mask & (1u << p))) order.push_back(p);
            // Each inverted pair contributes -(-1)^{d_p d_q}.
            int sign = outer;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    if (order[a] > order[b]) {
                        int dp = xs[order[a]].degree, dq = xs[order[b]].degree;
                        if ((dp * dq) % 2 == 0) sign = -sign;
                    }
            std::vector<ShlaElement> inner(order.begin(), order.begin() + i);
            for (int t = 0; t < i; ++t) inner[t] = xs[order[t]];
            ShlaElement li = l(i, inner);
            if (li.degree < 0 || li.degree > 2 || li.value.is_zero()) continue;
            std::vector<ShlaElement> rest{li};
            for (int t = i; t < n; ++t) rest.push_back(xs[order[t]]);
            ShlaElement lj = l(j, rest);
            if (lj.value.is_zero()) continue;
            out.value += lj.value * GaussRat(sign);
        }
    }
    return out;
}

std::vector<ShlaElement> shla_generators(const CourantStructure& s) {
    ShlaMaps m(s);
    std::vector<ShlaElement> g;
    for (const auto& e : s.generator_family()) g.push_back(m.section(e));
    g.push_back(m.function(Poly(s.base(), GaussRat(1))));
    for (const auto& x : s.coordinates()) g.push_back(m.function(x));
    for (const auto& x : s.coordinates()) g.push_back(m.function(x * x));
    g.push_back(m.constant(GaussRat(1)));
    return g;
}

namespace {

void multisets(int k, int n, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        multisets(k, n, i, cur, out);
        cur.pop_back();
    }
}

}  // namespace

Report shla_check(const CourantStructure& s, int max_n, const std::vector<ShlaElement>& gens) {
    if (max_n < 1 || max_n > 4) throw std::invalid_argument("n must be between 1 and 4");
    ShlaMaps m(s);
    Report rep;
    rep.title = "homotopy Lie identities";
    for (int n = 1; n <= max_n; ++n) {
        std::vector<std::vector<int>> tuples;
        std::vector<int> cur;
        multisets(n, static_cast<int>(gens.size()), 0, cur, tuples);
        long fails = 0, sub = 0, sub_fails = 0;
        std::string first, sub_first;
        bool sub_kind = n == 3 || n == 4;
        for (const auto& t : tuples) {
            std::vector<ShlaElement> xs;
            for (int i : t) xs.push_back(gens[i]);
            ShlaElement r = m.identity(xs);
            std::string where;
            for (size_t i = 0; i < xs.size(); ++i) where += (i ? ", " : "") + xs[i].str();
            bool bad = !r.value.is_zero();
            std::string msg = bad ? "at (" + where + "): " + r.value.str() : std::string();
            if (bad && fails++ == 0) first = msg;
            bool is_sub = false;
            if (n == 3) {
                int secs = 0, funs = 0;
                for (const auto& x : xs) {
                    secs += x.degree == 0;
                    funs += x.degree == 1;
                }
                is_sub = secs == 2 && funs == 1;
            } else if (n == 4) {
                is_sub = true;
                for (const auto& x : xs) is_sub = is_sub && x.degree == 0;
            }
            if (sub_kind && is_sub) {
                ++sub;
                if (bad && sub_fails++ == 0) sub_first = msg;
            }
        }
        std::string detail = std::to_string(tuples.size()) + " tuples";
        rep.add(bool_check("n = " + std::to_string(n), fails == 0, first, detail));
        if (n == 3)
            rep.add(bool_check("(l2 l2 + l3 l1)(e1, e2, f) = 0", sub_fails == 0, sub_first, std::to_string(sub) + " tuples"));
        if (n == 4)
            rep.add(bool_check("(l3 l2 - l2 l3)(e1, e2, e3, e4) = 0", sub_fails == 0, sub_first,
                               std::to_string(sub) + " tuples"));
    }
    if (max_n >= 4) {
        auto lem = verify_lemmas(s, s.generator_family());
        for (const auto& c : lem.checks)
            if (c.name.rfind("K + 2J", 0) == 0) rep.add(c);
    }
    return rep;
}

}  // namespace dbr
