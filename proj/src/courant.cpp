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

#include "dbracket/courant.hpp"

#include "dbracket/linalg.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace dbr {

namespace {

// Collects residuals over a family of tuples and keeps the first failure.
class Acc {
public:
    explicit Acc(std::string name) : name_(std::move(name)) {}

    void add(const Poly& r, const std::string& where) {
        ++tuples_;
        if (r.is_zero()) return;
        if (failures_++ == 0) first_ = "at " + where + ": " + r.str();
    }
    void add_bool(bool ok, const std::string& where, const std::string& what) {
        ++tuples_;
        if (ok) return;
        if (failures_++ == 0) first_ = "at " + where + ": " + what;
    }
    Check done() const {
        std::string detail = std::to_string(tuples_) + " tuples";
        if (failures_) detail += ", " + std::to_string(failures_) + " nonzero";
        return bool_check(name_, failures_ == 0, first_, detail);
    }

private:
    std::string name_;
    long tuples_ = 0, failures_ = 0;
    std::string first_;
};

std::string tuple_label(std::initializer_list<const CourantSection*> es) {
    std::string s = "(";
    bool first = true;
    for (auto* e : es) {
        if (!first) s += ", ";
        first = false;
        s += e->str();
    }
    return s + ")";
}

Poly field_residual(const VectorField& a, const VectorField& b) {
    // Components of a - b packed into one polynomial-valued summary: the
    // first nonzero component, or zero.
    VectorField d = a - b;
    if (d.is_zero()) return Poly(a.chart());
    return d.components().begin()->second;
}

bool is_standard(const CourantStructure& s) {
    const auto& sp = s.model().spec();
    if (sp.a.rank() != sp.a.dim()) return false;
    for (int a = 0; a < sp.a.rank(); ++a) {
        for (int i = 0; i < sp.a.dim(); ++i) {
            const Poly& v = sp.a.anchor[a][i];
            if (a == i ? !(v.is_constant() && v.constant_term().is_one()) : !v.is_zero()) return false;
            if (!sp.astar.anchor[a][i].is_zero()) return false;
        }
        for (int b = 0; b < sp.a.rank(); ++b)
            for (int c = 0; c < sp.a.rank(); ++c)
                if (!sp.a.structure[a][b][c].is_zero() || !sp.astar.structure[a][b][c].is_zero()) return false;
    }
    return s.model().theta().lpsi.is_zero();
}

PiTChart pi_tangent(const CourantStructure& s) {
    const auto& pc = s.model().charts();
    PiTChart t;
    t.chart = pc.a.pi;
    for (int i = 0; i < s.dim(); ++i) t.pairs.emplace_back(i, s.dim() + i);
    return t;
}

}  // namespace

CourantStructure::CourantStructure(DoubleModel model) : model_(std::move(model)) {
    for (auto g : model_.theta().theta.gradings())
        if (g.kappa() != 3) throw std::invalid_argument("theta must have total weight 3");
}

Poly CourantStructure::to_cot(const Poly& base_fn) const {
    if (!base_fn.chart()) return Poly(cot().chart());
    return base_fn.embed(cot().chart());
}

Poly CourantStructure::to_base(const Poly& cot_fn) const {
    if (!cot_fn.uses_only(model_.charts().a.x))
        throw std::invalid_argument("not a base function: " + cot_fn.str());
    return cot_fn.embed(base());
}

CourantSection CourantStructure::section(const Poly& embedded) const {
    if (embedded.chart() != cot().chart()) throw ChartError("section polynomial on another chart");
    const auto& pc = model_.charts().a;
    CourantSection e;
    e.embedded = embedded;
    int r = rank();
    e.vec.assign(r, Poly(base()));
    e.cov.assign(r, Poly(base()));
    Poly rest = embedded;
    for (int a = 0; a < r; ++a) {
        Poly cv = embedded.partial(pc.pfib[a]);
        Poly cc = embedded.partial(pc.fib[a]);
        if (!cv.uses_only(pc.x) || !cc.uses_only(pc.x))
            throw std::invalid_argument("not a section (weight 1, linear in the fibre): " + embedded.str());
        e.vec[a] = cv.embed(base());
        e.cov[a] = cc.embed(base());
        rest -= cv * Poly::variable(cot().chart(), pc.pfib[a]);
        rest -= cc * Poly::variable(cot().chart(), pc.fib[a]);
    }
    if (!rest.is_zero()) throw std::invalid_argument("not a section (weight 1, linear in the fibre): " + embedded.str());
    return e;
}

CourantSection CourantStructure::section(const std::vector<Poly>& vec, const std::vector<Poly>& cov) const {
    if (static_cast<int>(vec.size()) != rank() || static_cast<int>(cov.size()) != rank())
        throw std::invalid_argument("section components must have one entry per fibre direction");
    const auto& pc = model_.charts().a;
    Poly p(cot().chart());
    for (int a = 0; a < rank(); ++a) {
        if (vec[a].chart()) p += to_cot(vec[a]) * Poly::variable(cot().chart(), pc.pfib[a]);
        if (cov[a].chart()) p += to_cot(cov[a]) * Poly::variable(cot().chart(), pc.fib[a]);
    }
    return section(p);
}

CourantSection CourantStructure::basis_vector(int a) const {
    return section(Poly::variable(cot().chart(), model_.charts().a.pfib.at(a)));
}

CourantSection CourantStructure::basis_covector(int a) const {
    return section(Poly::variable(cot().chart(), model_.charts().a.fib.at(a)));
}

CourantSection CourantStructure::zero() const { return section(Poly(cot().chart())); }

CourantSection CourantStructure::add(const CourantSection& a, const CourantSection& b) const {
    return section(a.embedded + b.embedded);
}

CourantSection CourantStructure::sub(const CourantSection& a, const CourantSection& b) const {
    return section(a.embedded - b.embedded);
}

CourantSection CourantStructure::scale(const Poly& f, const CourantSection& e) const {
    return section(to_cot(f) * e.embedded);
}

CourantSection CourantStructure::scale(const GaussRat& c, const CourantSection& e) const {
    return section(e.embedded * c);
}

Poly CourantStructure::pairing(const CourantSection& a, const CourantSection& b) const {
    return to_base(canonical_bracket(a.embedded, b.embedded, cot()));
}

CourantSection CourantStructure::circ(const CourantSection& a, const CourantSection& b) const {
    const auto& th = model_.theta().theta;
    return section(canonical_bracket(canonical_bracket(th, a.embedded, cot()), b.embedded, cot()));
}

CourantSection CourantStructure::d(const Poly& f) const {
    Poly fc = to_cot(f);
    if (!fc.uses_only(model_.charts().a.x)) throw std::invalid_argument("D needs a base function: " + f.str());
    return section(canonical_bracket(model_.theta().theta, fc, cot()));
}

Poly CourantStructure::anchor_apply(const CourantSection& e, const Poly& f) const { return pairing(e, d(f)); }

VectorField CourantStructure::anchor_field(const CourantSection& e) const {
    VectorField v(base(), 0);
    for (int i = 0; i < dim(); ++i) v.set(i, anchor_apply(e, Poly::variable(base(), i)));
    return v;
}

CourantSection CourantStructure::skew(const CourantSection& a, const CourantSection& b) const {
    return section((circ(a, b).embedded - circ(b, a).embedded) * GaussRat(Rational(1, 2)));
}

CourantSection CourantStructure::jacobiator(const CourantSection& a, const CourantSection& b,
                                            const CourantSection& c) const {
    Poly j = skew(skew(a, b), c).embedded + skew(skew(b, c), a).embedded + skew(skew(c, a), b).embedded;
    return section(j);
}

Poly CourantStructure::t_tensor(const CourantSection& a, const CourantSection& b, const CourantSection& c) const {
    Poly t = pairing(skew(a, b), c) + pairing(skew(b, c), a) + pairing(skew(c, a), b);
    return t * GaussRat(Rational(1, 6));
}

CourantSection CourantStructure::k_expr(const CourantSection& a, const CourantSection& b,
                                        const CourantSection& c) const {
    return section(circ(circ(a, b), c).embedded + circ(b, circ(a, c)).embedded - circ(a, circ(b, c)).embedded);
}

std::vector<Poly> CourantStructure::coordinates() const {
    std::vector<Poly> out;
    for (int i = 0; i < dim(); ++i) out.push_back(Poly::variable(base(), i));
    return out;
}

std::vector<CourantSection> CourantStructure::generator_family() const {
    std::vector<CourantSection> basis;
    for (int a = 0; a < rank(); ++a) basis.push_back(basis_vector(a));
    for (int a = 0; a < rank(); ++a) basis.push_back(basis_covector(a));
    std::vector<CourantSection> out = basis;
    for (const auto& x : coordinates())
        for (const auto& e : basis) out.push_back(scale(x, e));
    return out;
}

Report verify_axioms(const CourantStructure& s, const std::vector<CourantSection>& fam) {
    const auto& dc = s.cot();
    const Poly& th = s.model().theta().theta;
    const size_t n = fam.size();
    // Theta_i = {theta, e_i}; P_ij = e_i o e_j; ThP_ij = {theta, P_ij}.
    std::vector<Poly> Th(n);
    for (size_t i = 0; i < n; ++i) Th[i] = canonical_bracket(th, fam[i].embedded, dc);
    std::vector<std::vector<Poly>> P(n, std::vector<Poly>(n)), ThP(n, std::vector<Poly>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            P[i][j] = canonical_bracket(Th[i], fam[j].embedded, dc);
            ThP[i][j] = canonical_bracket(th, P[i][j], dc);
        }

    Report rep;
    rep.title = "Courant axioms (non-skew operation)";
    Acc a1("(1) e1 o (e2 o e3) = (e1 o e2) o e3 + e2 o (e1 o e3)");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                Poly r = canonical_bracket(Th[i], P[j][k], dc) - canonical_bracket(ThP[i][j], fam[k].embedded, dc) -
                         canonical_bracket(Th[j], P[i][k], dc);
                a1.add(r, tuple_label({&fam[i], &fam[j], &fam[k]}));
            }
    rep.add(a1.done());

    std::vector<VectorField> rho(n);
    for (size_t i = 0; i < n; ++i) rho[i] = s.anchor_field(fam[i]);
    Acc a2("(2) rho(e1 o e2) = [rho(e1), rho(e2)]");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            a2.add(field_residual(s.anchor_field(s.section(P[i][j])), commutator(rho[i], rho[j])),
                   tuple_label({&fam[i], &fam[j]}));
    rep.add(a2.done());

    Acc a3("(3) e1 o (f e2) = f (e1 o e2) + (rho(e1) f) e2");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (const auto& f : s.coordinates()) {
                Poly fc = s.to_cot(f);
                Poly r = canonical_bracket(Th[i], fc * fam[j].embedded, dc) - fc * P[i][j] -
                         s.to_cot(rho[i].apply(f)) * fam[j].embedded;
                a3.add(r, tuple_label({&fam[i], &fam[j]}) + ", f = " + f.str());
            }
    rep.add(a3.done());

    Acc a4("(4) e o e = 1/2 D<e,e>");
    for (size_t i = 0; i < n; ++i) {
        Poly r = P[i][i] - s.d(s.pairing(fam[i], fam[i])).embedded * GaussRat(Rational(1, 2));
        a4.add(r, tuple_label({&fam[i]}));
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Poly r = P[i][j] + P[j][i] - s.d(s.pairing(fam[i], fam[j])).embedded;
            a4.add(r, tuple_label({&fam[i], &fam[j]}) + " (polarized)");
        }
    rep.add(a4.done());

    Acc a5("(5) rho(e) <h1,h2> = <e o h1, h2> + <h1, e o h2>");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = j; k < n; ++k) {
                Poly lhs = rho[i].apply(s.pairing(fam[j], fam[k]));
                Poly r = lhs - s.to_base(canonical_bracket(P[i][j], fam[k].embedded, dc)) -
                         s.to_base(canonical_bracket(fam[j].embedded, P[i][k], dc));
                a5.add(r, tuple_label({&fam[i], &fam[j], &fam[k]}));
            }
    rep.add(a5.done());
    return rep;
}

Report verify_skew_definition(const CourantStructure& s, const std::vector<CourantSection>& fam) {
    const size_t n = fam.size();
    std::vector<std::vector<CourantSection>> B(n), C(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            C[i].push_back(s.circ(fam[i], fam[j]));
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            B[i].push_back(s.section((C[i][j].embedded - C[j][i].embedded) * GaussRat(Rational(1, 2))));
    const GaussRat half(Rational(1, 2));

    Report rep;
    rep.title = "Courant axioms (skew bracket)";
    Acc link("e1 o e2 = [e1,e2] + 1/2 D<e1,e2>");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            link.add(C[i][j].embedded - B[i][j].embedded - s.d(s.pairing(fam[i], fam[j])).embedded * half,
                     tuple_label({&fam[i], &fam[j]}));
    rep.add(link.done());

    Acc s1("(1) J(e1,e2,e3) = D T(e1,e2,e3)");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                Poly J = s.skew(B[i][j], fam[k]).embedded + s.skew(B[j][k], fam[i]).embedded +
                         s.skew(B[k][i], fam[j]).embedded;
                Poly T = (s.pairing(B[i][j], fam[k]) + s.pairing(B[j][k], fam[i]) + s.pairing(B[k][i], fam[j])) *
                         GaussRat(Rational(1, 6));
                s1.add(J - s.d(T).embedded, tuple_label({&fam[i], &fam[j], &fam[k]}));
            }
    rep.add(s1.done());

    std::vector<VectorField> rho(n);
    for (size_t i = 0; i < n; ++i) rho[i] = s.anchor_field(fam[i]);
    Acc s2("(2) rho[e1,e2] = [rho e1, rho e2]");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            s2.add(field_residual(s.anchor_field(B[i][j]), commutator(rho[i], rho[j])), tuple_label({&fam[i], &fam[j]}));
    rep.add(s2.done());

    Acc s3("(3) [e1, f e2] = f[e1,e2] + (rho(e1) f) e2 - 1/2 <e1,e2> D f");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (const auto& f : s.coordinates()) {
                Poly fc = s.to_cot(f);
                Poly r = s.skew(fam[i], s.scale(f, fam[j])).embedded - fc * B[i][j].embedded -
                         s.to_cot(rho[i].apply(f)) * fam[j].embedded +
                         s.to_cot(s.pairing(fam[i], fam[j])) * s.d(f).embedded * half;
                s3.add(r, tuple_label({&fam[i], &fam[j]}) + ", f = " + f.str());
            }
    rep.add(s3.done());

    Acc s4("(4) <D f, D g> = 0");
    auto xs = s.coordinates();
    for (const auto& f : xs)
        for (const auto& g : xs) s4.add(s.pairing(s.d(f), s.d(g)), "(" + f.str() + ", " + g.str() + ")");
    rep.add(s4.done());

    Acc s5("(5) rho(e)<h1,h2> = <[e,h1] + 1/2 D<e,h1>, h2> + <h1, [e,h2] + 1/2 D<e,h2>>");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = j; k < n; ++k) {
                auto u = s.add(B[i][j], s.scale(half, s.d(s.pairing(fam[i], fam[j]))));
                auto w = s.add(B[i][k], s.scale(half, s.d(s.pairing(fam[i], fam[k]))));
                Poly r = rho[i].apply(s.pairing(fam[j], fam[k])) - s.pairing(u, fam[k]) - s.pairing(fam[j], w);
                s5.add(r, tuple_label({&fam[i], &fam[j], &fam[k]}));
            }
    rep.add(s5.done());
    return rep;
}

Report verify_lemmas(const CourantStructure& s, const std::vector<CourantSection>& fam) {
    const size_t n = fam.size();
    const GaussRat half(Rational(1, 2));
    Report rep;
    rep.title = "Courant lemmas";
    auto xs = s.coordinates();

    Acc i1("[e, D f] = 1/2 D<e, D f>");
    Acc i2a("e o D f = D<e, D f>");
    Acc i2b("D f o e = 0");
    for (const auto& e : fam)
        for (const auto& f : xs) {
            auto df = s.d(f);
            auto ep = s.d(s.pairing(e, df));
            std::string where = tuple_label({&e}) + ", f = " + f.str();
            i1.add(s.skew(e, df).embedded - ep.embedded * half, where);
            i2a.add(s.circ(e, df).embedded - ep.embedded, where);
            i2b.add(s.circ(df, e).embedded, where);
        }
    rep.add(i1.done());
    rep.add(i2a.done());
    rep.add(i2b.done());

    Acc ks("K(e1,e2,e3) is totally antisymmetric");
    static const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    static const int sgn[6] = {1, -1, -1, -1, 1, 1};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                const CourantSection* t[3] = {&fam[i], &fam[j], &fam[k]};
                Poly K0 = s.k_expr(*t[0], *t[1], *t[2]).embedded;
                for (int p = 1; p < 6; ++p) {
                    Poly Kp = s.k_expr(*t[perms[p][0]], *t[perms[p][1]], *t[perms[p][2]]).embedded;
                    ks.add(Kp - K0 * GaussRat(sgn[p]), tuple_label({t[0], t[1], t[2]}) + " perm " + std::to_string(p));
                }
            }
    rep.add(ks.done());

    Acc la1("T(e1,e2,D f) = 1/4 rho([e1,e2]) f");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (const auto& f : xs) {
                Poly r = s.t_tensor(fam[i], fam[j], s.d(f)) -
                         s.anchor_apply(s.skew(fam[i], fam[j]), f) * GaussRat(Rational(1, 4));
                la1.add(r, tuple_label({&fam[i], &fam[j]}) + ", f = " + f.str());
            }
    rep.add(la1.done());

    // Four-section identity on combinations of distinct generators.
    std::vector<std::vector<CourantSection>> B(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) B[i].push_back(s.skew(fam[i], fam[j]));
    auto J = [&](size_t a, size_t b, size_t c) {
        return s.section(s.skew(B[a][b], fam[c]).embedded + s.skew(B[b][c], fam[a]).embedded +
                         s.skew(B[c][a], fam[b]).embedded);
    };
    Acc la2("K + 2J = 0 on four sections");
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c)
                for (size_t d = c + 1; d < n; ++d) {
                    Poly JJ = s.pairing(J(a, b, c), fam[d]) - s.pairing(J(a, b, d), fam[c]) +
                              s.pairing(J(a, c, d), fam[b]) - s.pairing(J(b, c, d), fam[a]);
                    Poly KK = s.pairing(B[a][b], B[c][d]) - s.pairing(B[a][c], B[b][d]) + s.pairing(B[a][d], B[b][c]);
                    la2.add(KK + JJ * GaussRat(2), tuple_label({&fam[a], &fam[b], &fam[c], &fam[d]}));
                }
    rep.add(la2.done());
    return rep;
}

Report check_double_formula(const CourantStructure& s, const std::vector<CourantSection>& fam) {
    const auto& m = s.model();
    const auto& pc = m.charts();
    const ChartPtr& pa = pc.a.pi;
    const ChartPtr& ps = pc.astar.pi;
    const int r = s.rank(), nb = s.dim();
    VectorField dA = cartan_differential(m.spec().a, pa);
    VectorField dS = cartan_differential(m.spec().astar, ps);
    // On ΠA the fibre coordinates sit at nb..nb+r-1; same on ΠA*.
    auto as_form = [&](const std::vector<Poly>& comps, const ChartPtr& ch) {
        Poly p(ch);
        for (int a = 0; a < r; ++a)
            if (comps[a].chart()) p += comps[a].embed(ch) * Poly::variable(ch, nb + a);
        return p;
    };
    auto interior = [&](const std::vector<Poly>& comps, const ChartPtr& ch) {
        std::map<int, Poly> mp;
        for (int a = 0; a < r; ++a)
            if (comps[a].chart() && !comps[a].is_zero()) mp[nb + a] = comps[a].embed(ch);
        return interior_fiber(ch, mp, 0);
    };
    auto components = [&](const Poly& linear) {
        std::vector<Poly> out;
        std::vector<int> base_idx;
        for (int i = 0; i < nb; ++i) base_idx.push_back(i);
        for (int a = 0; a < r; ++a) {
            Poly c = linear.partial(nb + a);
            if (!c.uses_only(base_idx)) throw std::logic_error("componentwise formula left the linear forms");
            out.push_back(c.embed(s.base()));
        }
        return out;
    };

    Report rep;
    rep.title = "double formula";
    Acc acc("e1 o e2 against the componentwise formula");
    for (const auto& e1 : fam)
        for (const auto& e2 : fam) {
            const auto &X = e1.vec, &Y = e2.vec, &xi = e1.cov, &eta = e2.cov;
            // A part: [X,Y]_A + L_xi Y - i_eta d_{A*} X, read on ΠA*.
            VectorField iX = interior(X, pa), iY = interior(Y, pa);
            VectorField ixi = interior(xi, ps), ieta = interior(eta, ps);
            VectorField LX = lie_derivative(dA, iX), Lxi = lie_derivative(dS, ixi);
            VectorField brXY = commutator(LX, iY);    // i_{[X,Y]} on ΠA
            VectorField brxe = commutator(Lxi, ieta);  // i_{[xi,eta]} on ΠA*
            std::vector<Poly> vXY, vxe;
            for (int a = 0; a < r; ++a) {
                vXY.push_back(brXY.apply(Poly::variable(pa, nb + a)).embed(s.base()));
                vxe.push_back(brxe.apply(Poly::variable(ps, nb + a)).embed(s.base()));
            }
            Poly Ypoly = as_form(Y, ps), Xpoly = as_form(X, ps);
            Poly avec = as_form(vXY, ps) + Lxi.apply(Ypoly) - ieta.apply(dS.apply(Xpoly));
            Poly xipoly = as_form(xi, pa), etapoly = as_form(eta, pa);
            Poly acov = as_form(vxe, pa) + LX.apply(etapoly) - iY.apply(dA.apply(xipoly));
            auto expect = s.section(components(avec), components(acov));
            acc.add(s.circ(e1, e2).embedded - expect.embedded, tuple_label({&e1, &e2}));
        }
    rep.add(acc.done());
    return rep;
}

namespace {

// [X,Y] + L_X eta - i_Y d xi on ΠTM, plus sign * i_Y i_X phi.
CourantSection standard_formula(const CourantStructure& s, const CourantSection& e1, const CourantSection& e2,
                                const Poly& phi, int sign) {
    PiTChart pt = pi_tangent(s);
    const ChartPtr& pa = pt.chart;
    const int n = s.dim();
    VectorField X(pa, 0), Y(pa, 0), bX(s.base(), 0), bY(s.base(), 0);
    Poly xi(pa), eta(pa);
    for (int i = 0; i < n; ++i) {
        X.set(i, e1.vec[i].embed(pa));
        Y.set(i, e2.vec[i].embed(pa));
        bX.set(i, e1.vec[i]);
        bY.set(i, e2.vec[i]);
        xi += e1.cov[i].embed(pa) * Poly::variable(pa, n + i);
        eta += e2.cov[i].embed(pa) * Poly::variable(pa, n + i);
    }
    VectorField d = de_rham(pt);
    VectorField iX = interior(pt, X), iY = interior(pt, Y);
    VectorField br = commutator(bX, bY);
    Poly cov = lie_derivative(d, iX).apply(eta) - iY.apply(d.apply(xi));
    if (sign) cov += iY.apply(iX.apply(phi)) * GaussRat(sign);
    std::vector<Poly> vec, cv;
    for (int i = 0; i < n; ++i) {
        vec.push_back(br.component(i));
        cv.push_back(cov.partial(n + i).embed(s.base()));
    }
    return s.section(vec, cv);
}

}  // namespace

Report check_standard_formula(const CourantStructure& s, const std::vector<CourantSection>& fam) {
    if (!is_standard(s)) throw std::invalid_argument("standard formula needs A = TM with zero dual structure");
    Report rep;
    rep.title = "standard formula";
    Poly phi = s.model().from_cot_to_pi(s.model().theta().phi);
    Acc acc(phi.is_zero() ? "e1 o e2 = [X,Y] + L_X eta - i_Y d xi"
                          : "e1 o e2 = [X,Y] + L_X eta - i_Y d xi - i_Y i_X phi");
    for (const auto& e1 : fam)
        for (const auto& e2 : fam)
            acc.add(s.circ(e1, e2).embedded - standard_formula(s, e1, e2, phi, -1).embedded, tuple_label({&e1, &e2}));
    rep.add(acc.done());
    return rep;
}

Report check_t_tensor_lie(const CourantStructure& s) {
    if (s.dim() != 0) throw std::invalid_argument("Lie algebra check needs a point base");
    Report rep;
    rep.title = "structure tensor";
    std::vector<CourantSection> b;
    for (int a = 0; a < s.rank(); ++a) b.push_back(s.basis_vector(a));
    for (int a = 0; a < s.rank(); ++a) b.push_back(s.basis_covector(a));
    Acc acc("T(X,Y,Z) = 1/2 <[X,Y],Z>");
    bool nonzero = false;
    for (const auto& x : b)
        for (const auto& y : b)
            for (const auto& z : b) {
                Poly t = s.t_tensor(x, y, z);
                if (!t.is_zero()) nonzero = true;
                acc.add(t - s.pairing(s.skew(x, y), z) * GaussRat(Rational(1, 2)), tuple_label({&x, &y, &z}));
            }
    rep.add(acc.done());
    rep.add(recorded("T is nonzero", nonzero ? "yes" : "no"));
    return rep;
}

namespace {

std::vector<std::map<int, GaussRat>> sample_grid(int n) {
    static const long num[5] = {-2, -1, 1, 1, 3};
    static const long den[5] = {1, 1, 2, 1, 1};
    std::vector<std::map<int, GaussRat>> pts;
    long total = 1;
    for (int i = 0; i < n; ++i) total *= 5;
    auto point = [&](long code) {
        std::map<int, GaussRat> p;
        for (int i = 0; i < n; ++i) {
            int k = static_cast<int>(code % 5);
            code /= 5;
            p[i] = GaussRat(Rational(num[k], den[k]));
        }
        return p;
    };
    if (total <= 625) {
        for (long c = 0; c < total; ++c) pts.push_back(point(c));
    } else {
        std::mt19937_64 rng(1);
        std::uniform_int_distribution<long> u(0, total - 1);
        for (int k = 0; k < 256; ++k) pts.push_back(point(u(rng)));
    }
    return pts;
}

Vec column_at(const CourantSection& e, const std::map<int, GaussRat>& pt) {
    Vec v;
    for (const auto& p : e.vec) v.push_back(p.evaluate(pt).constant_term());
    for (const auto& p : e.cov) v.push_back(p.evaluate(pt).constant_term());
    return v;
}

bool constant_coefficients(const CourantSection& e) {
    for (const auto& p : e.vec)
        if (!p.is_constant()) return false;
    for (const auto& p : e.cov)
        if (!p.is_constant()) return false;
    return true;
}

}  // namespace

Report check_dirac(const CourantStructure& s, const std::vector<CourantSection>& span) {
    const int r = s.rank();
    const int k = static_cast<int>(span.size());
    if (k == 0) throw std::invalid_argument("empty spanning set");
    Report rep;
    rep.title = "Dirac subbundle";

    Acc iso("isotropic: <s_i, s_j> = 0");
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) iso.add(s.pairing(span[i], span[j]), tuple_label({&span[i], &span[j]}));
    rep.add(iso.done());

    bool constant = std::all_of(span.begin(), span.end(), constant_coefficients);
    std::vector<std::vector<CourantSection>> products(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) products[i].push_back(s.circ(span[i], span[j]));

    if (constant) {
        std::vector<Vec> cols;
        for (const auto& e : span) cols.push_back(column_at(e, {}));
        Matrix S = from_columns(cols, 2 * r);
        if (rank(S) < k) throw std::invalid_argument("rank deficiency: spanning sections are linearly dependent");
        rep.add(bool_check("maximal rank", k == r, "rank " + std::to_string(k) + ", expected " + std::to_string(r),
                           "rank " + std::to_string(k) + " (constant coefficients)"));
        Acc cl("closed: s_i o s_j in the span");
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                const auto& p = products[i][j];
                // Constant frame: solve monomial by monomial.
                std::set<Monomial, MonomialLess> monos;
                for (const auto& c : p.vec)
                    for (const auto& [mm, v] : c.terms()) monos.insert(mm);
                for (const auto& c : p.cov)
                    for (const auto& [mm, v] : c.terms()) monos.insert(mm);
                bool ok = true;
                for (const auto& mo : monos) {
                    Vec b;
                    auto coef = [&](const Poly& c) {
                        auto it = c.terms().find(mo);
                        return it == c.terms().end() ? GaussRat() : it->second;
                    };
                    for (const auto& c : p.vec) b.push_back(coef(c));
                    for (const auto& c : p.cov) b.push_back(coef(c));
                    if (!solve(S, b)) ok = false;
                }
                cl.add_bool(ok, tuple_label({&span[i], &span[j]}), "not in the span: " + p.str());
            }
        rep.add(cl.done());
        return rep;
    }

    auto pts = sample_grid(s.dim());
    int generic = 0, skipped = 0;
    Acc cl("closed: s_i o s_j in the span");
    for (const auto& pt : pts) {
        std::vector<Vec> cols;
        for (const auto& e : span) cols.push_back(column_at(e, pt));
        Matrix S = from_columns(cols, 2 * r);
        if (rank(S) < k) {
            ++skipped;
            continue;
        }
        ++generic;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                bool ok = solve(S, column_at(products[i][j], pt)).has_value();
                cl.add_bool(ok, tuple_label({&span[i], &span[j]}), "not in the span: " + products[i][j].str());
            }
    }
    if (generic == 0) throw std::invalid_argument("rank deficiency: spanning sections are dependent at every sample point");
    rep.add(bool_check("maximal rank", k == r, "rank " + std::to_string(k) + ", expected " + std::to_string(r),
                       "rank " + std::to_string(k) + " at " + std::to_string(generic) + " sample points"));
    rep.add(cl.done());
    if (skipped) rep.notes.push_back(std::to_string(skipped) + " sample points with lower rank skipped");
    return rep;
}

ProtoSpec standard_spec(const ChartPtr& base, const Poly& phi) {
    std::vector<std::string> fib, dual;
    for (int k = 1; k <= base->size(); ++k) {
        fib.push_back("xi" + std::to_string(k));
        dual.push_back("th" + std::to_string(k));
    }
    ProtoSpec p;
    p.a = AlgebroidSpec::zero(base, fib);
    for (int a = 0; a < base->size(); ++a) p.a.anchor[a][a] = Poly(base, GaussRat(1));
    p.astar = AlgebroidSpec::zero(base, dual);
    p.phi = phi;
    return p;
}

Poly de_rham_pi(const CourantStructure& s, const Poly& form) {
    if (!is_standard(s)) throw std::invalid_argument("de Rham differential needs the standard structure");
    PiTChart pt = pi_tangent(s);
    return de_rham(pt).apply(form.embed(pt.chart));
}

Poly euler_primitive(const CourantStructure& s, const Poly& form) {
    if (!is_standard(s)) throw std::invalid_argument("homotopy needs the standard structure");
    PiTChart pt = pi_tangent(s);
    Poly f = form.embed(pt.chart);
    const int n = s.dim();
    VectorField E(pt.chart, 0);
    for (int i = 0; i < n; ++i) E.set(i, Poly::variable(pt.chart, i));
    VectorField iE = interior(pt, E);
    Poly out(pt.chart);
    for (const auto& [mo, c] : f.terms()) {
        int deg = 0;
        for (int i = 0; i < 2 * n; ++i) deg += mo[i];
        if (deg == 0) throw std::invalid_argument("constant term has no Euler primitive");
        Poly t(pt.chart);
        t.add_term(mo, c);
        out += iE.apply(t) * GaussRat(Rational(1, deg));
    }
    return out;
}

CourantSection TwistResult::splitting(const CourantSection& e) const {
    const auto& dc = structure.cot();
    Poly emb = e.embedded.chart() == dc.chart() ? e.embedded : e.embedded.embed(dc.chart());
    Poly w = structure.model().to_cot(omega);
    return structure.section(emb - canonical_bracket(w, emb, dc));
}

TwistResult twist_exact(const ChartPtr& base, const Poly& phi_in, const std::optional<Poly>& omega_in) {
    CourantStructure std0(DoubleModel(standard_spec(base)));
    const ChartPtr& pa = std0.model().charts().a.pi;
    Poly phi = phi_in.chart() ? phi_in.embed(pa) : Poly(pa);
    for (auto g : phi.gradings())
        if (g != Grading{0, 3}) throw std::invalid_argument("phi must be a 3-form (degree 3 in the odd coordinates)");
    Poly omega = omega_in && omega_in->chart() ? omega_in->embed(pa) : Poly(pa);
    for (auto g : omega.gradings())
        if (g != Grading{0, 2}) throw std::invalid_argument("omega must be a 2-form (degree 2 in the odd coordinates)");
    Poly phi2 = phi + de_rham_pi(std0, omega);

    CourantStructure s(DoubleModel(standard_spec(base, phi2)));
    const ChartPtr& pa2 = s.model().charts().a.pi;
    Poly phi2p = phi2.embed(pa2);
    TwistResult out{s, phi2p, omega.embed(pa2), Report{}};
    Report& rep = out.report;
    rep.title = "twisted standard structure";
    auto fam = s.generator_family();

    Poly dphi = de_rham_pi(s, phi2p);
    rep.add(residual_check("d phi = 0", dphi, dphi.is_zero() ? "closed" : "not closed"));
    rep.append(verify_axioms(s, fam));
    rep.append(check_standard_formula(s, fam));

    if (!dphi.is_zero()) {
        // Leibniz-Jacobi defect on coordinate fields against d phi(X,Y,Z,.).
        PiTChart pt = pi_tangent(s);
        Acc acc("axiom 1 defect on (X,Y,Z) = -(d phi)(X,Y,Z,.)");
        bool seen = false;
        const int n = s.dim();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    auto X = s.basis_vector(i), Y = s.basis_vector(j), Z = s.basis_vector(k);
                    Poly defect = s.circ(X, s.circ(Y, Z)).embedded - s.circ(s.circ(X, Y), Z).embedded -
                                  s.circ(Y, s.circ(X, Z)).embedded;
                    if (!defect.is_zero()) seen = true;
                    Poly c = dphi.embed(pt.chart);
                    for (int v : {i, j, k}) c = c.partial(n + v);
                    Poly expect(pt.chart);
                    for (int a = 0; a < n; ++a)
                        expect += c.partial(n + a) * Poly::variable(pt.chart, n + a);
                    acc.add(defect + s.model().to_cot(expect), tuple_label({&X, &Y, &Z}));
                }
        rep.add(acc.done());
        rep.add(bool_check("defect nonzero on some coordinate triple", seen));
    }

    // Gauge: phi' - phi is exact, and e -> e - {omega, e} intertwines the two
    // operations.
    Poly delta = phi2p - phi.embed(pa2);
    Poly prim = delta.is_zero() ? Poly(pa2) : euler_primitive(s, delta);
    Poly ex = delta - de_rham_pi(s, prim);
    rep.add(residual_check("phi' - phi exact", ex, "primitive " + (prim.is_zero() ? std::string("0") : prim.str())));
    if (!omega.is_zero()) {
        CourantStructure s0(DoubleModel(standard_spec(base, phi)));
        auto fam0 = s0.generator_family();
        Acc nat("splitting map: F(e1 o e2) = F(e1) o' F(e2)");
        Acc pr("splitting map preserves the pairing");
        Acc an("splitting map: F(D f) = D' f");
        for (const auto& e1 : fam0) {
            auto f1 = out.splitting(e1);
            for (const auto& x : s0.coordinates())
                an.add(out.splitting(s0.d(x)).embedded - s.d(x.embed(s.base())).embedded, tuple_label({&e1}));
            for (const auto& e2 : fam0) {
                auto f2 = out.splitting(e2);
                nat.add(out.splitting(s0.circ(e1, e2)).embedded - s.circ(f1, f2).embedded, tuple_label({&e1, &e2}));
                pr.add(s0.pairing(e1, e2).embed(s.base()) - s.pairing(f1, f2), tuple_label({&e1, &e2}));
            }
        }
        rep.add(nat.done());
        rep.add(pr.done());
        rep.add(an.done());
    }
    return out;
}

}  // namespace dbr
