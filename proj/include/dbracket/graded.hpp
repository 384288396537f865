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

#pragma once

#include "dbracket/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace dbr {

class ChartError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GradedVariable {
    std::string name;
    int parity = 0;  // 0 even, 1 odd
    int eps = 0;     // momentum degree
    int delta = 0;
    int index = 0;   // declaration index, set by the chart

    int kappa() const { return eps + delta; }
};

/// Ordered variable table. Polynomials hold a shared pointer to their chart
/// and only combine with polynomials on the same chart object.
class Chart {
public:
    static constexpr int kMaxVars = 32;

    static std::shared_ptr<const Chart> make(std::vector<GradedVariable> vars);

    int size() const { return static_cast<int>(vars_.size()); }
    const GradedVariable& var(int i) const { return vars_.at(i); }
    const std::vector<GradedVariable>& vars() const { return vars_; }
    std::optional<int> find(const std::string& name) const;
    int index_of(const std::string& name) const;  // throws ChartError

private:
    std::vector<GradedVariable> vars_;
    std::unordered_map<std::string, int> by_name_;
};

using ChartPtr = std::shared_ptr<const Chart>;

/// Exponent vector indexed by declaration index; odd exponents are 0 or 1.
/// The monomial denotes the product of its factors taken in declaration
/// order, which is the normal order for the odd ones.
struct Monomial {
    std::array<uint8_t, Chart::kMaxVars> e{};
    uint16_t degree = 0;

    int operator[](int i) const { return e[i]; }
    bool is_one() const { return degree == 0; }
};

/// Graded-lexicographic: total degree first, then larger exponent on the
/// earlier variable first.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.degree != b.degree) return a.degree < b.degree;
        for (int i = 0; i < Chart::kMaxVars; ++i)
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
        return false;
    }
};

inline bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree == b.degree && a.e == b.e;
}

/// Sign of reordering odd factors of a*b into normal order, or 0 if they
/// share an odd variable.
int product_sign(const Chart& chart, const Monomial& a, const Monomial& b);

struct Grading {
    int eps = 0;
    int delta = 0;
    int kappa() const { return eps + delta; }
    auto operator<=>(const Grading&) const = default;
};

class Poly {
public:
    using Terms = std::map<Monomial, GaussRat, MonomialLess>;

    Poly() = default;
    explicit Poly(ChartPtr chart) : chart_(std::move(chart)) {}
    Poly(ChartPtr chart, GaussRat c);

    static Poly variable(ChartPtr chart, int index);
    static Poly variable(ChartPtr chart, const std::string& name);
    /// Product of the named variables in the given order, with its sign.
    static Poly product_of(ChartPtr chart, const std::vector<int>& indices);

    const ChartPtr& chart() const { return chart_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    /// Adds c * m (m given in normal order).
    void add_term(const Monomial& m, const GaussRat& c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const GaussRat& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const GaussRat& c) { return a *= c; }
    friend Poly operator*(const GaussRat& c, Poly a) { return a *= c; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;

    /// Exact equality; throws ChartError across charts.
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(unsigned k) const;

    /// Left derivative.
    Poly partial(int index) const;
    Poly partial(const std::string& name) const;

    /// Parity of every monomial, or nullopt for mixed/zero polynomials.
    std::optional<int> parity() const;
    /// Splits by parity (index 0 even, index 1 odd).
    std::array<Poly, 2> parity_parts() const;

    std::set<Grading> gradings() const;
    /// Component of the given (eps, delta).
    Poly component(Grading g) const;

    /// Sum of the coefficients of the constant monomial.
    GaussRat constant_term() const;
    bool is_constant() const;
    /// True if only the listed variables occur.
    bool uses_only(const std::vector<int>& allowed) const;
    std::vector<int> used_variables() const;

    /// Substitutes values for even variables (others untouched).
    Poly evaluate(const std::map<int, GaussRat>& values) const;
    /// Sets the listed variables to zero.
    Poly zero_out(const std::vector<int>& indices) const;

    /// Moves the polynomial to another chart by a variable map with matching
    /// parities (source index -> target index). Odd factors are re-sorted in
    /// the target order with the Koszul sign.
    Poly transport(ChartPtr target, const std::vector<int>& index_map) const;
    /// Transports by coincident names; unknown names throw ChartError.
    Poly embed(ChartPtr target) const;

    std::string str() const;

private:
    void check_same(const Poly& o) const;

    ChartPtr chart_;
    Terms terms_;
};

/// Parity of a monomial.
int monomial_parity(const Chart& chart, const Monomial& m);
Grading monomial_grading(const Chart& chart, const Monomial& m);

}  // namespace dbr
