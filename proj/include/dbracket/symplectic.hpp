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

#include "dbracket/graded.hpp"

#include <map>
#include <utility>
#include <vector>

namespace dbr {

/// Variables of a chart split into conjugate (position, momentum) pairs.
/// Even bracket: momentum parity equals position parity. Odd bracket:
/// momentum parity is position parity + 1.
class DarbouxChart {
public:
    DarbouxChart() = default;
    DarbouxChart(ChartPtr chart, std::vector<std::pair<int, int>> pairs, int bracket_parity);

    const ChartPtr& chart() const { return chart_; }
    int bracket_parity() const { return parity_; }
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    bool is_position(int var) const { return role_.at(var) == 0; }
    bool is_momentum(int var) const { return role_.at(var) == 1; }
    int partner(int var) const { return partner_.at(var); }
    std::vector<int> positions() const;
    std::vector<int> momenta() const;

private:
    ChartPtr chart_;
    std::vector<std::pair<int, int>> pairs_;
    int parity_ = 0;
    std::vector<int> partner_, role_;
};

/// Canonical bracket with {momentum, position} = 1 on each pair, graded
/// skew-symmetric for the bracket parity and a derivation in each slot.
Poly canonical_bracket(const Poly& p, const Poly& q, const DarbouxChart& dc);

/// A derivation given by its values on the chart generators. Components
/// absent from the map are zero.
class VectorField {
public:
    VectorField() = default;
    VectorField(ChartPtr chart, int parity) : chart_(std::move(chart)), parity_(parity) {}

    const ChartPtr& chart() const { return chart_; }
    int parity() const { return parity_; }
    const std::map<int, Poly>& components() const { return comps_; }
    Poly component(int var) const;
    void set(int var, Poly value);

    Poly apply(const Poly& f) const;
    bool is_zero() const { return comps_.empty(); }

    VectorField& operator+=(const VectorField& o);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b);
    friend VectorField operator*(const GaussRat& c, VectorField v);
    friend bool operator==(const VectorField& a, const VectorField& b);

    /// Lines "var: value" for nonzero components, in declaration order.
    std::string str() const;

private:
    ChartPtr chart_;
    int parity_ = 0;
    std::map<int, Poly> comps_;
};

/// Graded commutator [V, W] = VW - (-1)^{|V||W|} WV.
VectorField commutator(const VectorField& v, const VectorField& w);

/// The field {f, -}; f must have a definite parity.
VectorField hamiltonian_field(const Poly& f, const DarbouxChart& dc);

/// h_v = sum v^a x*_a for a field on the positions of an even chart.
Poly hamiltonian_lift(const VectorField& v, const DarbouxChart& dc);

/// Pair-by-pair identification of two charts: even pairs map identically
/// (names must agree), odd-position pairs swap roles, so an odd fibre
/// coordinate goes to the dual momentum and its momentum to the dual fibre
/// coordinate.
Poly legendre(const Poly& p, const DarbouxChart& source, const DarbouxChart& target);

/// a o b for theta. Odd bracket: (-1)^{|a|+1} [[theta, a], b]. Even bracket:
/// {{theta, a}, b}, which is the same formula on odd a.
Poly derived_bracket(const Poly& theta, const Poly& a, const Poly& b, const DarbouxChart& dc);

/// A chart containing pairs (x^A, xi^A) with xi^A of opposite parity playing
/// the role of dx^A (or of a fibre coordinate of a parity-reversed bundle).
struct PiTChart {
    ChartPtr chart;
    std::vector<std::pair<int, int>> pairs;  // (base, velocity)
};

/// d = sum xi^A d/dx^A.
VectorField de_rham(const PiTChart& pc);
/// i_X with i_X(xi^A) = (-1)^{|X|} X^A. X is a field whose components sit on
/// the base variables of pc.
VectorField interior(const PiTChart& pc, const VectorField& x);
/// i_s for a fibre section given directly by its velocity components.
VectorField interior_fiber(const ChartPtr& chart, const std::map<int, Poly>& comps, int parity);
/// L_X = [d, i_X] for a given differential d.
VectorField lie_derivative(const VectorField& d, const VectorField& ix);

}  // namespace dbr
