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

#include "dbracket/check.hpp"
#include "dbracket/graded.hpp"
#include "dbracket/symplectic.hpp"

#include <string>
#include <vector>

namespace dbr {

/// Anchor A^i_a and structure functions C^c_ab of one vector bundle over a
/// polynomial base. Entries are polynomials on the base chart.
struct AlgebroidSpec {
    ChartPtr base;
    std::vector<std::string> fiber;  // names of the odd fibre coordinates on ΠE
    std::vector<std::vector<Poly>> anchor;                  // [a][i]
    std::vector<std::vector<std::vector<Poly>>> structure;  // [a][b][c] = C^c_ab

    int rank() const { return static_cast<int>(fiber.size()); }
    int dim() const { return base->size(); }

    static AlgebroidSpec zero(ChartPtr base, std::vector<std::string> fiber);
    /// Throws std::invalid_argument on shape, antisymmetry or base-only violations.
    void validate() const;
};

/// Charts attached to one side E of the pair: ΠE and T*ΠE, with index
/// lists into the T*ΠE chart.
struct SideCharts {
    ChartPtr pi;
    DarbouxChart cot;
    std::vector<int> x, fib, px, pfib;
};

/// Charts for A and A* over a common base. Momenta are named p_<name>.
/// On T*ΠA the weights are x (0,0), xi (0,1), p_x (1,1), p_xi (1,0); on T*ΠA*
/// they are chosen so that the Legendre map preserves them.
struct PairCharts {
    ChartPtr base;
    SideCharts a, astar;
};

PairCharts make_pair_charts(const std::vector<std::string>& base, const std::vector<std::string>& fiber,
                            const std::vector<std::string>& dual_fiber);

struct ProtoSpec {
    AlgebroidSpec a, astar;
    Poly phi;  // on the ΠA chart (sections of ∧³A*)
    Poly psi;  // on the ΠA* chart (sections of ∧³A)
};

/// theta = mu + L*gamma + pi*phi + L*pi*psi on T*ΠA, components kept.
struct ThetaHamiltonian {
    Poly theta, mu, lgamma, phi, lpsi;
};

class DoubleModel {
public:
    /// Validates both sides and the cubic terms.
    explicit DoubleModel(ProtoSpec spec);

    const ProtoSpec& spec() const { return spec_; }
    const PairCharts& charts() const { return charts_; }
    const DarbouxChart& cot() const { return charts_.a.cot; }
    const ThetaHamiltonian& theta() const { return theta_; }
    /// gamma = mu of A* on T*ΠA*.
    const Poly& gamma() const { return gamma_; }

    Poly to_cot(const Poly& p) const;           // base or ΠA polynomial -> T*ΠA
    Poly from_cot_to_pi(const Poly& p) const;   // momentum-free T*ΠA polynomial -> ΠA

private:
    ProtoSpec spec_;
    PairCharts charts_;
    ThetaHamiltonian theta_;
    Poly gamma_;
};

/// mu = xi^a A^i_a p_x_i - 1/2 C^c_ab xi^a xi^b p_xi_c on the side's cotangent chart.
Poly build_mu(const AlgebroidSpec& spec, const SideCharts& side);
/// L*gamma written directly on the A side from the A* data.
Poly build_gamma_star(const AlgebroidSpec& astar, const SideCharts& a);
/// d_E on ΠE: d x^i = xi^a A^i_a, d xi^c = -1/2 C^c_ab xi^a xi^b.
VectorField cartan_differential(const AlgebroidSpec& spec, const ChartPtr& pi);

/// {mu, mu} residual plus the Cartan square as a second route.
Report check_lie_algebroid(const AlgebroidSpec& spec);
/// {mu,mu}, {gamma,gamma}, {mu,L*gamma}; phi and psi are ignored.
Report check_bialgebroid(const DoubleModel& model);
/// The five bigraded components of {theta, theta}.
Report check_proto(const DoubleModel& model);
/// d_A as a derivation of the A* Schouten bracket on generator pairs.
Report check_derivation_property(const DoubleModel& model);

struct DoubleDifferential {
    VectorField field;
    bool warning = false;  // {theta, theta} != 0
};
DoubleDifferential double_differential(const DoubleModel& model);
/// D(D(z)) for every generator of T*ΠA.
Report check_double_square(const DoubleModel& model);

/// (-1)^{|xi|+1} {{L*gamma, pi*xi}, pi*eta}, returned on the ΠA chart.
Poly schouten_bracket(const DoubleModel& model, const Poly& xi, const Poly& eta);

/// The four generator identities of the BRST differential for an action
/// algebroid with zero dual structure.
Report check_brst(const DoubleModel& model);

/// Restriction of D to u = xi = 0 (the fibre over the origin), compared with
/// C^c_ab u*^a th*^b d/du*^c + (u*^c - 1/2 C^c_ab th*^a th*^b) d/dth*^c where
/// the Lie algebra constants are read from the dual structure functions.
Report check_weil_restriction(const DoubleModel& model);

}  // namespace dbr
