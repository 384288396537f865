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

#include "dbracket/algebroid.hpp"
#include "dbracket/check.hpp"

#include <optional>
#include <vector>

namespace dbr {

/// X + xi in Γ(A ⊕ A*), stored as its degree-one image
/// X^a p_xi_a + xi_a xi^a on T*ΠA. Component polynomials live on the base chart.
struct CourantSection {
    Poly embedded;
    std::vector<Poly> vec;  // X^a
    std::vector<Poly> cov;  // xi_a

    std::string str() const { return embedded.str(); }
};

class CourantStructure {
public:
    explicit CourantStructure(DoubleModel model);

    const DoubleModel& model() const { return model_; }
    const DarbouxChart& cot() const { return model_.cot(); }
    const ChartPtr& base() const { return model_.charts().base; }
    int rank() const { return model_.spec().a.rank(); }
    int dim() const { return model_.spec().a.dim(); }

    /// Decomposes a degree-one polynomial; throws std::invalid_argument otherwise.
    CourantSection section(const Poly& embedded) const;
    CourantSection section(const std::vector<Poly>& vec, const std::vector<Poly>& cov) const;
    CourantSection basis_vector(int a) const;
    CourantSection basis_covector(int a) const;
    CourantSection zero() const;

    CourantSection add(const CourantSection& a, const CourantSection& b) const;
    CourantSection sub(const CourantSection& a, const CourantSection& b) const;
    CourantSection scale(const Poly& f, const CourantSection& e) const;  // f base
    CourantSection scale(const GaussRat& c, const CourantSection& e) const;

    Poly pairing(const CourantSection& a, const CourantSection& b) const;  // base
    CourantSection circ(const CourantSection& a, const CourantSection& b) const;
    CourantSection d(const Poly& f) const;                                   // f base
    Poly anchor_apply(const CourantSection& e, const Poly& f) const;
    /// rho(e) as a field on the base chart.
    VectorField anchor_field(const CourantSection& e) const;

    CourantSection skew(const CourantSection& a, const CourantSection& b) const;
    CourantSection jacobiator(const CourantSection& a, const CourantSection& b, const CourantSection& c) const;
    Poly t_tensor(const CourantSection& a, const CourantSection& b, const CourantSection& c) const;
    /// (e1 o e2) o e3 + e2 o (e1 o e3) - e1 o (e2 o e3)
    CourantSection k_expr(const CourantSection& a, const CourantSection& b, const CourantSection& c) const;

    /// Basis sections followed by the basis sections scaled by each coordinate.
    std::vector<CourantSection> generator_family() const;
    std::vector<Poly> coordinates() const;  // on the base chart

    Poly to_cot(const Poly& base_fn) const;
    Poly to_base(const Poly& cot_fn) const;

private:
    DoubleModel model_;
};

Report verify_axioms(const CourantStructure& s, const std::vector<CourantSection>& family);
/// The skew-bracket axiom system and the identities linking the two systems.
Report verify_skew_definition(const CourantStructure& s, const std::vector<CourantSection>& family);
/// Ideal, skew-symmetry and four-section lemmas.
Report verify_lemmas(const CourantStructure& s, const std::vector<CourantSection>& family);
/// circ against the componentwise formula for the double of (A, A*).
Report check_double_formula(const CourantStructure& s, const std::vector<CourantSection>& family);
/// circ against [X,Y] + L_X eta - i_Y d xi for A = TM with zero dual.
Report check_standard_formula(const CourantStructure& s, const std::vector<CourantSection>& family);

/// Tensor T for a Lie algebra with invariant form: T = 1/2 <[X,Y],Z>.
Report check_t_tensor_lie(const CourantStructure& s);

Report check_dirac(const CourantStructure& s, const std::vector<CourantSection>& span);

struct TwistResult {
    CourantStructure structure;
    Poly phi;         // effective 3-form on ΠA
    Poly omega;       // gauge 2-form on ΠA (possibly zero)
    Report report;
    /// e - {omega, e}: carries the phi - d omega structure... see twist_exact.
    CourantSection splitting(const CourantSection& e) const;
};

/// Standard structure on the base chart twisted by phi; with omega, by
/// phi + d omega. The report covers the axioms, the twist term in circ, the
/// splitting-change map and exactness of phi' - phi.
TwistResult twist_exact(const ChartPtr& base, const Poly& phi, const std::optional<Poly>& omega);

/// Standard pair (TM, zero dual) over the base with cubic term phi.
ProtoSpec standard_spec(const ChartPtr& base, const Poly& phi = Poly());

/// de Rham differential on the ΠA chart of a standard structure.
Poly de_rham_pi(const CourantStructure& s, const Poly& form);
/// Euler homotopy primitive of a closed polynomial form on R^n.
Poly euler_primitive(const CourantStructure& s, const Poly& form);

}  // namespace dbr
