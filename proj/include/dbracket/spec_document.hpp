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
#include "dbracket/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dbr {

/// Load error with a 1-based line and column (column 0 when the whole line
/// is at fault).
class SpecError : public std::runtime_error {
public:
    SpecError(const std::string& msg, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

enum class SpecKind { algebroid, bialgebroid, proto, exact_courant, necklace };

const char* kind_name(SpecKind k);

/// Structure file. Line oriented:
///
///     kind: bialgebroid
///     preset: su2-bialgebra
///     base: x1 x2
///     fiber: xi1 xi2
///     dual: th1 th2
///     A[1][1] = 1          anchor of e_1 applied to x1
///     C[1][2][3] = 1       C^3_12 of A
///     Abar[..][..], Cbar[..][..][..]   the same for A*
///     phi = ..., psi = ...  cubic terms on PiA and PiA*
///     omega = ...           gauge 2-form (exact-courant)
///     span = ...            section on T*PiA (dirac-check), repeatable
///     c = 1/2               necklace parameter
///
/// Indices are 1-based. '#' starts a comment. A structure entry whose
/// antisymmetric partner is absent is completed and noted in echo.
struct SpecDocument {
    using Key2 = std::array<int, 2>;
    using Key3 = std::array<int, 3>;

    SpecKind kind = SpecKind::algebroid;
    std::string preset;
    std::vector<std::string> base, fiber, dual;
    PairCharts charts;
    std::map<Key2, Poly> anchor, anchor_bar;
    std::map<Key3, Poly> structure, structure_bar;
    std::optional<Poly> phi, psi, omega;
    std::vector<Poly> span;
    std::optional<Rational> c;
    std::vector<std::string> echo;

    AlgebroidSpec algebroid() const;
    AlgebroidSpec dual_algebroid() const;
    ProtoSpec proto() const;

    /// phi on PiA, or the exact-courant phi; zero polynomial when absent.
    Poly phi_or_zero() const;
};

SpecDocument parse_spec(const std::string& text);
SpecDocument load_spec_file(const std::string& path);
/// Canonical text; parse_spec(print_spec(d)) reproduces d.
std::string print_spec(const SpecDocument& doc);

/// Directory holding the shipped presets (DBRACKET_PRESET_DIR, overridable
/// by the environment variable of the same name).
std::string preset_dir();
std::vector<std::string> preset_names();
SpecDocument load_preset(const std::string& name);

}  // namespace dbr
