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

#include "dbracket/courant.hpp"

#include <vector>

namespace dbr {

/// Element of X_0 + X_1 + X_2: a section (degree 0, value on the cotangent
/// chart), a base function (degree 1) or a constant (degree 2, stored as a
/// constant base polynomial).
struct ShlaElement {
    int degree = 0;
    Poly value;

    std::string str() const;
};

class ShlaMaps {
public:
    explicit ShlaMaps(const CourantStructure& s) : s_(s) {}

    ShlaElement section(const CourantSection& e) const { return {0, e.embedded}; }
    ShlaElement function(const Poly& f) const { return {1, f}; }
    ShlaElement constant(const GaussRat& c) const { return {2, Poly(s_.base(), c)}; }

    /// l_k on homogeneous arguments; zero values come back with the degree
    /// sum(deg) + k - 2 even when that space is empty.
    ShlaElement l(int k, const std::vector<ShlaElement>& args) const;

    /// Left side of the n-th identity on x_1..x_n.
    ShlaElement identity(const std::vector<ShlaElement>& xs) const;

    const CourantStructure& structure() const { return s_; }

private:
    ShlaElement zero(int degree) const;

    const CourantStructure& s_;
};

/// Sections from the generator family, the functions 1, x^i and (x^i)^2,
/// and the constant 1.
std::vector<ShlaElement> shla_generators(const CourantStructure& s);

/// Identity for n = 1..max_n on all multisets of generators, with the
/// (e,e,f) and (e,e,e,e) parts reported separately.
Report shla_check(const CourantStructure& s, int max_n, const std::vector<ShlaElement>& gens);

}  // namespace dbr
