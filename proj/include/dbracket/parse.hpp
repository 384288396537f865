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

#include <stdexcept>
#include <string>

namespace dbr {

/// Syntax or name error; column is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int column)
        : std::runtime_error(msg + " at column " + std::to_string(column)), column_(column) {}
    int column() const { return column_; }

private:
    int column_;
};

/// Grammar: sums and products of integer or p/q literals, the unit `i`,
/// declared identifiers, `^` with a non-negative integer exponent and
/// parentheses. Division is allowed only by a nonzero constant.
Poly parse_poly(const std::string& text, const ChartPtr& chart);

}  // namespace dbr
