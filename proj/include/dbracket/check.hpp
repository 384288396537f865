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

#include <string>
#include <vector>

namespace dbr {

enum class Status { pass, fail, recorded };

const char* status_name(Status s);

/// One line of a report. residual holds a normal-form polynomial (or a
/// short description) when the check fails; detail is free text.
struct Check {
    std::string name;
    Status status = Status::pass;
    std::string residual;
    std::string detail;
};

Check residual_check(std::string name, const Poly& residual, std::string detail = {});
Check bool_check(std::string name, bool ok, std::string residual = {}, std::string detail = {});
Check recorded(std::string name, std::string detail);

struct Report {
    std::string title;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    bool all_pass() const;
    void add(Check c) { checks.push_back(std::move(c)); }
    void append(const Report& other);
};

}  // namespace dbr
