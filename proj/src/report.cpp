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

#include "dbracket/check.hpp"

namespace dbr {

const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::recorded: return "recorded";
    }
    return "?";
}

Check residual_check(std::string name, const Poly& residual, std::string detail) {
    Check c;
    c.name = std::move(name);
    c.detail = std::move(detail);
    if (!residual.is_zero()) {
        c.status = Status::fail;
        c.residual = residual.str();
    }
    return c;
}

Check bool_check(std::string name, bool ok, std::string residual, std::string detail) {
    Check c;
    c.name = std::move(name);
    c.status = ok ? Status::pass : Status::fail;
    if (!ok) c.residual = std::move(residual);
    c.detail = std::move(detail);
    return c;
}

Check recorded(std::string name, std::string detail) {
    Check c;
    c.name = std::move(name);
    c.status = Status::recorded;
    c.detail = std::move(detail);
    return c;
}

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (c.status == Status::fail) return false;
    return true;
}

void Report::append(const Report& other) {
    for (const auto& c : other.checks) checks.push_back(c);
    for (const auto& n : other.notes) notes.push_back(n);
}

}  // namespace dbr
