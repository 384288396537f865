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
#include "dbracket/rational.hpp"
#include "dbracket/spec_document.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dbr {

/// Bad command line or inconsistent flags (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommandOptions {
    std::string command;
    std::optional<std::string> preset;
    std::optional<std::string> spec_file;
    std::optional<std::string> spec_text;  // takes precedence over the file
    std::string format = "text";
    int n = 4;                 // shla-check
    std::optional<Rational> c; // cohomology, invariants
    int modes = 5;
    int truncate = 12;
    bool perturb = false;      // verify-algebroid: C^c_ab += 1 on the first slot
    bool weil = false;         // double: restriction to the fibre over 0
    bool brst = false;         // double: BRST generator identities
    bool timing = false;
};

struct CommandOutput {
    std::string command_echo;
    std::vector<std::string> echo;
    std::vector<Report> sections;
    double millis = -1;

    bool all_pass() const;
    int exit_code() const { return all_pass() ? 0 : 1; }
    std::string text() const;
    std::string json() const;
};

const std::vector<std::string>& command_names();

/// Adds 1 to C^c_ab (and -1 to C^c_ba) for the first a < b, c in
/// lexicographic order. Throws UsageError for rank < 2.
SpecDocument perturb_structure(const SpecDocument& doc, std::string* slot = nullptr);

/// Throws UsageError, SpecError or std::invalid_argument on bad input.
CommandOutput run_command(const CommandOptions& opt);

/// Full dispatch with formatting and exit code; errors become exit code 2
/// with the message in err.
int run_cli(const CommandOptions& opt, std::string& out, std::string& err);

}  // namespace dbr
