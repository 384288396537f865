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

#include "dbracket/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <iterator>

int main(int argc, char** argv) {
    CLI::App app{"Derived-bracket verification and necklace cohomology"};
    app.require_subcommand(0, 1);
    bool list = false;
    app.add_flag("--list-presets", list, "Print the shipped preset names");

    dbr::CommandOptions opt;
    std::string preset, spec, c;
    for (const auto& name : dbr::command_names()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--preset", preset, "Preset name");
        sub->add_option("--spec", spec, "Spec file ('-' reads stdin)");
        sub->add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--timing", opt.timing, "Print the wall time");
        if (name == "shla-check") sub->add_option("--n", opt.n, "Highest identity")->check(CLI::Range(1, 4));
        if (name == "cohomology" || name == "invariants") {
            sub->add_option("--c", c, "Rational parameter c");
            sub->add_option("--truncate", opt.truncate, "I-degree truncation N");
        }
        if (name == "cohomology") sub->add_option("--modes", opt.modes, "Highest Fourier mode");
        if (name == "verify-algebroid") sub->add_flag("--perturb", opt.perturb, "Add 1 to the first structure constant");
        if (name == "double") {
            sub->add_flag("--weil", opt.weil, "Check the restriction to the fibre over 0");
            sub->add_flag("--brst", opt.brst, "Check the BRST generator identities");
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (list) {
        for (const auto& p : dbr::preset_names()) std::cout << p << "\n";
        return 0;
    }
    auto subs = app.get_subcommands();
    if (subs.empty()) {
        std::cerr << app.help();
        return 2;
    }
    opt.command = subs.front()->get_name();
    if (!preset.empty()) opt.preset = preset;
    if (spec == "-") {
        opt.spec_text = std::string(std::istreambuf_iterator<char>(std::cin), {});
    } else if (!spec.empty()) {
        opt.spec_file = spec;
    }
    if (!c.empty()) {
        try {
            opt.c = dbr::parse_rational(c);
        } catch (const std::invalid_argument&) {
            std::cerr << "usage error: --c must be a rational p/q\n";
            return 2;
        }
    }
    std::string out, err;
    int code = dbr::run_cli(opt, out, err);
    std::cout << out;
    std::cerr << err;
    return code;
}
