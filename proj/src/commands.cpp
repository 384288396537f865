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

#include "dbracket/algebroid.hpp"
#include "dbracket/courant.hpp"
#include "dbracket/necklace.hpp"
#include "dbracket/shla.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>
#include <map>
#include <sstream>

namespace dbr {

namespace {

std::string dims_text(const std::array<int, 3>& d) {
    return "(" + std::to_string(d[0]) + "," + std::to_string(d[1]) + "," + std::to_string(d[2]) + ")";
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (size_t k = 0; k < v.size(); ++k) out += (k ? sep : "") + v[k];
    return out;
}

SpecDocument load(const CommandOptions& opt) {
    int sources = opt.preset.has_value() + opt.spec_file.has_value() + opt.spec_text.has_value();
    if (sources == 0) throw UsageError(opt.command + " needs --preset or --spec");
    if (sources > 1) throw UsageError("give exactly one of --preset and --spec");
    if (opt.spec_text) return parse_spec(*opt.spec_text);
    if (opt.spec_file) return load_spec_file(*opt.spec_file);
    return load_preset(*opt.preset);
}

void require_kind(const SpecDocument& doc, std::initializer_list<SpecKind> kinds, const std::string& cmd) {
    for (auto k : kinds)
        if (doc.kind == k) return;
    std::vector<std::string> names;
    for (auto k : kinds) names.push_back(kind_name(k));
    throw UsageError(cmd + " needs a spec of kind " + join(names, " or ") + ", got " + kind_name(doc.kind));
}

Rational necklace_c(const CommandOptions& opt) {
    if (opt.c) return *opt.c;
    if (opt.preset || opt.spec_file || opt.spec_text) {
        auto doc = load(opt);
        require_kind(doc, {SpecKind::necklace}, opt.command);
        return *doc.c;
    }
    throw UsageError(opt.command + " needs --c or a necklace spec");
}

std::string echo_line(const CommandOptions& opt) {
    std::string s = "dbracket " + opt.command;
    if (opt.preset) s += " --preset " + *opt.preset;
    if (opt.spec_file) s += " --spec " + *opt.spec_file;
    if (opt.spec_text) s += " --spec -";
    if (opt.command == "shla-check") s += " --n " + std::to_string(opt.n);
    if (opt.c) s += " --c " + to_string(*opt.c);
    if (opt.command == "cohomology")
        s += " --modes " + std::to_string(opt.modes) + " --truncate " + std::to_string(opt.truncate);
    if (opt.perturb) s += " --perturb";
    if (opt.weil) s += " --weil";
    if (opt.brst) s += " --brst";
    if (opt.format != "text") s += " --format " + opt.format;
    return s;
}

void describe(CommandOutput& out, const SpecDocument& doc) {
    out.echo.push_back("spec: " + (doc.preset.empty() ? std::string("(unnamed)") : doc.preset) + " (" +
                       kind_name(doc.kind) + ")");
    for (const auto& e : doc.echo) out.echo.push_back("note: " + e);
}

Report titled(Report r, const std::string& title) {
    r.title = title;
    return r;
}

using Handler = std::function<void(const CommandOptions&, CommandOutput&)>;

void cmd_verify_algebroid(const CommandOptions& opt, CommandOutput& out) {
    auto doc = load(opt);
    require_kind(doc, {SpecKind::algebroid, SpecKind::bialgebroid, SpecKind::proto}, opt.command);
    if (opt.perturb) {
        std::string slot;
        doc = perturb_structure(doc, &slot);
        describe(out, doc);
        out.echo.push_back("note: perturbed " + slot);
    } else {
        describe(out, doc);
    }
    out.sections.push_back(check_lie_algebroid(doc.algebroid()));
}

void cmd_verify_bialgebroid(const CommandOptions& opt, CommandOutput& out) {
    auto doc = load(opt);
    require_kind(doc, {SpecKind::bialgebroid, SpecKind::proto}, opt.command);
    describe(out, doc);
    auto spec = doc.proto();
    spec.phi = Poly();
    spec.psi = Poly();
    DoubleModel m(spec);
    out.sections.push_back(check_bialgebroid(m));
    out.sections.push_back(check_derivation_property(m));
    std::swap(spec.a, spec.astar);
    out.sections.push_back(titled(check_bialgebroid(DoubleModel(spec)), "self-duality: (A*, A)"));
}

void cmd_verify_proto(const CommandOptions& opt, CommandOutput& out) {
    auto doc = load(opt);
    require_kind(doc, {SpecKind::bialgebroid, SpecKind::proto, SpecKind::exact_courant}, opt.command);
    describe(out, doc);
    out.sections.push_back(check_proto(DoubleModel(doc.proto())));
}

void cmd_double(const CommandOptions& opt, CommandOutput& out) {
    auto doc = load(opt);
    require_kind(doc, {SpecKind::bialgebroid, SpecKind::proto, SpecKind::exact_courant}, opt.command);
    describe(out, doc);
    DoubleModel m(doc.proto());
    auto dd = double_differential(m);
    Report gens;
    gens.title = "D on generators";
    const auto& ch = m.cot().chart();
    for (int k = 0; k < ch->size(); ++k)
        gens.add(recorded("D(" + ch->var(k).name + ")", dd.field.component(k).str()));
    if (dd.warning) gens.notes.push_back("{theta, theta} != 0");
    out.sections.push_back(gens);
    out.sections.push_back(check_double_square(m));
    if (opt.weil) out.sections.push_back(check_weil_restriction(m));
    if (opt.brst) out.sections.push_back(check_brst(m));
}

void cmd_courant_verify(const CommandOptions& opt, CommandOutput& out) {
    auto doc = load(opt);
    require_kind(doc, {SpecKind::bialgebroid, SpecKind::proto, SpecKind::exact_courant}, opt.command);
    describe(out, doc);
    CourantStructure s{DoubleModel(doc.proto())};
    auto fam = s.generator_family();
    out.echo.push_back("family: " + std::to_string(fam.size()) + " sections");
    out.sections.push_back(verify_axioms(s, fam));
    out.sections.push_back(verify_skew_definition(s, fam));
    out.sections.push_back(verify_lemmas(s, fam));
    bool cubic = !s.model().theta().phi.is_zero() || !s.model().theta().lpsi.is_zero();
    if (!cubic) out.sections.push_back(check_double_formula(s, fam));
    try {
        out.sections.push_back(check_standard_formula(s, fam));
    } catch (const std::invalid_argument&) {
    }
}

void cmd_dirac(const CommandOptions& opt, CommandOutput& out) {
    auto doc = load(opt);
    require_kind(doc, {SpecKind::bialgebroid, SpecKind::proto, SpecKind::exact_courant}, opt.command);
    describe(out, doc);
    if (doc.span.empty()) throw UsageError("dirac-check needs 'span = ...' entries in the spec");
    CourantStructure s{DoubleModel(doc.proto())};
    std::vector<CourantSection> span;
    for (const auto& p : doc.span) span.push_back(s.section(p.embed(s.cot().chart())));
    out.sections.push_back(check_dirac(s, span));
}

void cmd_shla(const CommandOptions& opt, CommandOutput& out) {
    if (opt.n < 1 || opt.n > 4) throw UsageError("--n must be between 1 and 4");
    auto doc = load(opt);
    require_kind(doc, {SpecKind::bialgebroid, SpecKind::proto, SpecKind::exact_courant}, opt.command);
    describe(out, doc);
    CourantStructure s{DoubleModel(doc.proto())};
    out.sections.push_back(shla_check(s, opt.n, shla_generators(s)));
}

void cmd_twist(const CommandOptions& opt, CommandOutput& out) {
    auto doc = load(opt);
    require_kind(doc, {SpecKind::exact_courant}, opt.command);
    describe(out, doc);
    auto t = twist_exact(doc.charts.base, doc.phi_or_zero(), doc.omega);
    out.echo.push_back("phi' = " + t.phi.str());
    out.sections.push_back(t.report);
}

void cmd_cohomology(const CommandOptions& opt, CommandOutput& out) {
    if (opt.modes < 0) throw UsageError("--modes must be non-negative");
    if (opt.truncate < 4) throw UsageError("--truncate must be at least 4");
    Rational c = necklace_c(opt);
    if (abs(c) == 1) throw UsageError("c = +-1 is not covered");
    out.echo.push_back("necklace c = " + to_string(c));
    CohomologyReport mode0;
    for (int n = 0; n <= opt.modes; ++n) {
        auto r = mode_cohomology(c, n, opt.truncate);
        if (n == 0) mode0 = r;
        Report rep = r.report;
        rep.add(recorded("dims", dims_text(r.dims)));
        for (int k = 0; k < 3; ++k)
            if (!r.generators[k].empty()) rep.add(recorded("H^" + std::to_string(k) + " generators", join(r.generators[k], ", ")));
        out.sections.push_back(rep);
    }
    auto g = global_assembly(c, mode0);
    Report rep = g.report;
    rep.add(recorded("provenance", g.provenance));
    for (const auto& [name, prov] : g.inputs) rep.add(recorded("input: " + name, prov));
    for (int k = 0; k < 3; ++k)
        if (!g.generators[k].empty()) rep.add(recorded("H^" + std::to_string(k) + " generators", join(g.generators[k], ", ")));
    out.sections.push_back(rep);
}

void cmd_invariants(const CommandOptions& opt, CommandOutput& out) {
    Rational c = necklace_c(opt);
    if (abs(c) == 1) throw UsageError("c = +-1 is not covered");
    out.echo.push_back("necklace c = " + to_string(c));
    out.sections.push_back(modular_and_volume(c).report);
    out.sections.push_back(structure_identities(c, opt.truncate));
}

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> h = {
        {"verify-algebroid", cmd_verify_algebroid}, {"verify-bialgebroid", cmd_verify_bialgebroid},
        {"verify-proto", cmd_verify_proto},         {"double", cmd_double},
        {"courant-verify", cmd_courant_verify},     {"dirac-check", cmd_dirac},
        {"shla-check", cmd_shla},                   {"twist", cmd_twist},
        {"cohomology", cmd_cohomology},             {"invariants", cmd_invariants},
    };
    return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"verify-algebroid", "verify-bialgebroid", "verify-proto",
                                                   "double",           "courant-verify",     "dirac-check",
                                                   "shla-check",       "twist",              "cohomology",
                                                   "invariants"};
    return names;
}

SpecDocument perturb_structure(const SpecDocument& doc, std::string* slot) {
    const int r = static_cast<int>(doc.fiber.size());
    if (r < 2) throw UsageError("rank " + std::to_string(r) + ": no structure constant C^c_ab with a < b to perturb");
    SpecDocument out = doc;
    SpecDocument::Key3 key{1, 2, 1}, partner{2, 1, 1};
    Poly one(doc.charts.base, GaussRat(1));
    auto bump = [&](const SpecDocument::Key3& k, const Poly& by) {
        auto it = out.structure.find(k);
        Poly v = it == out.structure.end() ? by : it->second + by;
        if (v.is_zero()) out.structure.erase(k);
        else out.structure[k] = v;
    };
    bump(key, one);
    bump(partner, -one);
    if (slot) *slot = "C[1][2][1] += 1 (C[2][1][1] -= 1)";
    return out;
}

CommandOutput run_command(const CommandOptions& opt) {
    auto it = handlers().find(opt.command);
    if (it == handlers().end()) throw UsageError("unknown command '" + opt.command + "'");
    if (opt.format != "text" && opt.format != "json") throw UsageError("--format must be text or json");
    if (opt.perturb && opt.command != "verify-algebroid") throw UsageError("--perturb applies to verify-algebroid");
    if ((opt.weil || opt.brst) && opt.command != "double") throw UsageError("--weil/--brst apply to double");
    CommandOutput out;
    out.command_echo = echo_line(opt);
    auto t0 = std::chrono::steady_clock::now();
    it->second(opt, out);
    if (opt.timing)
        out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

bool CommandOutput::all_pass() const {
    for (const auto& r : sections)
        if (!r.all_pass()) return false;
    return true;
}

std::string CommandOutput::text() const {
    std::ostringstream o;
    o << "command: " << command_echo << "\n";
    for (const auto& e : echo) o << e << "\n";
    int total = 0, failed = 0;
    for (const auto& r : sections) {
        o << "[" << r.title << "]\n";
        for (const auto& c : r.checks) {
            ++total;
            if (c.status == Status::fail) ++failed;
            std::string st = status_name(c.status);
            o << "  " << st << std::string(9 - st.size(), ' ') << c.name;
            if (!c.detail.empty()) o << "  (" << c.detail << ")";
            o << "\n";
            if (c.status == Status::fail && !c.residual.empty()) o << "           residual: " << c.residual << "\n";
        }
        for (const auto& n : r.notes) o << "  note: " << n << "\n";
    }
    o << "result: " << (failed ? "fail" : "pass") << " (" << total << " checks, " << failed << " failed)\n";
    if (millis >= 0) {
        std::ostringstream t;
        t.precision(1);
        t << std::fixed << millis;
        o << "time: " << t.str() << " ms\n";
    }
    return o.str();
}

std::string CommandOutput::json() const {
    nlohmann::ordered_json j;
    j["command"] = command_echo;
    j["echo"] = echo;
    j["sections"] = nlohmann::ordered_json::array();
    for (const auto& r : sections) {
        nlohmann::ordered_json s;
        s["title"] = r.title;
        s["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : r.checks)
            s["checks"].push_back({{"name", c.name},
                                   {"status", status_name(c.status)},
                                   {"residual", c.residual},
                                   {"detail", c.detail}});
        s["notes"] = r.notes;
        j["sections"].push_back(s);
    }
    j["result"] = all_pass() ? "pass" : "fail";
    if (millis >= 0) j["time_ms"] = millis;
    return j.dump(2) + "\n";
}

int run_cli(const CommandOptions& opt, std::string& out, std::string& err) {
    try {
        auto res = run_command(opt);
        out = opt.format == "json" ? res.json() : res.text();
        return res.exit_code();
    } catch (const UsageError& e) {
        err = std::string("usage error: ") + e.what() + "\n";
    } catch (const SpecError& e) {
        err = std::string("spec error: ") + e.what() + "\n";
    } catch (const std::invalid_argument& e) {
        err = std::string("invalid input: ") + e.what() + "\n";
    } catch (const std::runtime_error& e) {
        err = std::string("error: ") + e.what() + "\n";
    }
    return 2;
}

}  // namespace dbr
