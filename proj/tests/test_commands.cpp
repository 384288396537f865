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

#include "doctest.h"

#include "dbracket/commands.hpp"

using namespace dbr;

namespace {

CommandOptions opts(const std::string& cmd, const std::string& preset = {}) {
    CommandOptions o;
    o.command = cmd;
    if (!preset.empty()) o.preset = preset;
    return o;
}

int exit_of(const CommandOptions& o, std::string* out = nullptr) {
    std::string so, se;
    int code = run_cli(o, so, se);
    if (out) *out = so + se;
    return code;
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(exit_of(opts("verify-algebroid", "su2")) == 0);
    auto p = opts("verify-algebroid", "su2");
    p.perturb = true;
    CHECK(exit_of(p) == 1);
    CHECK(exit_of(opts("no-such-command", "su2")) == 2);
    CHECK(exit_of(opts("verify-algebroid")) == 2);
    CHECK(exit_of(opts("verify-algebroid", "missing")) == 2);
    CHECK(exit_of(opts("twist", "su2")) == 2);
    auto bad = opts("verify-algebroid", "su2");
    bad.format = "xml";
    CHECK(exit_of(bad) == 2);
    auto brst = opts("verify-algebroid", "brst-so2-on-R2");
    brst.perturb = true;
    std::string msg;
    CHECK(exit_of(brst, &msg) == 2);
    CHECK(msg.find("rank 1") != std::string::npos);
    auto text = opts("verify-algebroid");
    text.spec_text = "kind: algebroid\nbase: x\nfiber: xi\nA[1][1] = x^\n";
    CHECK(exit_of(text, &msg) == 2);
    CHECK(msg == "spec error: line 4, column 13: expected integer exponent\n");
    auto c1 = opts("cohomology");
    c1.c = Rational(1);
    CHECK(exit_of(c1) == 2);
    CHECK(exit_of(opts("cohomology")) == 2);
}

TEST_CASE("documented examples") {
    CHECK(exit_of(opts("verify-bialgebroid", "su2-bialgebra")) == 0);
    auto sh = opts("shla-check", "standard-R1");
    sh.n = 4;
    CHECK(exit_of(sh) == 0);
    auto co = opts("cohomology");
    co.c = Rational(0);
    std::string out;
    CHECK(exit_of(co, &out) == 0);
    CHECK(out.find("[mode 5 at N = 12]") != std::string::npos);
    CHECK(out.find("recorded dims  ((1,1,2))") != std::string::npos);
    CHECK(out.find("recorded-constant") != std::string::npos);
    auto nk = opts("invariants", "necklace");
    CHECK(exit_of(nk) == 0);
    CHECK(exit_of(opts("dirac-check", "dirac-graph-R3")) == 0);
    CHECK(exit_of(opts("dirac-check", "dirac-open-R3")) == 1);
    CHECK(exit_of(opts("dirac-check", "standard-R2")) == 2);
    CHECK(exit_of(opts("twist", "exact-twist-R3")) == 0);
    CHECK(exit_of(opts("twist", "exact-twist-R4-open")) == 1);
    auto w = opts("double", "weil-su2");
    w.weil = true;
    CHECK(exit_of(w) == 0);
}

TEST_CASE("perturbation rule") {
    std::string slot;
    auto doc = perturb_structure(load_preset("su2"), &slot);
    CHECK(slot == "C[1][2][1] += 1 (C[2][1][1] -= 1)");
    CHECK(doc.algebroid().structure[0][1][0].str() == "1");
    CHECK(doc.algebroid().structure[1][0][0].str() == "-1");
    CHECK(doc.algebroid().structure[0][1][2].str() == "1");
    CHECK_THROWS_AS(perturb_structure(load_preset("standard-R1")), UsageError);
}

TEST_CASE("reports are deterministic and JSON mirrors text") {
    auto o = opts("courant-verify", "poisson-R2");
    auto a = run_command(o).text();
    auto b = run_command(o).text();
    CHECK(a == b);
    CHECK(a.find("time:") == std::string::npos);
    o.format = "json";
    auto j = run_command(o);
    auto js = j.json();
    CHECK(js == run_command(o).json());
    size_t checks = 0, records = 0;
    for (const auto& s : j.sections) checks += s.checks.size();
    for (size_t pos = js.find("\"status\""); pos != std::string::npos; pos = js.find("\"status\"", pos + 1)) ++records;
    CHECK(records == checks);
    o.timing = true;
    CHECK(run_command(o).text().find("time:") != std::string::npos);
}

TEST_CASE("failing residuals are printed") {
    auto p = opts("verify-algebroid", "tangent-R2");
    p.perturb = true;
    auto out = run_command(p).text();
    CHECK(out.find("residual: -2*xi1*xi2*p_x1") != std::string::npos);
    CHECK(out.find("result: fail") != std::string::npos);
}
