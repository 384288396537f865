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
#include "dbracket/necklace.hpp"
#include "dbracket/spec_document.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dbr;

namespace {

Rational rat(const std::string& s) { return parse_rational(s); }

py::dict cohomology_dict(const CohomologyReport& r) {
    py::dict d;
    d["dims"] = py::make_tuple(r.dims[0], r.dims[1], r.dims[2]);
    d["generators"] = py::make_tuple(r.generators[0], r.generators[1], r.generators[2]);
    d["provenance"] = r.provenance;
    d["inputs"] = r.inputs;
    d["passed"] = r.report.all_pass();
    return d;
}

py::tuple run(const std::string& command, std::optional<std::string> preset, std::optional<std::string> spec_file,
              std::optional<std::string> spec_text, int n, std::optional<std::string> c, int modes, int truncate,
              bool perturb, bool weil, bool brst, const std::string& format) {
    CommandOptions o;
    o.command = command;
    o.preset = preset;
    o.spec_file = spec_file;
    o.spec_text = spec_text;
    o.n = n;
    if (c) o.c = rat(*c);
    o.modes = modes;
    o.truncate = truncate;
    o.perturb = perturb;
    o.weil = weil;
    o.brst = brst;
    o.format = format;
    std::string out, err;
    int code = run_cli(o, out, err);
    return py::make_tuple(code, out, err);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Derived-bracket verification and necklace cohomology";
    m.def("commands", &command_names);
    m.def("preset_names", &preset_names);
    m.def("preset_dir", &preset_dir);
    m.def("normalize_spec", [](const std::string& text) { return print_spec(parse_spec(text)); },
          "Parses a spec and prints it in canonical form; raises ValueError on errors.");
    m.def("run", &run, py::arg("command"), py::arg("preset") = py::none(), py::arg("spec_file") = py::none(),
          py::arg("spec_text") = py::none(), py::arg("n") = 4, py::arg("c") = py::none(), py::arg("modes") = 5,
          py::arg("truncate") = 12, py::arg("perturb") = false, py::arg("weil") = false, py::arg("brst") = false,
          py::arg("format") = "json", "Runs a command; returns (exit_code, stdout, stderr).");
    m.def("mode_cohomology", [](const std::string& c, int n, int N) { return cohomology_dict(mode_cohomology(rat(c), n, N)); },
          py::arg("c"), py::arg("n"), py::arg("N") = 12);
    m.def("global_cohomology",
          [](const std::string& c, int N) {
              Rational q = rat(c);
              return cohomology_dict(global_assembly(q, mode_cohomology(q, 0, N)));
          },
          py::arg("c"), py::arg("N") = 12);
    m.def("volume", [](const std::string& c) { return modular_and_volume(rat(c)).volume; }, py::arg("c"));
    py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
}
