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

#include "dbracket/spec_document.hpp"

#include "dbracket/parse.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#ifndef DBRACKET_PRESET_DIR
#define DBRACKET_PRESET_DIR "presets"
#endif

namespace dbr {

SpecError::SpecError(const std::string& msg, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + (column > 0 ? ", column " + std::to_string(column) : "") +
                         ": " + msg),
      line_(line),
      column_(column) {}

const char* kind_name(SpecKind k) {
    switch (k) {
        case SpecKind::algebroid: return "algebroid";
        case SpecKind::bialgebroid: return "bialgebroid";
        case SpecKind::proto: return "proto";
        case SpecKind::exact_courant: return "exact-courant";
        case SpecKind::necklace: return "necklace";
    }
    return "?";
}

namespace {

struct Line {
    int number;
    std::string text;  // comment stripped
};

bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; }

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && is_space(s[a])) ++a;
    while (b > a && is_space(s[b - 1])) --b;
    return s.substr(a, b - a);
}

size_t first_non_space(const std::string& s, size_t from = 0) {
    while (from < s.size() && is_space(s[from])) ++from;
    return from;
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

bool valid_identifier(const std::string& w) {
    if (w.empty() || !(std::isalpha(static_cast<unsigned char>(w[0])) || w[0] == '_')) return false;
    return std::all_of(w.begin(), w.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

std::vector<std::string> numbered(const std::string& stem, size_t n) {
    std::vector<std::string> out;
    for (size_t k = 1; k <= n; ++k) out.push_back(stem + std::to_string(k));
    return out;
}

SpecKind parse_kind(const std::string& w, int line, int col) {
    for (SpecKind k : {SpecKind::algebroid, SpecKind::bialgebroid, SpecKind::proto, SpecKind::exact_courant,
                       SpecKind::necklace})
        if (w == kind_name(k)) return k;
    throw SpecError("unknown kind '" + w + "'", line, col);
}

// "C[1][2][3]" -> ("C", {1,2,3})
std::pair<std::string, std::vector<int>> parse_lhs(const std::string& s, int line, int col) {
    size_t k = 0;
    while (k < s.size() && s[k] != '[') ++k;
    std::string name = trim(s.substr(0, k));
    std::vector<int> idx;
    while (k < s.size()) {
        if (s[k] != '[') throw SpecError("expected '['", line, col + static_cast<int>(k));
        size_t close = s.find(']', k);
        if (close == std::string::npos) throw SpecError("missing ']'", line, col + static_cast<int>(k));
        std::string num = s.substr(k + 1, close - k - 1);
        if (num.empty() || !std::all_of(num.begin(), num.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
            throw SpecError("index must be a positive integer", line, col + static_cast<int>(k) + 1);
        idx.push_back(std::stoi(num));
        k = close + 1;
        while (k < s.size() && is_space(s[k])) ++k;
    }
    return {name, idx};
}

void check_range(const std::vector<int>& idx, const std::vector<int>& bounds, const std::string& what, int line,
                 int col) {
    if (idx.size() != bounds.size())
        throw SpecError(what + " takes " + std::to_string(bounds.size()) + " indices", line, col);
    for (size_t k = 0; k < idx.size(); ++k)
        if (idx[k] < 1 || idx[k] > bounds[k])
            throw SpecError(what + " index " + std::to_string(idx[k]) + " out of range 1.." + std::to_string(bounds[k]),
                            line, col);
}

template <class K>
std::string key_text(const std::string& name, const K& key) {
    std::string s = name;
    for (int k : key) s += "[" + std::to_string(k) + "]";
    return s;
}

void complete_antisymmetric(std::map<SpecDocument::Key3, Poly>& table, const std::string& name,
                            std::map<SpecDocument::Key3, int>& lines, std::vector<std::string>& echo) {
    std::vector<std::pair<SpecDocument::Key3, Poly>> added;
    for (const auto& [key, value] : table) {
        auto [a, b, c] = key;
        if (a == b) {
            if (!value.is_zero())
                throw SpecError(key_text(name, key) + " must vanish by antisymmetry", lines[key], 0);
            continue;
        }
        SpecDocument::Key3 partner{b, a, c};
        auto it = table.find(partner);
        if (it == table.end()) {
            added.emplace_back(partner, -value);
        } else if (it->second != -value) {
            throw SpecError("antisymmetry violation: " + key_text(name, key) + " = " + value.str() + " but " +
                                key_text(name, partner) + " = " + it->second.str(),
                            std::max(lines[key], lines[partner]), 0);
        }
    }
    for (auto& [key, value] : added) {
        echo.push_back("completed " + key_text(name, key) + " = " + value.str() + " by antisymmetry");
        table.emplace(key, std::move(value));
    }
}

}  // namespace

SpecDocument parse_spec(const std::string& text) {
    std::vector<Line> lines;
    {
        std::istringstream in(text);
        std::string raw;
        int n = 0;
        while (std::getline(in, raw)) {
            ++n;
            size_t hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            if (!trim(raw).empty()) lines.push_back({n, raw});
        }
    }
    SpecDocument doc;
    std::optional<int> kind_line;
    std::set<std::string> seen_directive;
    std::vector<const Line*> entries;
    for (const auto& ln : lines) {
        size_t colon = ln.text.find(':'), eq = ln.text.find('=');
        if (colon != std::string::npos && (eq == std::string::npos || colon < eq)) {
            std::string key = trim(ln.text.substr(0, colon));
            std::string value = ln.text.substr(colon + 1);
            int vcol = static_cast<int>(first_non_space(ln.text, colon + 1)) + 1;
            if (!seen_directive.insert(key).second) throw SpecError("duplicate '" + key + ":'", ln.number, 1);
            auto ws = words(value);
            if (key == "kind") {
                if (ws.size() != 1) throw SpecError("kind takes one word", ln.number, vcol);
                doc.kind = parse_kind(ws[0], ln.number, vcol);
                kind_line = ln.number;
            } else if (key == "preset") {
                if (ws.size() != 1) throw SpecError("preset takes one word", ln.number, vcol);
                doc.preset = ws[0];
            } else if (key == "base" || key == "fiber" || key == "dual") {
                for (const auto& w : ws)
                    if (!valid_identifier(w) || w == "i")
                        throw SpecError("bad variable name '" + w + "'", ln.number,
                                        static_cast<int>(ln.text.find(w, colon + 1)) + 1);
                (key == "base" ? doc.base : key == "fiber" ? doc.fiber : doc.dual) = ws;
            } else {
                throw SpecError("unknown directive '" + key + "'", ln.number, 1);
            }
        } else if (eq != std::string::npos) {
            entries.push_back(&ln);
        } else {
            throw SpecError("expected 'key: value' or 'entry = value'", ln.number, static_cast<int>(first_non_space(ln.text)) + 1);
        }
    }
    if (!kind_line) throw SpecError("missing 'kind:' header", lines.empty() ? 1 : lines.front().number, 0);

    const bool two_sided = doc.kind == SpecKind::bialgebroid || doc.kind == SpecKind::proto;
    if (doc.kind == SpecKind::exact_courant) {
        if (seen_directive.count("fiber") || seen_directive.count("dual"))
            throw SpecError("exact-courant uses the fibre names xi1.. and th1..", *kind_line, 0);
        doc.fiber = numbered("xi", doc.base.size());
        doc.dual = numbered("th", doc.base.size());
    } else if (doc.kind == SpecKind::necklace) {
        for (const char* k : {"base", "fiber", "dual"})
            if (seen_directive.count(k)) throw SpecError(std::string("necklace takes no '") + k + ":'", *kind_line, 0);
    } else {
        if (!seen_directive.count("fiber")) throw SpecError("missing 'fiber:'", *kind_line, 0);
        if (!seen_directive.count("dual")) {
            if (two_sided) throw SpecError("missing 'dual:'", *kind_line, 0);
            std::set<std::string> used(doc.base.begin(), doc.base.end());
            used.insert(doc.fiber.begin(), doc.fiber.end());
            std::string stem = "th";
            auto clashes = [&] {
                for (const auto& v : numbered(stem, doc.fiber.size()))
                    if (used.count(v)) return true;
                return false;
            };
            while (clashes()) stem += "_";
            doc.dual = numbered(stem, doc.fiber.size());
        }
    }
    if (doc.kind != SpecKind::necklace) {
        try {
            doc.charts = make_pair_charts(doc.base, doc.fiber, doc.dual);
        } catch (const std::invalid_argument& e) {
            throw SpecError(e.what(), *kind_line, 0);
        }
    }

    const int n = static_cast<int>(doc.base.size()), r = static_cast<int>(doc.fiber.size());
    std::map<SpecDocument::Key2, int> line2;
    std::map<SpecDocument::Key3, int> line3, line3bar;
    std::set<std::string> seen_single;
    for (const Line* ln : entries) {
        size_t eq = ln->text.find('=');
        int lcol = static_cast<int>(first_non_space(ln->text)) + 1;
        auto [name, idx] = parse_lhs(trim(ln->text.substr(0, eq)), ln->number, lcol);
        std::string rhs = ln->text.substr(eq + 1);
        int rcol = static_cast<int>(eq) + 2;
        if (trim(rhs).empty()) throw SpecError("missing value", ln->number, rcol);
        auto allowed = [&](bool ok) {
            if (!ok) throw SpecError("'" + name + "' is not allowed for kind " + kind_name(doc.kind), ln->number, lcol);
        };
        auto poly = [&](const ChartPtr& chart) {
            try {
                return parse_poly(rhs, chart);
            } catch (const ParseError& e) {
                std::string msg = e.what();
                msg = msg.substr(0, msg.rfind(" at column "));
                throw SpecError(msg, ln->number, rcol + e.column() - 1);
            }
        };
        auto single = [&]() {
            if (!idx.empty()) throw SpecError("'" + name + "' takes no indices", ln->number, lcol);
            if (!seen_single.insert(name).second)
                throw SpecError("duplicate entry '" + name + "'", ln->number, lcol);
        };
        if (name == "A" || name == "Abar") {
            allowed(doc.kind != SpecKind::exact_courant && doc.kind != SpecKind::necklace &&
                    (name == "A" || two_sided));
            check_range(idx, {r, n}, name, ln->number, lcol);
            SpecDocument::Key2 key{idx[0], idx[1]};
            auto& table = name == "A" ? doc.anchor : doc.anchor_bar;
            if (table.count(key)) throw SpecError("duplicate entry " + key_text(name, key), ln->number, lcol);
            Poly p = poly(doc.charts.base);
            if (!p.is_zero()) table.emplace(key, std::move(p));
            else table.emplace(key, Poly(doc.charts.base));
            line2[key] = ln->number;
        } else if (name == "C" || name == "Cbar") {
            allowed(doc.kind != SpecKind::exact_courant && doc.kind != SpecKind::necklace &&
                    (name == "C" || two_sided));
            check_range(idx, {r, r, r}, name, ln->number, lcol);
            SpecDocument::Key3 key{idx[0], idx[1], idx[2]};
            auto& table = name == "C" ? doc.structure : doc.structure_bar;
            auto& lines3 = name == "C" ? line3 : line3bar;
            if (table.count(key)) throw SpecError("duplicate entry " + key_text(name, key), ln->number, lcol);
            table.emplace(key, poly(doc.charts.base));
            lines3[key] = ln->number;
        } else if (name == "phi") {
            allowed(doc.kind == SpecKind::proto || doc.kind == SpecKind::exact_courant);
            single();
            doc.phi = poly(doc.charts.a.pi);
        } else if (name == "psi") {
            allowed(doc.kind == SpecKind::proto);
            single();
            doc.psi = poly(doc.charts.astar.pi);
        } else if (name == "omega") {
            allowed(doc.kind == SpecKind::exact_courant);
            single();
            doc.omega = poly(doc.charts.a.pi);
        } else if (name == "span") {
            allowed(doc.kind != SpecKind::algebroid && doc.kind != SpecKind::necklace);
            if (!idx.empty()) throw SpecError("'span' takes no indices", ln->number, lcol);
            doc.span.push_back(poly(doc.charts.a.cot.chart()));
        } else if (name == "c") {
            allowed(doc.kind == SpecKind::necklace);
            single();
            try {
                doc.c = parse_rational(trim(rhs));
            } catch (const std::invalid_argument&) {
                throw SpecError("c must be a rational p/q", ln->number, static_cast<int>(first_non_space(ln->text, eq + 1)) + 1);
            }
        } else {
            throw SpecError("unknown entry '" + name + "'", ln->number, lcol);
        }
    }
    // drop explicit zeros so printing is canonical
    for (auto* t : {&doc.anchor, &doc.anchor_bar})
        for (auto it = t->begin(); it != t->end();) it = it->second.is_zero() ? t->erase(it) : std::next(it);
    complete_antisymmetric(doc.structure, "C", line3, doc.echo);
    complete_antisymmetric(doc.structure_bar, "Cbar", line3bar, doc.echo);
    for (auto* t : {&doc.structure, &doc.structure_bar})
        for (auto it = t->begin(); it != t->end();) it = it->second.is_zero() ? t->erase(it) : std::next(it);
    if (doc.kind == SpecKind::necklace && !doc.c) throw SpecError("necklace needs 'c = ...'", *kind_line, 0);

    // load-time validation of the assembled structure
    if (doc.kind != SpecKind::necklace && doc.kind != SpecKind::exact_courant) {
        try {
            doc.algebroid().validate();
            if (two_sided) doc.dual_algebroid().validate();
        } catch (const std::invalid_argument& e) {
            throw SpecError(e.what(), *kind_line, 0);
        }
    }
    return doc;
}

AlgebroidSpec SpecDocument::algebroid() const {
    auto s = AlgebroidSpec::zero(charts.base, fiber);
    if (kind == SpecKind::exact_courant)
        for (int a = 0; a < s.rank(); ++a) s.anchor[a][a] = Poly(charts.base, GaussRat(1));
    for (const auto& [k, p] : anchor) s.anchor[k[0] - 1][k[1] - 1] = p;
    for (const auto& [k, p] : structure) s.structure[k[0] - 1][k[1] - 1][k[2] - 1] = p;
    return s;
}

AlgebroidSpec SpecDocument::dual_algebroid() const {
    auto s = AlgebroidSpec::zero(charts.base, dual);
    for (const auto& [k, p] : anchor_bar) s.anchor[k[0] - 1][k[1] - 1] = p;
    for (const auto& [k, p] : structure_bar) s.structure[k[0] - 1][k[1] - 1][k[2] - 1] = p;
    return s;
}

ProtoSpec SpecDocument::proto() const {
    if (kind == SpecKind::necklace) throw std::invalid_argument("a necklace spec has no algebroid data");
    ProtoSpec p;
    p.a = algebroid();
    p.astar = dual_algebroid();
    if (phi) p.phi = *phi;
    if (psi) p.psi = *psi;
    return p;
}

Poly SpecDocument::phi_or_zero() const { return phi ? *phi : Poly(charts.a.pi); }

SpecDocument load_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

std::string print_spec(const SpecDocument& doc) {
    std::ostringstream out;
    auto list = [&](const char* key, const std::vector<std::string>& v) {
        out << key << ":";
        for (const auto& w : v) out << " " << w;
        out << "\n";
    };
    out << "kind: " << kind_name(doc.kind) << "\n";
    if (!doc.preset.empty()) out << "preset: " << doc.preset << "\n";
    if (doc.kind != SpecKind::necklace) list("base", doc.base);
    if (doc.kind != SpecKind::necklace && doc.kind != SpecKind::exact_courant) {
        list("fiber", doc.fiber);
        list("dual", doc.dual);
    }
    for (const auto& [k, p] : doc.anchor) out << key_text("A", k) << " = " << p.str() << "\n";
    for (const auto& [k, p] : doc.structure) out << key_text("C", k) << " = " << p.str() << "\n";
    for (const auto& [k, p] : doc.anchor_bar) out << key_text("Abar", k) << " = " << p.str() << "\n";
    for (const auto& [k, p] : doc.structure_bar) out << key_text("Cbar", k) << " = " << p.str() << "\n";
    if (doc.phi) out << "phi = " << doc.phi->str() << "\n";
    if (doc.psi) out << "psi = " << doc.psi->str() << "\n";
    if (doc.omega) out << "omega = " << doc.omega->str() << "\n";
    for (const auto& p : doc.span) out << "span = " << p.str() << "\n";
    if (doc.c) out << "c = " << to_string(*doc.c) << "\n";
    return out.str();
}

std::string preset_dir() {
    if (const char* env = std::getenv("DBRACKET_PRESET_DIR"); env && *env) return env;
    return DBRACKET_PRESET_DIR;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto& e : std::filesystem::directory_iterator(preset_dir(), ec))
        if (e.path().extension() == ".spec") out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

SpecDocument load_preset(const std::string& name) {
    auto path = std::filesystem::path(preset_dir()) / (name + ".spec");
    if (!std::filesystem::exists(path)) throw std::invalid_argument("unknown preset '" + name + "'");
    auto doc = load_spec_file(path.string());
    if (doc.preset.empty()) doc.preset = name;
    return doc;
}

}  // namespace dbr
