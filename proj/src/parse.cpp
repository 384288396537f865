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

#include "dbracket/parse.hpp"

#include <cctype>

namespace dbr {

namespace {

class Parser {
public:
    Parser(const std::string& text, const ChartPtr& chart) : s_(text), chart_(chart) {}

    Poly parse() {
        skip();
        if (pos_ >= s_.size()) fail("empty expression");
        Poly p = expr();
        skip();
        if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, static_cast<int>(pos_) + 1);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr() {
        Poly acc(chart_);
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        Poly t = term();
        acc += negate ? -t : t;
        for (;;) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    Poly term() {
        Poly acc = factor();
        for (;;) {
            if (accept('*')) {
                acc = acc * factor();
            } else {
                skip();
                size_t at = pos_;
                if (!accept('/')) return acc;
                Poly d = factor();
                if (!d.is_constant() || d.is_zero()) {
                    pos_ = at;
                    fail("division only by a nonzero constant");
                }
                acc *= GaussRat(1) / d.constant_term();
            }
        }
    }

    Poly factor() {
        Poly base = primary();
        if (accept('^')) {
            skip();
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            if (pos_ - start > 3) fail("exponent too large");
            return base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
        }
        return base;
    }

    Poly primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Rational q(s_.substr(start, pos_ - start), 10);
            return Poly(chart_, GaussRat(q));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            if (name == "i") return Poly(chart_, GaussRat::i());
            auto idx = chart_->find(name);
            if (!idx) {
                pos_ = start;
                fail("unknown variable '" + name + "'");
            }
            return Poly::variable(chart_, *idx);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    const std::string& s_;
    const ChartPtr& chart_;
    size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, const ChartPtr& chart) { return Parser(text, chart).parse(); }

}  // namespace dbr
