#pragma once

// Text form of polynomials: integer coefficients, named variables, + - * ^ and
// parentheses, e.g. "p1*p2*l1*(p1+p2+p1*p2)" or "x^3 - 2*x".

#include <cctype>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adgraph/poly.hpp"

namespace adg {

class parse_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

class poly_parser {
public:
    poly_parser(std::string_view text, const Field& f, const std::vector<std::string>& vars)
        : text_(text), field_(f), vars_(vars) {}

    MultiPoly parse() {
        MultiPoly r = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return r;
    }

private:
    MultiPoly expr() {
        MultiPoly acc = term();
        for (;;) {
            skip_ws();
            if (accept('+')) acc = acc + term();
            else if (accept('-')) acc = acc - term();
            else return acc;
        }
    }

    MultiPoly term() {
        MultiPoly acc = factor();
        for (;;) {
            skip_ws();
            if (accept('*')) acc = acc * factor();
            else return acc;
        }
    }

    MultiPoly factor() {
        skip_ws();
        if (accept('-')) return -factor();
        if (accept('+')) return factor();
        MultiPoly b = base();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            const std::uint64_t n = integer();
            if (n > 100000) fail("exponent too large");
            b = pow(b, static_cast<std::uint32_t>(n));
        }
        return b;
    }

    MultiPoly base() {
        skip_ws();
        if (accept('(')) {
            MultiPoly r = expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            // reduce digit by digit so large literals stay in range
            std::int64_t value = 0;
            const std::int64_t p = field_.p();
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                value = (value * 10 + (text_[pos_++] - '0')) % p;
            return MultiPoly::constant(field_, vars_.size(), field_.from_int(value));
        }
        if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == name) return MultiPoly::variable(field_, vars_.size(), i);
            fail("unknown variable '" + name + "'");
        }
        fail("expected a number, variable or '('");
    }

    std::uint64_t integer() {
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected a non-negative integer exponent");
        std::uint64_t n = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            n = n * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
            if (n > 1000000) fail("exponent too large");
        }
        return n;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error("polynomial \"" + std::string(text_) + "\" at offset " +
                          std::to_string(pos_) + ": " + msg);
    }

    std::string_view text_;
    const Field& field_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses text over the given variable names (variable i of the result is
/// vars[i]); integer coefficients are reduced into the prime subfield.
inline MultiPoly parse_poly(std::string_view text, const Field& f,
                            const std::vector<std::string>& vars) {
    return detail::poly_parser(text, f, vars).parse();
}

/// Identifier tokens appearing in the text, in sorted order.
inline std::set<std::string> poly_identifiers(std::string_view text) {
    std::set<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isalpha(static_cast<unsigned char>(text[i]))) {
            const std::size_t start = i;
            while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
            out.emplace(text.substr(start, i - start));
        } else {
            ++i;
        }
    }
    return out;
}

/// Univariate parse accepting x or X as the variable.
inline MultiPoly parse_univariate(std::string_view text, const Field& f) {
    const auto ids = poly_identifiers(text);
    const std::string var = ids.count("X") ? "X" : "x";
    if (ids.size() > 1 || (ids.size() == 1 && !ids.count(var)))
        throw parse_error("univariate polynomial must use a single variable x");
    return parse_poly(text, f, {var});
}

}  // namespace adg
