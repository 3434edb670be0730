#pragma once

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "polynomial.hpp"

namespace latpoly {

namespace detail {

// Recursive descent over
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := ('+'|'-') unary | power
//   power   := primary ('^' ['-'] digits)?
//   primary := digits | identifier | '(' expr ')'
// Division is only by nonzero constants; decimal points are rejected.
class polynomial_parser {
public:
    polynomial_parser(std::string_view text, const std::set<std::string>* allowed)
        : text_(text), allowed_(allowed) {}

    polynomial parse() {
        polynomial p = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error("cannot parse \"" + std::string(text_) + "\" at offset " + std::to_string(pos_) + ": " + msg);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    polynomial expr() {
        polynomial p = term();
        for (;;) {
            if (accept('+')) p += term();
            else if (accept('-')) p -= term();
            else return p;
        }
    }

    polynomial term() {
        polynomial p = unary();
        for (;;) {
            if (accept('*')) {
                p *= unary();
            } else if (accept('/')) {
                polynomial d = unary();
                if (!d.is_constant() || d.is_zero()) fail("division is only allowed by a nonzero constant");
                p = p.scaled(rational(1) / d.constant());
            } else {
                return p;
            }
        }
    }

    polynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    polynomial power() {
        polynomial base = primary();
        if (!accept('^')) return base;
        skip_space();
        bool negative = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            negative = true;
            ++pos_;
        }
        std::string digits = read_digits();
        if (digits.empty()) fail("expected an integer exponent");
        int e = std::stoi(digits);
        if (!negative) return pow(base, e);
        if (base.size() != 1) fail("negative power of a non-monomial");
        const auto& t = base.terms().front();
        polynomial inv = polynomial(rational(1) / t.coeff);
        for (const auto& [s, k] : t.mono.factors()) {
            if (s != rho_symbol()) fail("negative power of '" + symbol_name(s) + "' (only rho may be negative)");
            inv = inv.shifted(s, -k);
        }
        return pow(inv, e);
    }

    std::string read_digits() {
        std::string out;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) out += text_[pos_++];
        return out;
    }

    polynomial primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            polynomial p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits = read_digits();
            if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
                fail("floating-point literals are not allowed; use a fraction");
            return polynomial(rational(mpz_class(digits)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                name += text_[pos_++];
            if (allowed_ && !allowed_->count(name)) fail("undeclared symbol '" + name + "'");
            return polynomial::variable(name);
        }
        if (c == '.') fail("floating-point literals are not allowed; use a fraction");
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const std::set<std::string>* allowed_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parse polynomial text such as "kappa-1", "3/2", "rho^2 + 4*rho + 6 + 4*rho^-1".
/// When `allowed` is given, any other identifier is an error.
inline polynomial parse_polynomial(std::string_view text, const std::set<std::string>* allowed = nullptr) {
    return detail::polynomial_parser(text, allowed).parse();
}

/// Parse an exact rational such as "3", "-1/2".
inline rational parse_rational(std::string_view text) {
    polynomial p = parse_polynomial(text);
    if (!p.is_constant()) throw parse_error("not a rational number: \"" + std::string(text) + "\"");
    return p.constant();
}

} // namespace latpoly
