#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "symbol.hpp"

namespace latpoly {

using rational = mpq_class;

/// Power product of symbols, stored as (symbol, exponent) pairs sorted by id
/// with no zero exponents. Only rho may have a negative exponent.
class monomial {
public:
    using factor = std::pair<symbol_id, int>;

    monomial() = default;

    static monomial of(symbol_id s, int exponent) {
        monomial m;
        if (exponent != 0) {
            check_sign(s, exponent);
            m.factors_.emplace_back(s, exponent);
        }
        return m;
    }

    const std::vector<factor>& factors() const noexcept { return factors_; }
    bool empty() const noexcept { return factors_.empty(); }

    int exponent(symbol_id s) const noexcept {
        auto it = std::lower_bound(factors_.begin(), factors_.end(), factor{s, 0},
                                   [](const factor& a, const factor& b) { return a.first < b.first; });
        return (it != factors_.end() && it->first == s) ? it->second : 0;
    }

    int total_degree() const noexcept {
        int d = 0;
        for (const auto& f : factors_) d += f.second;
        return d;
    }

    monomial without(symbol_id s) const {
        monomial m;
        m.factors_.reserve(factors_.size());
        for (const auto& f : factors_)
            if (f.first != s) m.factors_.push_back(f);
        return m;
    }

    friend monomial operator*(const monomial& a, const monomial& b) {
        monomial m;
        m.factors_.reserve(a.factors_.size() + b.factors_.size());
        auto i = a.factors_.begin();
        auto j = b.factors_.begin();
        while (i != a.factors_.end() || j != b.factors_.end()) {
            if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
                m.factors_.push_back(*i++);
            } else if (i == a.factors_.end() || j->first < i->first) {
                m.factors_.push_back(*j++);
            } else {
                int e = i->second + j->second;
                if (e != 0) m.factors_.emplace_back(i->first, e);
                ++i;
                ++j;
            }
        }
        return m;
    }

    friend bool operator==(const monomial&, const monomial&) = default;
    friend auto operator<=>(const monomial&, const monomial&) = default;

    static void check_sign(symbol_id s, int exponent) {
        if (exponent < 0 && s != rho_symbol())
            throw std::domain_error("negative exponent on symbol '" + symbol_name(s) + "' (only rho may be negative)");
    }

private:
    std::vector<factor> factors_;
};

/// Sparse multivariate Laurent polynomial over the rationals.
///
/// Terms are kept sorted by monomial with zero coefficients removed after
/// every operation, so structural equality is mathematical equality.
class polynomial {
public:
    struct term {
        monomial mono;
        rational coeff;
    };

    polynomial() = default;
    polynomial(int c) : polynomial(rational(c)) {}
    polynomial(long c) : polynomial(rational(c)) {}
    polynomial(const rational& c) {
        if (c != 0) {
            terms_.push_back({monomial{}, c});
            terms_.back().coeff.canonicalize(); // mpq_class(n, d) leaves 2/2 alone
        }
    }

    static polynomial variable(symbol_id s, int exponent = 1) {
        polynomial p;
        p.terms_.push_back({monomial::of(s, exponent), rational(1)});
        return p;
    }
    static polynomial variable(std::string_view name, int exponent = 1) { return variable(intern(name), exponent); }

    static polynomial from_terms(std::vector<term> terms) {
        std::sort(terms.begin(), terms.end(), [](const term& a, const term& b) { return a.mono < b.mono; });
        polynomial p;
        p.terms_.reserve(terms.size());
        for (auto& t : terms) {
            t.coeff.canonicalize();
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
                p.terms_.back().coeff += t.coeff;
            } else {
                if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
                p.terms_.push_back(std::move(t));
            }
        }
        if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
        return p;
    }

    const std::vector<term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty()); }

    /// Coefficient of the empty monomial.
    rational constant() const {
        if (!terms_.empty() && terms_.front().mono.empty()) return terms_.front().coeff;
        return rational(0);
    }

    std::set<symbol_id> symbols() const {
        std::set<symbol_id> out;
        for (const auto& t : terms_)
            for (const auto& f : t.mono.factors()) out.insert(f.first);
        return out;
    }

    bool contains(symbol_id s) const {
        for (const auto& t : terms_)
            if (t.mono.exponent(s) != 0) return true;
        return false;
    }

    /// Largest exponent of `s`; 0 for the zero polynomial.
    int degree(symbol_id s) const {
        if (terms_.empty()) return 0;
        int d = terms_.front().mono.exponent(s);
        for (const auto& t : terms_) d = std::max(d, t.mono.exponent(s));
        return d;
    }

    /// Smallest exponent of `s`; 0 for the zero polynomial.
    int min_exponent(symbol_id s) const {
        if (terms_.empty()) return 0;
        int d = terms_.front().mono.exponent(s);
        for (const auto& t : terms_) d = std::min(d, t.mono.exponent(s));
        return d;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
        return d;
    }

    /// Coefficient of s^k as a polynomial in the remaining symbols.
    polynomial coefficient(symbol_id s, int k) const {
        std::vector<term> out;
        for (const auto& t : terms_)
            if (t.mono.exponent(s) == k) out.push_back({t.mono.without(s), t.coeff});
        return from_terms(std::move(out));
    }

    /// Split into coefficients of powers of `s`.
    std::map<int, polynomial> by_power(symbol_id s) const {
        std::map<int, std::vector<term>> groups;
        for (const auto& t : terms_) groups[t.mono.exponent(s)].push_back({t.mono.without(s), t.coeff});
        std::map<int, polynomial> out;
        for (auto& [k, ts] : groups) out.emplace(k, from_terms(std::move(ts)));
        return out;
    }

    polynomial operator-() const {
        polynomial p = *this;
        for (auto& t : p.terms_) t.coeff = -t.coeff;
        return p;
    }

    friend polynomial operator+(const polynomial& a, const polynomial& b) { return merge(a, b, false); }
    friend polynomial operator-(const polynomial& a, const polynomial& b) { return merge(a, b, true); }

    friend polynomial operator*(const polynomial& a, const polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_constant()) return b.scaled(a.terms_.front().coeff);
        if (b.is_constant()) return a.scaled(b.terms_.front().coeff);
        std::vector<term> out;
        out.reserve(a.size() * b.size());
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) out.push_back({x.mono * y.mono, x.coeff * y.coeff});
        return from_terms(std::move(out));
    }

    polynomial& operator+=(const polynomial& o) { return *this = *this + o; }
    polynomial& operator-=(const polynomial& o) { return *this = *this - o; }
    polynomial& operator*=(const polynomial& o) { return *this = *this * o; }

    polynomial scaled(const rational& c) const {
        if (c == 0) return {};
        polynomial p = *this;
        for (auto& t : p.terms_) t.coeff *= c;
        return p;
    }

    /// Multiply by s^k (k may be negative only for rho).
    polynomial shifted(symbol_id s, int k) const {
        if (k == 0) return *this;
        monomial m = monomial::of(s, k);
        polynomial p;
        p.terms_.reserve(terms_.size());
        for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff});
        // multiplying every term by the same monomial preserves uniqueness but not order
        std::sort(p.terms_.begin(), p.terms_.end(), [](const term& a, const term& b) { return a.mono < b.mono; });
        return p;
    }

    friend bool operator==(const polynomial& a, const polynomial& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
        return true;
    }

private:
    static polynomial merge(const polynomial& a, const polynomial& b, bool negate_b) {
        polynomial p;
        p.terms_.reserve(a.size() + b.size());
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->mono < j->mono)) {
                p.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->mono < i->mono) {
                p.terms_.push_back({j->mono, negate_b ? rational(-j->coeff) : j->coeff});
                ++j;
            } else {
                rational c = negate_b ? rational(i->coeff - j->coeff) : rational(i->coeff + j->coeff);
                if (c != 0) p.terms_.push_back({i->mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        return p;
    }

    std::vector<term> terms_;
};

inline polynomial pow(const polynomial& p, int n) {
    if (n < 0) throw std::domain_error("pow: negative exponent");
    polynomial result(1);
    polynomial base = p;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

inline polynomial var(std::string_view name, int exponent = 1) { return polynomial::variable(name, exponent); }

inline polynomial rho(int exponent = 1) { return polynomial::variable(rho_symbol(), exponent); }

inline polynomial x_var(int exponent = 1) { return polynomial::variable(x_symbol(), exponent); }

/// Coefficient of rho^0 as a polynomial in the other symbols.
inline polynomial constant_term_rho(const polynomial& p) { return p.coefficient(rho_symbol(), 0); }

/// Substitute symbols by polynomials. A negative exponent (only rho) can only
/// be substituted by a monomial unit c*rho^k.
inline polynomial substitute(const polynomial& p, const std::map<symbol_id, polynomial>& bindings) {
    if (bindings.empty()) return p;
    std::map<std::pair<symbol_id, int>, polynomial> powers;
    auto power_of = [&](symbol_id s, int e) -> const polynomial& {
        auto key = std::make_pair(s, e);
        if (auto it = powers.find(key); it != powers.end()) return it->second;
        const polynomial& value = bindings.at(s);
        polynomial v;
        if (e >= 0) {
            v = pow(value, e);
        } else {
            if (value.size() != 1) throw non_invertible_substitution("negative power of '" + symbol_name(s) +
                                                                     "' bound to a non-monomial");
            const auto& t = value.terms().front();
            for (const auto& f : t.mono.factors())
                if (f.first != rho_symbol())
                    throw non_invertible_substitution("negative power of '" + symbol_name(s) +
                                                      "' bound to a monomial that is not a unit");
            polynomial inv = polynomial(rational(1) / t.coeff).shifted(rho_symbol(), -t.mono.exponent(rho_symbol()));
            v = pow(inv, -e);
        }
        return powers.emplace(key, std::move(v)).first->second;
    };

    polynomial result;
    std::vector<polynomial::term> plain;
    for (const auto& t : p.terms()) {
        monomial rest;
        polynomial factor(1);
        bool bound = false;
        for (const auto& [s, e] : t.mono.factors()) {
            if (bindings.count(s)) {
                factor *= power_of(s, e);
                bound = true;
            } else {
                rest = rest * monomial::of(s, e);
            }
        }
        if (!bound) {
            plain.push_back(t);
            continue;
        }
        polynomial head = polynomial::from_terms({{rest, t.coeff}});
        result += head * factor;
    }
    return result + polynomial::from_terms(std::move(plain));
}

inline polynomial substitute(const polynomial& p, std::string_view name, const polynomial& value) {
    return substitute(p, std::map<symbol_id, polynomial>{{intern(name), value}});
}

/// Division by a polynomial that is monic in `v`. Returns (quotient, remainder)
/// with deg_v(remainder) < deg_v(divisor).
inline std::pair<polynomial, polynomial> divide_monic(const polynomial& dividend, const polynomial& divisor, symbol_id v) {
    const int dd = divisor.degree(v);
    if (divisor.is_zero() || divisor.coefficient(v, dd) != polynomial(1))
        throw std::invalid_argument("divide_monic: divisor is not monic in " + symbol_name(v));
    polynomial q;
    polynomial r = dividend;
    while (!r.is_zero() && r.degree(v) >= dd) {
        const int dr = r.degree(v);
        polynomial lead = r.coefficient(v, dr).shifted(v, dr - dd);
        q += lead;
        r -= lead * divisor;
    }
    return {q, r};
}

// ---------------------------------------------------------------------------
// Canonical rendering

namespace detail {

using named_monomial = std::vector<std::pair<const std::string*, int>>;

inline named_monomial by_name(const monomial& m) {
    named_monomial out;
    out.reserve(m.factors().size());
    for (const auto& [s, e] : m.factors()) out.emplace_back(&symbol_name(s), e);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return *a.first < *b.first; });
    return out;
}

// Graded order: higher total degree first, then the larger exponent at the
// alphabetically first symbol where the two differ.
inline bool canonical_before(const named_monomial& a, int deg_a, const named_monomial& b, int deg_b) {
    if (deg_a != deg_b) return deg_a > deg_b;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        const std::string* name;
        if (j == b.end() || (i != a.end() && *i->first < *j->first)) name = i->first;
        else name = j->first;
        int ea = (i != a.end() && *i->first == *name) ? i->second : 0;
        int eb = (j != b.end() && *j->first == *name) ? j->second : 0;
        if (ea != eb) return ea > eb;
        if (i != a.end() && *i->first == *name) ++i;
        if (j != b.end() && *j->first == *name) ++j;
    }
    return false;
}

inline std::vector<std::pair<named_monomial, const rational*>> canonical_terms(const polynomial& p) {
    struct entry {
        named_monomial names;
        int degree;
        const rational* coeff;
    };
    std::vector<entry> entries;
    entries.reserve(p.size());
    for (const auto& t : p.terms()) entries.push_back({by_name(t.mono), t.mono.total_degree(), &t.coeff});
    std::sort(entries.begin(), entries.end(), [](const entry& a, const entry& b) {
        return canonical_before(a.names, a.degree, b.names, b.degree);
    });
    std::vector<std::pair<named_monomial, const rational*>> out;
    out.reserve(entries.size());
    for (auto& e : entries) out.emplace_back(std::move(e.names), e.coeff);
    return out;
}

inline std::string latex_symbol(const std::string& name) {
    static const std::set<std::string> greek = {"alpha", "beta",  "gamma", "delta", "epsilon", "kappa", "lambda",
                                                "mu",    "nu",    "omega", "rho",   "sigma",   "tau",   "theta"};
    std::string base = name;
    std::string sub;
    if (auto pos = name.find('_'); pos != std::string::npos) {
        base = name.substr(0, pos);
        sub = name.substr(pos + 1);
    }
    std::string out = greek.count(base) ? "\\" + base : base;
    if (!sub.empty()) out += "_{" + sub + "}";
    return out;
}

} // namespace detail

/// Canonical text form, e.g. "kappa^2 + kappa*omega", "rho^2 + 4*rho + 6 + 4*rho^-1 + rho^-2".
inline std::string to_string(const polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [names, coeff] : detail::canonical_terms(p)) {
        rational c = *coeff;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        c = abs(c);
        if (names.empty()) {
            os << c.get_str();
            continue;
        }
        if (c != 1) os << c.get_str() << '*';
        bool first_factor = true;
        for (const auto& [name, e] : names) {
            if (!first_factor) os << '*';
            first_factor = false;
            os << *name;
            if (e != 1) os << '^' << e;
        }
    }
    return os.str();
}

inline std::string to_latex(const polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [names, coeff] : detail::canonical_terms(p)) {
        rational c = *coeff;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        c = abs(c);
        auto number = [&] {
            if (c.get_den() == 1) os << c.get_num().get_str();
            else os << "\\frac{" << c.get_num().get_str() << "}{" << c.get_den().get_str() << "}";
        };
        if (names.empty()) {
            number();
            continue;
        }
        if (c != 1) {
            number();
            os << ' ';
        }
        bool first_factor = true;
        for (const auto& [name, e] : names) {
            if (!first_factor) os << ' ';
            first_factor = false;
            os << detail::latex_symbol(*name);
            if (e != 1) os << "^{" << e << '}';
        }
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const polynomial& p) { return os << to_string(p); }

} // namespace latpoly
