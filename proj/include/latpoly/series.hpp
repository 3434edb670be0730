#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace latpoly {

/// Laurent series in one variable, known exactly up to and including
/// `order()`. Coefficients are polynomials in the remaining symbols.
class truncated_series {
public:
    truncated_series() = default;

    truncated_series(symbol_id var, int low, int order, std::vector<polynomial> coeffs)
        : var_(var), low_(low), order_(order), coeffs_(std::move(coeffs)) {
        coeffs_.resize(static_cast<std::size_t>(std::max(0, order_ - low_ + 1)));
    }

    /// Truncate an exact Laurent polynomial.
    static truncated_series from_polynomial(const polynomial& p, symbol_id var, int order) {
        const int low = p.is_zero() ? std::min(0, order) : std::min(p.min_exponent(var), order + 1);
        truncated_series s(var, low, order, {});
        for (auto& [k, c] : p.by_power(var))
            if (k <= order) s.coeffs_[static_cast<std::size_t>(k - low)] = std::move(c);
        return s;
    }

    symbol_id variable() const noexcept { return var_; }
    int low() const noexcept { return low_; }
    int order() const noexcept { return order_; }

    /// Coefficient of var^n. Throws truncation_insufficient when n lies beyond the known range.
    const polynomial& coefficient(int n) const {
        static const polynomial zero;
        if (n > order_)
            throw truncation_insufficient("coefficient of " + symbol_name(var_) + "^" + std::to_string(n) +
                                          " requested from a series known only to order " + std::to_string(order_));
        if (n < low_) return zero;
        return coeffs_[static_cast<std::size_t>(n - low_)];
    }

    /// The known part as an exact Laurent polynomial.
    polynomial truncated() const {
        polynomial out;
        for (int n = low_; n <= order_; ++n) out += coeffs_[static_cast<std::size_t>(n - low_)].shifted(var_, n);
        return out;
    }

    friend truncated_series operator*(const truncated_series& s, const polynomial& p) {
        if (p.is_zero()) return truncated_series(s.var_, s.order_ + 1, s.order_, {});
        const auto parts = p.by_power(s.var_);
        const int pmin = parts.begin()->first;
        truncated_series out(s.var_, s.low_ + pmin, s.order_ + pmin, {});
        for (const auto& [k, c] : parts) {
            for (int n = s.low_; n <= s.order_; ++n) {
                const int e = n + k;
                if (e > out.order_) break;
                const auto& sc = s.coeffs_[static_cast<std::size_t>(n - s.low_)];
                if (sc.is_zero()) continue;
                out.coeffs_[static_cast<std::size_t>(e - out.low_)] += sc * c;
            }
        }
        return out;
    }

    friend truncated_series operator*(const polynomial& p, const truncated_series& s) { return s * p; }

    friend truncated_series operator*(const truncated_series& a, const truncated_series& b) {
        const int low = a.low_ + b.low_;
        const int order = std::min(a.order_ + b.low_, b.order_ + a.low_);
        truncated_series out(a.var_, low, order, {});
        for (int i = a.low_; i <= a.order_; ++i) {
            const auto& ca = a.coeffs_[static_cast<std::size_t>(i - a.low_)];
            if (ca.is_zero()) continue;
            for (int j = b.low_; j <= b.order_ && i + j <= order; ++j) {
                const auto& cb = b.coeffs_[static_cast<std::size_t>(j - b.low_)];
                if (cb.is_zero()) continue;
                out.coeffs_[static_cast<std::size_t>(i + j - low)] += ca * cb;
            }
        }
        return out;
    }

    friend bool operator==(const truncated_series& a, const truncated_series& b) {
        if (a.var_ != b.var_ || a.order_ != b.order_) return false;
        for (int n = std::min(a.low_, b.low_); n <= a.order_; ++n)
            if (a.coefficient(n) != b.coefficient(n)) return false;
        return true;
    }

private:
    symbol_id var_ = rho_symbol();
    int low_ = 0;
    int order_ = -1;
    std::vector<polynomial> coeffs_;
};

/// Constant term of an exact Laurent polynomial in rho.
inline polynomial constant_term(const polynomial& p) { return constant_term_rho(p); }

/// Constant term of a truncated series; the series must be known through order 0.
inline polynomial constant_term(const truncated_series& s) {
    if (s.order() < 0)
        throw truncation_insufficient("constant term requested from a series truncated at order " +
                                      std::to_string(s.order()));
    return s.coefficient(0);
}

/// Lowest-order Laurent expansion of 1/d in `var`.
///
/// With m the lowest exponent of d, the returned series s satisfies
/// d*s = 1 + O(var^(order+1)); s starts at var^-m and is known through
/// var^(order-m). The coefficient of var^m must be a nonzero rational.
inline truncated_series series_invert(const polynomial& d, int order, symbol_id var = rho_symbol()) {
    if (d.is_zero()) throw non_unit_leading_coefficient("series_invert: zero denominator");
    const auto parts = d.by_power(var);
    const int m = parts.begin()->first;
    const polynomial& lead = parts.begin()->second;
    if (!lead.is_constant())
        throw non_unit_leading_coefficient("series_invert: lowest coefficient " + to_string(lead) +
                                           " is not a nonzero rational constant");
    const rational inv_lead = rational(1) / lead.constant();
    const int n_terms = std::max(0, order + 1);
    std::vector<polynomial> s(static_cast<std::size_t>(n_terms));
    // normalized denominator coefficients d_{m+i}
    std::vector<const polynomial*> dn;
    for (const auto& [k, c] : parts) {
        const auto i = static_cast<std::size_t>(k - m);
        if (dn.size() <= i) dn.resize(i + 1, nullptr);
        dn[i] = &c;
    }
    for (int n = 0; n < n_terms; ++n) {
        if (n == 0) {
            s[0] = polynomial(inv_lead);
            continue;
        }
        polynomial acc;
        for (int i = 1; i <= n && static_cast<std::size_t>(i) < dn.size(); ++i)
            if (dn[static_cast<std::size_t>(i)]) acc += *dn[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(n - i)];
        s[static_cast<std::size_t>(n)] = (-acc).scaled(inv_lead);
    }
    return truncated_series(var, -m, order - m, std::move(s));
}

inline std::string to_string(const truncated_series& s) {
    const std::string& name = symbol_name(s.variable());
    auto power = [&](int n) { return n == 1 ? name : name + "^" + std::to_string(n); };
    std::ostringstream os;
    bool first = true;
    for (int n = s.low(); n <= s.order(); ++n) {
        const auto& c = s.coefficient(n);
        if (c.is_zero()) continue;
        std::string text;
        if (n == 0) text = to_string(c);
        else if (c.size() == 1) text = to_string(c.shifted(s.variable(), n));
        else text = "(" + to_string(c) + ")*" + power(n);
        if (first) os << text;
        else if (text.front() == '-' && (c.size() == 1 || n == 0)) os << " - " << text.substr(1);
        else os << " + " << text;
        first = false;
    }
    if (!first) os << " + ";
    os << "O(" << power(s.order() + 1) << ')';
    return os.str();
}

} // namespace latpoly
