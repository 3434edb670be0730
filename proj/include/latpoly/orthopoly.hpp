#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "polynomial.hpp"
#include "weights.hpp"

namespace latpoly {

/// Monic orthogonal polynomial P_k^{(j)} in x.
struct ortho_polynomial {
    int k = 0;
    int j = 0;
    polynomial value{1};

    friend bool operator==(const ortho_polynomial&, const ortho_polynomial&) = default;
};

/// All shifted polynomials P_0^{(j)}, ..., P_k^{(j)} from the three-term recurrence
///   P_k = (x - b_{k+j-1}) P_{k-1} - lambda_{k+j-1} P_{k-2}.
inline std::vector<polynomial> ortho_sequence(int k, int j, const weight_spec& w) {
    if (k < 0 || j < 0) throw std::invalid_argument("ortho_sequence: negative order or shift");
    std::vector<polynomial> p;
    p.reserve(static_cast<std::size_t>(k) + 1);
    p.emplace_back(1);
    if (k >= 1) p.push_back(x_var() - w.across_weight(j));
    for (int n = 2; n <= k; ++n) {
        const auto& p1 = p[static_cast<std::size_t>(n - 1)];
        const auto& p2 = p[static_cast<std::size_t>(n - 2)];
        p.push_back((x_var() - w.across_weight(n + j - 1)) * p1 - w.down_weight(n + j - 1) * p2);
    }
    return p;
}

inline ortho_polynomial ortho_poly(int k, int j, const weight_spec& w) {
    return ortho_polynomial{k, j, ortho_sequence(k, j, w).back()};
}

/// Undecorated family S_{k+1} = (x - b) S_k - lambda S_{k-1}, S_0 = 1, S_1 = x - b.
inline polynomial chebyshev_S(int k, const polynomial& b, const polynomial& lambda) {
    if (k < 0) throw std::invalid_argument("chebyshev_S: negative order");
    polynomial prev(1);
    if (k == 0) return prev;
    polynomial cur = x_var() - b;
    for (int n = 1; n < k; ++n) {
        polynomial next = (x_var() - b) * cur - lambda * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// x^k p(1/x) for the degree-k polynomial p.
inline polynomial reciprocal(const polynomial& p, int k) {
    std::vector<polynomial::term> out;
    out.reserve(p.size());
    const symbol_id x = x_symbol();
    for (const auto& t : p.terms()) {
        const int e = t.mono.exponent(x);
        if (e > k) throw std::invalid_argument("reciprocal: polynomial degree exceeds k");
        out.push_back({t.mono.without(x) * monomial::of(x, k - e), t.coeff});
    }
    return polynomial::from_terms(std::move(out));
}

inline polynomial reciprocal(const ortho_polynomial& p) { return reciprocal(p.value, p.k); }

/// Substitute x = rho + b + lambda/rho into a polynomial in x.
inline polynomial to_laurent(const polynomial& p, const rational& b, const rational& lambda) {
    if (lambda == 0) throw zero_lambda("to_laurent: lambda must be nonzero");
    const polynomial x_of_rho = rho() + polynomial(b) + polynomial(lambda) * rho(-1);
    return substitute(p, {{x_symbol(), x_of_rho}});
}

inline polynomial to_laurent(const ortho_polynomial& p, const rational& b, const rational& lambda) {
    return to_laurent(p.value, b, lambda);
}

/// (S_k(x0) by the exact recurrence with b = 0, lambda = 1, the closed form
/// ((x+s)^{k+1} - (x-s)^{k+1}) / (2^{k+1} s), s = sqrt(x^2 - 4), in floating point).
inline std::pair<double, double> chebyshev_closed_form_check(int k, double x0) {
    if (std::abs(x0 * x0 - 4.0) < 1e-6) throw near_branch_point("closed form is singular at x = +-2");
    // exact: the double is converted to a rational without rounding
    const rational xr(x0);
    rational prev(1), cur = xr;
    if (k == 0) cur = prev;
    for (int n = 1; n < k; ++n) {
        rational next = xr * cur - prev;
        prev = cur;
        cur = next;
    }
    const std::complex<double> s = std::sqrt(std::complex<double>(x0 * x0 - 4.0, 0.0));
    const std::complex<double> xc(x0, 0.0);
    const std::complex<double> closed =
        (std::pow(xc + s, k + 1) - std::pow(xc - s, k + 1)) / (std::pow(2.0, k + 1) * s);
    return {cur.get_d(), closed.real()};
}

} // namespace latpoly
