#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orthopoly.hpp"
#include "polynomial.hpp"
#include "series.hpp"
#include "weights.hpp"

namespace latpoly {

/// Weight polynomial query Z_t(y', y; L).
struct strip_query {
    int t = 0;
    int y_start = 0; ///< y'
    int y_end = 0;   ///< y
    int L = 0;

    int low() const noexcept { return std::min(y_start, y_end); }  ///< Y'
    int high() const noexcept { return std::max(y_start, y_end); } ///< Y

    void validate() const {
        if (L < 0) throw invalid_query("strip height L must be nonnegative");
        if (t < 0) throw invalid_query("path length t must be nonnegative");
        if (y_start < 0 || y_start > L || y_end < 0 || y_end > L)
            throw invalid_query("start and end heights must lie in [0, L]");
    }

    friend bool operator==(const strip_query&, const strip_query&) = default;
    friend auto operator<=>(const strip_query&, const strip_query&) = default;
};

inline std::string to_string(const strip_query& q) {
    return "t=" + std::to_string(q.t) + " L=" + std::to_string(q.L) + " y'=" + std::to_string(q.y_start) +
           " y=" + std::to_string(q.y_end);
}

enum class step { up, across, down };

/// A lattice path given by its start height and step sequence.
struct lattice_path {
    int start = 0;
    std::vector<step> steps;

    /// Heights v_0, ..., v_t.
    std::vector<int> heights() const {
        std::vector<int> h{start};
        for (step s : steps) h.push_back(h.back() + (s == step::up ? 1 : s == step::down ? -1 : 0));
        return h;
    }

    bool valid_in_strip(int L) const {
        for (int h : heights())
            if (h < 0 || h > L) return false;
        return true;
    }
};

/// Product of edge weights: up -> 1, across at height k -> b_k, down from height k -> lambda_k.
inline polynomial path_weight(const lattice_path& p, const weight_spec& w) {
    if (!p.valid_in_strip(w.L)) throw invalid_query("path leaves the strip");
    polynomial out(1);
    int h = p.start;
    for (step s : p.steps) {
        switch (s) {
        case step::up: ++h; break;
        case step::across: out *= w.across_weight(h); break;
        case step::down: out *= w.down_weight(h); --h; break;
        }
    }
    return out;
}

/// prod_{y < l <= y'} lambda_l when y' > y, else 1.
inline polynomial h_factor(const strip_query& q, const weight_spec& w) {
    polynomial h(1);
    for (int l = q.y_end + 1; l <= q.y_start; ++l) h *= w.down_weight(l);
    return h;
}

// ---------------------------------------------------------------------------
// Brute force

struct brute_force_options {
    int cap = 18;                          ///< largest t enumerated
    std::optional<int> exact_max_height{}; ///< keep only paths whose maximum height equals this
};

/// Every length-t path from y' to y in the strip, depth first with pruning.
inline std::vector<lattice_path> enumerate_paths(const strip_query& q) {
    q.validate();
    std::vector<lattice_path> out;
    lattice_path cur{q.y_start, {}};
    auto rec = [&](auto& self, int h) -> void {
        const int remaining = q.t - static_cast<int>(cur.steps.size());
        if (remaining == 0) {
            if (h == q.y_end) out.push_back(cur);
            return;
        }
        for (step s : {step::up, step::across, step::down}) {
            const int next = h + (s == step::up ? 1 : s == step::down ? -1 : 0);
            if (next < 0 || next > q.L || std::abs(next - q.y_end) > remaining - 1) continue;
            cur.steps.push_back(s);
            self(self, next);
            cur.steps.pop_back();
        }
    };
    rec(rec, q.y_start);
    return out;
}

/// Sum of path weights over all length-t paths from y' to y.
///
/// Paths are enumerated one by one; each contributes the product of its edge
/// weights. Products are grouped by edge multiplicities before expansion.
inline polynomial brute_force(const strip_query& q, const weight_spec& w, const brute_force_options& opt = {}) {
    q.validate();
    if (q.L != w.L) throw invalid_query("query and weights disagree on L");
    if (q.t > opt.cap)
        throw size_limit("brute force: t = " + std::to_string(q.t) + " exceeds the cap " + std::to_string(opt.cap));
    const int L = q.L;
    // edge slots: across at h -> h, down from h -> L + h
    std::vector<std::uint8_t> counts(static_cast<std::size_t>(2 * L + 1), 0);
    std::map<std::vector<std::uint8_t>, std::uint64_t> groups;
    int max_height = q.y_start;

    auto rec = [&](auto& self, int h, int remaining, int peak) -> void {
        if (remaining == 0) {
            if (h == q.y_end && (!opt.exact_max_height || *opt.exact_max_height == peak)) ++groups[counts];
            return;
        }
        if (h + 1 <= L && std::abs(h + 1 - q.y_end) <= remaining - 1 &&
            (!opt.exact_max_height || h + 1 <= *opt.exact_max_height))
            self(self, h + 1, remaining - 1, std::max(peak, h + 1));
        if (std::abs(h - q.y_end) <= remaining - 1) {
            auto& c = counts[static_cast<std::size_t>(h)];
            ++c;
            self(self, h, remaining - 1, peak);
            --c;
        }
        if (h - 1 >= 0 && std::abs(h - 1 - q.y_end) <= remaining - 1) {
            auto& c = counts[static_cast<std::size_t>(L + h)];
            ++c;
            self(self, h - 1, remaining - 1, peak);
            --c;
        }
    };
    rec(rec, q.y_start, q.t, max_height);

    std::vector<polynomial> edge(counts.size());
    for (int h = 0; h <= L; ++h) edge[static_cast<std::size_t>(h)] = w.across_weight(h);
    for (int h = 1; h <= L; ++h) edge[static_cast<std::size_t>(L + h)] = w.down_weight(h);
    std::map<std::pair<std::size_t, int>, polynomial> powers;
    auto power = [&](std::size_t e, int n) -> const polynomial& {
        auto key = std::make_pair(e, n);
        if (auto it = powers.find(key); it != powers.end()) return it->second;
        return powers.emplace(key, pow(edge[e], n)).first->second;
    };

    polynomial sum;
    for (const auto& [mult, n] : groups) {
        polynomial term(rational(mpz_class(std::to_string(n))));
        for (std::size_t e = 0; e < mult.size(); ++e)
            if (mult[e]) term *= power(e, mult[e]);
        sum += term;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Transfer matrix

using poly_matrix = std::vector<std::vector<polynomial>>;

/// Tridiagonal (L+1)x(L+1) Jacobi matrix: b_i on the diagonal, 1 above, lambda_i below.
inline poly_matrix jacobi_matrix(const weight_spec& w) {
    const auto n = static_cast<std::size_t>(w.L + 1);
    poly_matrix m(n, std::vector<polynomial>(n));
    for (int i = 0; i <= w.L; ++i) {
        const auto u = static_cast<std::size_t>(i);
        m[u][u] = w.across_weight(i);
        if (i < w.L) m[u][u + 1] = polynomial(1);
        if (i > 0) m[u][u - 1] = w.down_weight(i);
    }
    return m;
}

inline poly_matrix multiply(const poly_matrix& a, const poly_matrix& b) {
    const std::size_t n = a.size();
    poly_matrix c(n, std::vector<polynomial>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

/// T^t by repeated multiplication.
inline poly_matrix transfer_matrix_power(const weight_spec& w, int t) {
    const auto n = static_cast<std::size_t>(w.L + 1);
    poly_matrix result(n, std::vector<polynomial>(n));
    for (std::size_t i = 0; i < n; ++i) result[i][i] = polynomial(1);
    const poly_matrix m = jacobi_matrix(w);
    for (int s = 0; s < t; ++s) result = multiply(result, m);
    return result;
}

/// (T^t)_{y', y}, propagating the row e_{y'} through t multiplications.
inline polynomial transfer_matrix(const strip_query& q, const weight_spec& w) {
    q.validate();
    if (q.L != w.L) throw invalid_query("query and weights disagree on L");
    const poly_matrix m = jacobi_matrix(w);
    const auto n = static_cast<std::size_t>(q.L + 1);
    std::vector<polynomial> row(n);
    row[static_cast<std::size_t>(q.y_start)] = polynomial(1);
    for (int s = 0; s < q.t; ++s) {
        std::vector<polynomial> next(n);
        for (std::size_t k = 0; k < n; ++k) {
            if (row[k].is_zero()) continue;
            for (std::size_t j = (k == 0 ? 0 : k - 1); j <= std::min(n - 1, k + 1); ++j) next[j] += row[k] * m[k][j];
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(q.y_end)];
}

// ---------------------------------------------------------------------------
// Generating function and constant-term engines

namespace detail {

struct viennot_parts {
    polynomial numerator;   // reciprocal(P_{Y'}) * h * reciprocal(P^{(Y+1)}_{L-Y})
    polynomial denominator; // reciprocal(P_{L+1}), constant term 1
    int shift;              // Y - Y'
};

inline viennot_parts viennot_form(const strip_query& q, const weight_spec& w) {
    const int lo = q.low(), hi = q.high();
    polynomial num = reciprocal(ortho_poly(lo, 0, w)) * h_factor(q, w) * reciprocal(ortho_poly(q.L - hi, hi + 1, w));
    polynomial den = reciprocal(ortho_poly(q.L + 1, 0, w));
    return {std::move(num), std::move(den), hi - lo};
}

} // namespace detail

/// M_L(y', y; x) to order `order` in x, by dividing the numerator series by the
/// denominator coefficient by coefficient.
inline truncated_series generating_function(int y_start, int y_end, const weight_spec& w, int order) {
    if (order < 0) throw invalid_query("generating function order must be nonnegative");
    const strip_query q{0, y_start, y_end, w.L};
    q.validate();
    w.validate();
    const auto parts = detail::viennot_form(q, w);
    const symbol_id x = x_symbol();
    const auto num = parts.numerator.by_power(x);
    const auto den = parts.denominator.by_power(x);
    const int n_max = order - parts.shift;
    std::vector<polynomial> quotient(static_cast<std::size_t>(std::max(0, n_max + 1)));
    for (int n = 0; n <= n_max; ++n) {
        polynomial acc;
        if (auto it = num.find(n); it != num.end()) acc = it->second;
        for (const auto& [i, d] : den) {
            if (i == 0 || i > n) continue;
            acc -= d * quotient[static_cast<std::size_t>(n - i)];
        }
        // den has constant term 1
        quotient[static_cast<std::size_t>(n)] = std::move(acc);
    }
    std::vector<polynomial> coeffs(static_cast<std::size_t>(order + 1));
    for (int n = 0; n <= n_max; ++n)
        coeffs[static_cast<std::size_t>(n + parts.shift)] = std::move(quotient[static_cast<std::size_t>(n)]);
    return truncated_series(x, 0, order, std::move(coeffs));
}

/// [x^t] x^{Y-Y'} Pbar_{Y'} h Pbar^{(Y+1)}_{L-Y} / Pbar_{L+1}, with 1/Pbar_{L+1}
/// expanded as a power series.
inline polynomial viennot_ct(const strip_query& q, const weight_spec& w) {
    q.validate();
    w.validate();
    if (q.L != w.L) throw invalid_query("query and weights disagree on L");
    w.require_nonzero_lambdas(w.L);
    const auto parts = detail::viennot_form(q, w);
    const int n = q.t - parts.shift;
    if (n < 0) return {};
    const truncated_series inverse = series_invert(parts.denominator, n, x_symbol());
    return (inverse * parts.numerator).coefficient(n);
}

/// Absolute rho order to which 1/R_{L+1} is expanded in rho_ct.
inline int rho_ct_truncation(const strip_query& q) { return q.t + q.L + 2; }

/// CT_rho[(rho + b + lambda/rho)^t R_{Y'} h R^{(Y+1)}_{L-Y} / R_{L+1} (lambda/rho - rho)]
/// with R_k^{(j)}(rho) = P_k^{(j)}(rho + b + lambda/rho). The background must be rational.
inline polynomial rho_ct(const strip_query& q, const weight_spec& w) {
    q.validate();
    w.validate();
    if (q.L != w.L) throw invalid_query("query and weights disagree on L");
    if (!w.background_is_rational()) throw invalid_query("rho_ct needs rational background weights");
    const rational b = w.b.constant();
    const rational lambda = w.lambda.constant();
    if (lambda == 0) throw zero_lambda("rho_ct: background lambda must be nonzero");
    w.require_nonzero_lambdas(w.L);

    const int lo = q.low(), hi = q.high();
    const polynomial x_of_rho = rho() + polynomial(b) + polynomial(lambda) * rho(-1);
    polynomial integrand = pow(x_of_rho, q.t) * to_laurent(ortho_poly(lo, 0, w), b, lambda) * h_factor(q, w) *
                           to_laurent(ortho_poly(q.L - hi, hi + 1, w), b, lambda) *
                           (polynomial(lambda) * rho(-1) - rho());
    const polynomial denominator = to_laurent(ortho_poly(q.L + 1, 0, w), b, lambda);
    const int m = denominator.min_exponent(rho_symbol());
    const truncated_series inverse = series_invert(denominator, rho_ct_truncation(q) + m);
    // constant_term throws truncation_insufficient if the chosen order was too small
    return constant_term(inverse * integrand);
}

enum class engine { brute, tmatrix, viennot_ct, rho_ct, generating_function };

inline std::string to_string(engine e) {
    switch (e) {
    case engine::brute: return "brute";
    case engine::tmatrix: return "tmatrix";
    case engine::viennot_ct: return "viennot-ct";
    case engine::rho_ct: return "rho-ct";
    case engine::generating_function: return "gf";
    }
    return "?";
}

inline polynomial compute(engine e, const strip_query& q, const weight_spec& w, const brute_force_options& opt = {}) {
    switch (e) {
    case engine::brute: return brute_force(q, w, opt);
    case engine::tmatrix: return transfer_matrix(q, w);
    case engine::viennot_ct: return viennot_ct(q, w);
    case engine::rho_ct: return rho_ct(q, w);
    case engine::generating_function: return generating_function(q.y_start, q.y_end, w, q.t).coefficient(q.t);
    }
    throw std::logic_error("unknown engine");
}

} // namespace latpoly
