#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "polynomial.hpp"
#include "series.hpp"
#include "weights.hpp"

namespace latpoly {

// ---------------------------------------------------------------------------
// Binomials with the vanishing convention

/// C(n, k), zero unless 0 <= k <= n.
inline mpz_class binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

/// C_{n;k} = C(2n, k) - C(2n, k-1).
inline mpz_class extended_catalan(long n, long k) { return binomial(2 * n, k) - binomial(2 * n, k - 1); }

namespace detail {

inline rational ratio(long num, long den) {
    rational q(num, den);
    q.canonicalize();
    return q;
}

inline const polynomial& kappa_hat() {
    static const polynomial p = var("kappa_hat");
    return p;
}
inline const polynomial& omega_hat() {
    static const polynomial p = var("omega_hat");
    return p;
}

/// CT_rho[numerator / denominator], expanding 1/denominator from its lowest
/// rho power just far enough for the constant term.
inline polynomial ct_of_ratio(const polynomial& numerator, const polynomial& denominator) {
    const int need = std::max(0, -numerator.min_exponent(rho_symbol()));
    const int m = denominator.min_exponent(rho_symbol());
    return constant_term(series_invert(denominator, need + m) * numerator);
}

[[noreturn]] inline void bound_violated(const char* where) {
    throw std::logic_error(std::string(where) + ": nonzero summand beyond the derived summation bound");
}

// Accumulates integer multiples of power products of a few fixed polynomials.
template <std::size_t N>
class power_accumulator {
public:
    using key = std::array<int, N>;

    void add(const key& k, const rational& c) {
        if (c == 0) return;
        auto& slot = sums_[k];
        slot += c;
    }

    polynomial expand(const std::array<polynomial, N>& bases) const {
        std::map<std::pair<std::size_t, int>, polynomial> powers;
        auto power = [&](std::size_t i, int e) -> const polynomial& {
            auto key = std::make_pair(i, e);
            if (auto it = powers.find(key); it != powers.end()) return it->second;
            return powers.emplace(key, pow(bases[i], e)).first->second;
        };
        polynomial out;
        for (const auto& [k, c] : sums_) {
            if (c == 0) continue;
            polynomial term(c);
            for (std::size_t i = 0; i < N; ++i)
                if (k[i] != 0) term *= power(i, k[i]);
            out += term;
        }
        return out;
    }

private:
    std::map<key, rational> sums_;
};

} // namespace detail

// ---------------------------------------------------------------------------
// Two decorated walls

/// Dyck paths of length 2r in a strip of height L with lambda_1 = kappa,
/// lambda_L = omega and every other down weight 1.
struct dmr_params {
    int r = 0;
    int L = 2;
    polynomial kappa = var("kappa");
    polynomial omega = var("omega");

    void validate() const {
        if (L < 2) throw invalid_query("dmr model needs L >= 2 so heights 1 and L differ (got L = " +
                                       std::to_string(L) + ")");
        if (r < 0) throw invalid_query("dmr model needs r >= 0");
    }
};

inline weight_spec dmr_weights(const dmr_params& p) {
    p.validate();
    weight_spec w{polynomial(0), polynomial(1), {}, {}, p.L};
    w.down.emplace(1, p.kappa - polynomial(1));
    w.down.emplace(p.L, p.omega - polynomial(1));
    return w;
}

namespace detail {
inline polynomial unhat_dmr(const polynomial& p, const dmr_params& params) {
    return substitute(p, {{intern("kappa_hat"), params.kappa - polynomial(1)},
                          {intern("omega_hat"), params.omega - polynomial(1)}});
}
} // namespace detail

/// CT[(rho+1/rho)^{2r} (1-rho^2) (A rho^L - B rho^-L) / (AC rho^L - BD rho^-L)]
/// with A = rho^2 - omegahat, B = 1 - omegahat rho^2, C = rho^2 - kappahat, D = 1 - kappahat rho^2.
inline polynomial dmr_ct(const dmr_params& p) {
    p.validate();
    const polynomial& kh = detail::kappa_hat();
    const polynomial& wh = detail::omega_hat();
    const polynomial A = rho(2) - wh;
    const polynomial B = polynomial(1) - wh * rho(2);
    const polynomial C = rho(2) - kh;
    const polynomial D = polynomial(1) - kh * rho(2);
    const polynomial numerator =
        pow(rho() + rho(-1), 2 * p.r) * (polynomial(1) - rho(2)) * (A * rho(p.L) - B * rho(-p.L));
    const polynomial denominator = A * C * rho(p.L) - B * D * rho(-p.L);
    return detail::unhat_dmr(detail::ct_of_ratio(numerator, denominator), p);
}

/// Five-fold binomial sum for the two-wall model. Every infinite range is cut
/// where the extended Catalan numbers leave their support; one extra layer
/// past each cut is evaluated and must vanish.
inline polynomial dmr_sum(const dmr_params& p) {
    p.validate();
    const long r = p.r, L = p.L;
    detail::power_accumulator<2> acc; // kappahat^a omegahat^b

    for (long m = 0; m <= r + 1; ++m) {
        const mpz_class c = extended_catalan(r, r - m);
        if (m == r + 1 && c != 0) detail::bound_violated("dmr_sum first sum");
        acc.add({static_cast<int>(m), 0}, rational(c));
    }

    // k = p1 + p2 - s1 - s2 + (L+2)m - 1 must not exceed r; since s1, s2 <= m
    // this needs L m - 1 <= r.
    const long m_max = (r + 1) / L;
    for (long m = 1; m <= m_max + 1; ++m) {
        const bool guard_m = m > m_max;
        for (long s1 = 0; s1 <= m; ++s1) {
            for (long s2 = 0; s2 <= m; ++s2) {
                const long p_bound = r + 1 + s1 + s2 - (L + 2) * m;
                for (long total = 0; total <= std::max(p_bound, -1L) + 1; ++total) {
                    const bool guard = guard_m || total > p_bound;
                    for (long p1 = 0; p1 <= total; ++p1) {
                        const long p2 = total - p1;
                        const long k = p1 + p2 - s1 - s2 + (L + 2) * m - 1;
                        const mpz_class prefix = binomial(m, s1) * binomial(m, s2) * binomial(m - 1 + p1, p1) *
                                                 binomial(m + p2, p2);
                        if (prefix == 0) continue;
                        const rational bracket = rational(extended_catalan(r, r - k - 1)) -
                                                 detail::ratio(m - s2, m + p2) * rational(extended_catalan(r, r - k));
                        rational term = rational(prefix) * bracket;
                        if ((s1 + s2) % 2 != 0) term = -term;
                        if (term == 0) continue;
                        if (guard) detail::bound_violated("dmr_sum");
                        acc.add({static_cast<int>(s2 + p2), static_cast<int>(s1 + p1)}, term);
                    }
                }
            }
        }
    }
    return detail::unhat_dmr(acc.expand({detail::kappa_hat(), detail::omega_hat()}), p);
}

// ---------------------------------------------------------------------------
// Two decorated rows at each wall

/// lambda_1 = kappa1, lambda_2 = kappa2, lambda_{L-1} = omega2, lambda_L = omega1.
struct four_weight_params {
    int r = 0;
    int L = 4;
    polynomial kappa1 = var("kappa_1");
    polynomial kappa2 = var("kappa_2");
    polynomial omega1 = var("omega_1");
    polynomial omega2 = var("omega_2");

    void validate() const {
        if (L < 4) throw invalid_query("four-weight model needs L >= 4 so heights 1, 2, L-1, L differ (got L = " +
                                       std::to_string(L) + ")");
        if (r < 0) throw invalid_query("four-weight model needs r >= 0");
    }
};

inline weight_spec four_weight_weights(const four_weight_params& p) {
    p.validate();
    weight_spec w{polynomial(0), polynomial(1), {}, {}, p.L};
    w.down.emplace(1, p.kappa1 - polynomial(1));
    w.down.emplace(2, p.kappa2 - polynomial(1));
    w.down.emplace(p.L - 1, p.omega2 - polynomial(1));
    w.down.emplace(p.L, p.omega1 - polynomial(1));
    return w;
}

namespace detail {
inline std::map<symbol_id, polynomial> four_weight_unhat(const four_weight_params& p) {
    return {{intern("kappa_hat_1"), p.kappa1 - polynomial(1)},
            {intern("kappa_hat_2"), p.kappa2 - polynomial(1)},
            {intern("omega_hat_1"), p.omega1 - polynomial(1)},
            {intern("omega_hat_2"), p.omega2 - polynomial(1)}};
}
} // namespace detail

/// CT[(rho+1/rho)^{2r} (A B rho^L - Abar Bbar rho^-L) / (C B rho^L - Cbar Bbar rho^-L) (1/rho - rho)].
inline polynomial four_weight_ct(const four_weight_params& p) {
    p.validate();
    const polynomial k1 = var("kappa_hat_1"), k2 = var("kappa_hat_2");
    const polynomial w1 = var("omega_hat_1"), w2 = var("omega_hat_2");
    const polynomial A = polynomial(1) - k2 * rho(-2);
    const polynomial Abar = polynomial(1) - k2 * rho(2);
    const polynomial B = rho() - (w1 + w2) * rho(-1) - w2 * rho(-3);
    const polynomial Bbar = rho(-1) - (w1 + w2) * rho() - w2 * rho(3);
    const polynomial C = rho() - (k1 + k2) * rho(-1) - k2 * rho(-3);
    const polynomial Cbar = rho(-1) - (k1 + k2) * rho() - k2 * rho(3);
    const polynomial numerator = pow(rho() + rho(-1), 2 * p.r) * (A * B * rho(p.L) - Abar * Bbar * rho(-p.L)) *
                                 (rho(-1) - rho());
    const polynomial denominator = C * B * rho(p.L) - Cbar * Bbar * rho(-p.L);
    return substitute(detail::ct_of_ratio(numerator, denominator), detail::four_weight_unhat(p));
}

/// Nine-fold binomial sum for the four-weight model, in the compound variables
/// kappahat_2, kappahat_1 + kappahat_2, omegahat_2, omegahat_1 + omegahat_2.
inline polynomial four_weight_sum(const four_weight_params& p) {
    p.validate();
    const long r = p.r, L = p.L, two_r = 2 * p.r;
    // key: (kappahat_2, kappahat_1 + kappahat_2, omegahat_2, omegahat_1 + omegahat_2)
    detail::power_accumulator<4> acc;

    // u0 = r + 2i - j >= r + i, and every binomial vanishes once u0 > 2r.
    for (long i = 0; i <= r + 1; ++i) {
        for (long j = 0; j <= i; ++j) {
            const long u0 = r + 2 * i - j;
            const mpz_class c = binomial(i, j);
            // kappahat_2 * C(2r, u0+2) - (kappahat_2 + 1) C(2r, u0+1) + C(2r, u0)
            const mpz_class with_k2 = binomial(two_r, u0 + 2) - binomial(two_r, u0 + 1);
            const mpz_class plain = binomial(two_r, u0) - binomial(two_r, u0 + 1);
            if (i == r + 1 && c * with_k2 != 0) detail::bound_violated("four_weight_sum first sum");
            if (i == r + 1 && c * plain != 0) detail::bound_violated("four_weight_sum first sum");
            acc.add({static_cast<int>(i - j + 1), static_cast<int>(j), 0, 0}, rational(c * with_k2));
            acc.add({static_cast<int>(i - j), static_cast<int>(j), 0, 0}, rational(c * plain));
        }
    }

    // u1 >= r + m(L-2) + v1 + v2 and the smallest binomial index is u1 - 1 <= 2r.
    const long m_max = (r + 1) / (L - 2);
    for (long m = 1; m <= m_max + 1; ++m) {
        const bool guard_m = m > m_max;
        const long v_bound = r + 1 - m * (L - 2);
        for (long s1 = 0; s1 <= m; ++s1)
            for (long i1 = 0; i1 <= s1; ++i1)
                for (long s2 = 0; s2 <= m; ++s2)
                    for (long i2 = 0; i2 <= s2; ++i2)
                        for (long v_total = 0; v_total <= std::max(v_bound, -1L) + 1; ++v_total) {
                            const bool guard = guard_m || v_total > v_bound;
                            for (long v1 = 0; v1 <= v_total; ++v1) {
                                const long v2 = v_total - v1;
                                for (long j1 = 0; j1 <= v1; ++j1)
                                    for (long j2 = 0; j2 <= v2; ++j2) {
                                        mpz_class prefix = binomial(s1, i1) * binomial(m, s2) * binomial(s2, i2) *
                                                           binomial(v1, j1) * binomial(v2 + m - 1, m - 1) *
                                                           binomial(v2, j2);
                                        if (prefix == 0) continue;
                                        if ((s1 + s2 + i1 + i2) % 2 != 0) prefix = -prefix;
                                        const long u1 = r + m * L + v1 + v2 + s1 + s2 + j1 + j2 - 2 * i1 - 2 * i2;
                                        const int e_k2 = static_cast<int>(i1 + j1);
                                        const int e_w2 = static_cast<int>(i2 + j2);
                                        const int e_W = static_cast<int>(m + v2 - s2 - j2);
                                        const long e_K = m + v1 - 1 - s1 - j1; // may be -1 when s1 = m, j1 = v1

                                        // first brace term carries an extra (kappahat_1 + kappahat_2)
                                        const mpz_class c1 = prefix * binomial(m, s1) * binomial(v1 + m, m);
                                        const mpz_class c1_k2 = c1 * (binomial(two_r, u1 + 2) - binomial(two_r, u1 + 1));
                                        const mpz_class c1_plain = c1 * (binomial(two_r, u1) - binomial(two_r, u1 + 1));
                                        // second brace term, subtracted
                                        const mpz_class c2 = prefix * binomial(m - 1, s1) * binomial(v1 + m - 1, m - 1);
                                        const mpz_class c2_k2 = c2 * (binomial(two_r, u1 - 1) - binomial(two_r, u1));
                                        const mpz_class c2_plain = c2 * (binomial(two_r, u1 + 1) - binomial(two_r, u1));

                                        if (guard && (c1_k2 != 0 || c1_plain != 0 || c2_k2 != 0 || c2_plain != 0))
                                            detail::bound_violated("four_weight_sum");
                                        const int eK1 = static_cast<int>(e_K + 1);
                                        acc.add({e_k2 + 1, eK1, e_w2, e_W}, rational(c1_k2));
                                        acc.add({e_k2, eK1, e_w2, e_W}, rational(c1_plain));
                                        if (c2_k2 != 0 || c2_plain != 0) {
                                            if (e_K < 0) throw std::logic_error("four_weight_sum: negative exponent");
                                            acc.add({e_k2 + 1, static_cast<int>(e_K), e_w2, e_W}, rational(-c2_k2));
                                            acc.add({e_k2, static_cast<int>(e_K), e_w2, e_W}, rational(-c2_plain));
                                        }
                                    }
                            }
                        }
    }
    const polynomial k1 = var("kappa_hat_1"), k2 = var("kappa_hat_2");
    const polynomial w1 = var("omega_hat_1"), w2 = var("omega_hat_2");
    return substitute(acc.expand({k2, k1 + k2, w2, w1 + w2}), detail::four_weight_unhat(p));
}

// ---------------------------------------------------------------------------
// Arbitrary down weights, summed by maximum height

/// Nullopt stands for the half plane.
using strip_height = std::optional<int>;

/// Weights lambda_i = kappas[i-1] (b = 0), for comparing against the generic engines.
inline weight_spec rogers_weights(int L, std::span<const polynomial> kappas) {
    weight_spec w{polynomial(0), polynomial(1), {}, {}, L};
    for (int i = 1; i <= L && i <= static_cast<int>(kappas.size()); ++i)
        w.down.emplace(i, kappas[static_cast<std::size_t>(i - 1)] - polynomial(1));
    return w;
}

/// Weight of the length-2n Dyck paths whose maximum height is exactly l + 1:
///   sum over n = j_0 > j_1 > ... > j_l > j_{l+1} = 0 (with j_i >= l - i + 1) of
///   prod_{k<l} C(j_k - j_{k+2} - 1, j_{k+1} - j_{k+2}) prod_i kappa_{i+1}^{j_i - j_{i+1}}.
/// `summands`, when given, is incremented once per evaluated summand.
inline polynomial stratified_weight(int n, int l, std::span<const polynomial> kappas, strip_height L = std::nullopt,
                                    std::uint64_t* summands = nullptr) {
    if (n < 0) throw invalid_query("stratified_weight: n must be nonnegative");
    if (l < 0) throw index_out_of_range("stratified_weight: l must be nonnegative");
    if (L && l > *L - 1)
        throw index_out_of_range("stratified_weight: l = " + std::to_string(l) + " exceeds L - 1 = " +
                                 std::to_string(*L - 1));
    if (l >= n) return {};
    if (static_cast<int>(kappas.size()) < l + 1)
        throw insufficient_weights("stratified_weight: need " + std::to_string(l + 1) + " weights, got " +
                                   std::to_string(kappas.size()));

    std::map<std::vector<int>, mpz_class> sums; // exponent of kappa_1..kappa_{l+1}
    std::vector<int> j(static_cast<std::size_t>(l + 2), 0);
    j[0] = n;
    j[static_cast<std::size_t>(l + 1)] = 0;
    auto rec = [&](auto& self, int idx) -> void {
        if (idx == l + 1) {
            if (summands) ++*summands;
            mpz_class c = 1;
            for (int k = 0; k < l && c != 0; ++k) {
                const auto u = static_cast<std::size_t>(k);
                c *= binomial(j[u] - j[u + 2] - 1, j[u + 1] - j[u + 2]);
            }
            if (c == 0) return;
            std::vector<int> e(static_cast<std::size_t>(l + 1));
            for (int i = 0; i <= l; ++i)
                e[static_cast<std::size_t>(i)] = j[static_cast<std::size_t>(i)] - j[static_cast<std::size_t>(i + 1)];
            sums[e] += c;
            return;
        }
        const auto u = static_cast<std::size_t>(idx);
        for (int v = l - idx + 1; v <= j[u - 1] - 1; ++v) {
            j[u] = v;
            self(self, idx + 1);
        }
    };
    rec(rec, 1);

    polynomial out;
    for (const auto& [e, c] : sums) {
        polynomial term{rational(c)};
        for (std::size_t i = 0; i < e.size(); ++i) term *= pow(kappas[i], e[i]);
        out += term;
    }
    return out;
}

/// Z_{2n} = sum_{l=0}^{min(n-1, L-1)} s_l; the empty path gives 1 for n = 0.
inline polynomial rogers(int n, strip_height L, std::span<const polynomial> kappas, std::uint64_t* summands = nullptr) {
    if (n < 0) throw invalid_query("rogers: n must be nonnegative");
    if (L && *L < 0) throw invalid_query("rogers: L must be nonnegative");
    if (n == 0) return polynomial(1);
    const int l_max = L ? std::min(n - 1, *L - 1) : n - 1;
    const int needed = L ? std::min(n, *L) : n;
    if (static_cast<int>(kappas.size()) < needed)
        throw insufficient_weights("rogers: need " + std::to_string(needed) + " weights, got " +
                                   std::to_string(kappas.size()));
    polynomial sum;
    for (int l = 0; l <= l_max; ++l) sum += stratified_weight(n, l, kappas, L, summands);
    return sum;
}

/// kappa_1, ..., kappa_count as symbols.
inline std::vector<polynomial> kappa_symbols(int count) {
    std::vector<polynomial> out;
    for (int i = 1; i <= count; ++i) out.push_back(var("kappa_" + std::to_string(i)));
    return out;
}

} // namespace latpoly
