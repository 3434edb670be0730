#pragma once

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "orthopoly.hpp"
#include "polynomial.hpp"
#include "weights.hpp"

namespace latpoly {

// ---------------------------------------------------------------------------
// Pavings of the path graph v_0 - v_1 - ... - v_{k-1}; edge e_i joins v_{i-1} and v_i.

enum class paver_kind { uncovered, monomer, dimer };

enum class paving_family { ballot, motzkin };

struct paver {
    paver_kind kind;
    int position; ///< vertex index, or edge index i (1 <= i < k) for a dimer

    friend bool operator==(const paver&, const paver&) = default;
};

struct paving {
    int order = 0;
    std::vector<paver> pavers; ///< left to right

    friend bool operator==(const paving&, const paving&) = default;
};

/// a(k) = a(k-1) + a(k-2) for Ballot, 2a(k-1) + a(k-2) for Motzkin.
inline std::uint64_t paving_count(int k, paving_family family) {
    if (k <= 0) return 1;
    const std::uint64_t mult = family == paving_family::ballot ? 1 : 2;
    std::uint64_t prev = 1, cur = mult;
    for (int n = 2; n <= k; ++n) {
        std::uint64_t next = mult * cur + prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

inline constexpr std::uint64_t default_paving_cap = 2'000'000;

inline std::vector<paving> enumerate_pavings(int k, paving_family family,
                                             std::uint64_t cap = default_paving_cap) {
    if (k < 0) throw std::invalid_argument("enumerate_pavings: negative order");
    if (paving_count(k, family) > cap)
        throw size_limit("enumerate_pavings: " + std::to_string(paving_count(k, family)) +
                         " pavings of order " + std::to_string(k) + " exceed the cap " + std::to_string(cap));
    std::vector<paving> out;
    out.reserve(static_cast<std::size_t>(paving_count(k, family)));
    paving current{k, {}};
    std::function<void(int)> extend = [&](int v) {
        if (v == k) {
            out.push_back(current);
            return;
        }
        current.pavers.push_back({paver_kind::uncovered, v});
        extend(v + 1);
        current.pavers.pop_back();
        if (family == paving_family::motzkin) {
            current.pavers.push_back({paver_kind::monomer, v});
            extend(v + 1);
            current.pavers.pop_back();
        }
        if (v + 1 < k) {
            current.pavers.push_back({paver_kind::dimer, v + 1});
            extend(v + 2);
            current.pavers.pop_back();
        }
    };
    extend(0);
    return out;
}

/// Weight with shift j: uncovered -> x, monomer v_i -> -b_{i+j}, dimer e_i -> -lambda_{i+j}.
inline polynomial paving_weight(const paving& p, int j, const weight_spec& w) {
    polynomial out(1);
    for (const auto& pv : p.pavers) {
        switch (pv.kind) {
        case paver_kind::uncovered: out *= x_var(); break;
        case paver_kind::monomer: out *= -w.across_weight(pv.position + j); break;
        case paver_kind::dimer: out *= -w.down_weight(pv.position + j); break;
        }
    }
    return out;
}

/// P_k^{(j)} as a sum over weighted pavings. Ballot pavings suffice when every
/// across weight in the window is zero.
inline polynomial paving_polynomial(int k, int j, const weight_spec& w, std::uint64_t cap = default_paving_cap) {
    bool ballot = true;
    for (int i = 0; i < k && ballot; ++i) ballot = w.across_weight(i + j).is_zero();
    polynomial sum;
    for (const auto& p : enumerate_pavings(k, ballot ? paving_family::ballot : paving_family::motzkin, cap))
        sum += paving_weight(p, j, w);
    return sum;
}

/// Debug rendering: "." uncovered, "M" monomer, "D-" dimer.
inline std::string to_string(const paving& p) {
    std::string out;
    for (const auto& pv : p.pavers) {
        if (!out.empty()) out += ' ';
        switch (pv.kind) {
        case paver_kind::uncovered: out += '.'; break;
        case paver_kind::monomer: out += 'M'; break;
        case paver_kind::dimer: out += "D-"; break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cutting identities and decompositions

/// P_order^{(shift)} (or S_order, depending on the owning decomposition).
struct factor_ref {
    int shift = 0;
    int order = 0;

    friend bool operator==(const factor_ref&, const factor_ref&) = default;
};

struct decomposition_term {
    polynomial coefficient{1};
    std::vector<factor_ref> factors;
};

enum class factor_family { orthogonal, chebyshev };

/// sum_i coefficient_i * prod factors_i. Factors refer to shifted orthogonal
/// polynomials of the decorated weights, or to the undecorated S_k.
struct decomposition {
    factor_family family = factor_family::orthogonal;
    std::vector<decomposition_term> terms;

    polynomial expand(const weight_spec& w) const {
        polynomial sum;
        for (const auto& t : terms) {
            polynomial prod = t.coefficient;
            for (const auto& f : t.factors) {
                if (f.order < 0) {
                    prod = polynomial();
                    break;
                }
                prod *= family == factor_family::chebyshev ? chebyshev_S(f.order, w.b, w.lambda)
                                                           : ortho_poly(f.order, f.shift, w).value;
            }
            sum += prod;
        }
        return sum;
    }
};

inline std::string to_string(const decomposition& d) {
    if (d.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : d.terms) {
        std::string coeff = to_string(t.coefficient);
        const bool compound = t.coefficient.size() > 1;
        if (!first) os << (coeff.front() == '-' && !compound ? " - " : " + ");
        else if (coeff.front() == '-' && !compound) os << '-';
        if (coeff.front() == '-' && !compound) coeff.erase(0, 1);
        first = false;
        bool need_star = false;
        if (compound) {
            os << '(' << coeff << ')';
            need_star = true;
        } else if (coeff != "1" || t.factors.empty()) {
            os << coeff;
            need_star = true;
        }
        for (const auto& f : t.factors) {
            if (need_star) os << '*';
            need_star = true;
            if (d.family == factor_family::chebyshev) os << "S_" << f.order;
            else os << "P^(" << f.shift << ")_" << f.order;
        }
    }
    return os.str();
}

/// P_k^{(j)} = P_c^{(j)} P_{k-c}^{(j+c)} - lambda_{c+j} P_{c-1}^{(j)} P_{k-c-1}^{(j+c+1)}, 1 <= c <= k-1.
inline decomposition edge_cut(int k, int j, int c, const weight_spec& w) {
    if (c < 1 || c > k - 1)
        throw cut_out_of_range("edge cut at " + std::to_string(c) + " outside [1, " + std::to_string(k - 1) + "]");
    decomposition d;
    d.terms.push_back({polynomial(1), {{j, c}, {j + c, k - c}}});
    d.terms.push_back({-w.down_weight(c + j), {{j, c - 1}, {j + c + 1, k - c - 1}}});
    return d;
}

/// Cut at vertex v_c, 0 <= c <= k-1:
///   (x - b_{c+j}) P_c P_{k-c-1}^{(j+c+1)} - lambda_{j+c+1} P_c P_{k-c-2}^{(j+c+2)} - lambda_{c+j} P_{c-1} P_{k-c-1}^{(j+c+1)}.
/// Terms whose orders would be negative are omitted.
inline decomposition vertex_cut(int k, int j, int c, const weight_spec& w) {
    if (c < 0 || c > k - 1)
        throw cut_out_of_range("vertex cut at " + std::to_string(c) + " outside [0, " + std::to_string(k - 1) + "]");
    decomposition d;
    d.terms.push_back({x_var() - w.across_weight(c + j), {{j, c}, {j + c + 1, k - c - 1}}});
    if (k - c >= 2) d.terms.push_back({-w.down_weight(j + c + 1), {{j, c}, {j + c + 2, k - c - 2}}});
    if (c >= 1) d.terms.push_back({-w.down_weight(c + j), {{j, c - 1}, {j + c + 1, k - c - 1}}});
    return d;
}

namespace detail {

inline bool decorated(const std::map<int, polynomial>& decorations, int height) {
    auto it = decorations.find(height);
    return it != decorations.end() && !it->second.is_zero();
}

inline std::vector<decomposition_term> product(const std::vector<decomposition_term>& a,
                                               const std::vector<decomposition_term>& b) {
    std::vector<decomposition_term> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) {
            decomposition_term t{x.coefficient * y.coefficient, x.factors};
            t.factors.insert(t.factors.end(), y.factors.begin(), y.factors.end());
            out.push_back(std::move(t));
        }
    return out;
}

inline std::vector<decomposition_term> scale(polynomial c, std::vector<decomposition_term> terms) {
    for (auto& t : terms) t.coefficient = c * t.coefficient;
    return terms;
}

// Cut the window at its leftmost decoration until every factor is decoration-free.
inline std::vector<decomposition_term> decompose_window(int j, int k, const weight_spec& w) {
    if (k <= 0) return {decomposition_term{polynomial(1), {}}};
    for (int pos = 0; pos <= 2 * (k - 1); ++pos) {
        if (pos % 2 == 0) {
            const int c = pos / 2;
            if (!decorated(w.across, j + c)) continue;
            auto left = decompose_window(j, c, w);
            auto terms = product(scale(x_var() - w.across_weight(c + j), left),
                                 decompose_window(j + c + 1, k - c - 1, w));
            if (k - c >= 2) {
                auto more = product(scale(-w.down_weight(j + c + 1), left), decompose_window(j + c + 2, k - c - 2, w));
                terms.insert(terms.end(), more.begin(), more.end());
            }
            if (c >= 1) {
                auto more = product(scale(-w.down_weight(c + j), decompose_window(j, c - 1, w)),
                                    decompose_window(j + c + 1, k - c - 1, w));
                terms.insert(terms.end(), more.begin(), more.end());
            }
            return terms;
        }
        const int c = (pos + 1) / 2;
        if (!decorated(w.down, j + c)) continue;
        auto terms = product(decompose_window(j, c, w), decompose_window(j + c, k - c, w));
        auto more = product(scale(-w.down_weight(c + j), decompose_window(j, c - 1, w)),
                            decompose_window(j + c + 1, k - c - 1, w));
        terms.insert(terms.end(), more.begin(), more.end());
        return terms;
    }
    return {decomposition_term{polynomial(1), {{j, k}}}};
}

} // namespace detail

/// Expansion of P_k^{(j)} into decoration-bearing coefficients times products
/// of undecorated S polynomials, by repeated edge and vertex cuts at the
/// leftmost remaining decoration.
inline decomposition decompose(int k, int j, const weight_spec& w) {
    if (k < 0 || j < 0) throw std::invalid_argument("decompose: negative order or shift");
    decomposition d;
    d.family = factor_family::chebyshev;
    d.terms = detail::decompose_window(j, k, w);
    return d;
}

/// Number of decorated across and down heights i with j <= i <= j+k-1.
inline std::pair<int, int> decoration_counts(int k, int j, const weight_spec& w) {
    int across = 0, down = 0;
    for (int i = j; i <= j + k - 1; ++i) {
        across += detail::decorated(w.across, i) ? 1 : 0;
        down += detail::decorated(w.down, i) ? 1 : 0;
    }
    return {across, down};
}

} // namespace latpoly
