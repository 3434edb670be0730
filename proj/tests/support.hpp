#pragma once

#include <random>
#include <string>
#include <vector>

#include <latpoly/polynomial.hpp>
#include <latpoly/weights.hpp>

namespace latpoly::testing {

inline std::mt19937& rng() {
    static std::mt19937 gen(20240611u);
    return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline rational random_rational(int num_range = 5, int den_max = 3) {
    rational r(uniform(-num_range, num_range), uniform(1, den_max));
    r.canonicalize();
    return r;
}

inline rational random_nonzero_rational() {
    rational r;
    do r = random_rational(); while (r == 0);
    return r;
}

/// A few terms in the given symbols; rho may carry negative exponents.
inline polynomial random_polynomial(const std::vector<std::string>& symbols, int max_terms = 4, int max_exp = 2) {
    polynomial p;
    const int n = uniform(0, max_terms);
    for (int i = 0; i < n; ++i) {
        polynomial term(random_rational());
        for (const auto& s : symbols) {
            const int lo = s == "rho" ? -max_exp : 0;
            const int e = uniform(lo, max_exp);
            if (e != 0) term *= var(s, e);
        }
        p += term;
    }
    return p;
}

/// Random decorations on a strip of height L: each height decorated with
/// probability 1/2 by a symbol, a rational, or a small polynomial.
inline weight_spec random_weights(int L, bool allow_symbolic = true) {
    weight_spec w{polynomial(random_rational()), polynomial(random_nonzero_rational()), {}, {}, L};
    auto value = [&](const std::string& name) {
        const int kind = allow_symbolic ? uniform(0, 2) : 0;
        if (kind == 0) return polynomial(random_nonzero_rational());
        if (kind == 1) return var(name);
        return var(name) + polynomial(random_rational());
    };
    for (int i = 0; i <= L + 4; ++i)
        if (uniform(0, 1)) w.across.emplace(i, value("c_" + std::to_string(i)));
    for (int i = 1; i <= L + 4; ++i)
        if (uniform(0, 1)) w.down.emplace(i, value("d_" + std::to_string(i)));
    return w;
}

} // namespace latpoly::testing
