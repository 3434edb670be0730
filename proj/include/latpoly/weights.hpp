#pragma once

#include <map>
#include <string>

#include "polynomial.hpp"

namespace latpoly {

/// Background weights (b, lambda) plus additive decorations at chosen heights.
///
/// Effective weights are b_i = b + across[i] and lambda_i = lambda + down[i].
/// Values may be rationals or polynomials in any symbols except x and rho.
struct weight_spec {
    polynomial b;
    polynomial lambda{1};
    std::map<int, polynomial> across; ///< decorated across-step heights, keys in [0, L]
    std::map<int, polynomial> down;   ///< decorated down-step heights, keys in [1, L]
    int L = 0;

    polynomial across_weight(int height) const {
        auto it = across.find(height);
        return it == across.end() ? b : b + it->second;
    }

    polynomial down_weight(int height) const {
        auto it = down.find(height);
        return it == down.end() ? lambda : lambda + it->second;
    }

    bool background_is_rational() const { return b.is_constant() && lambda.is_constant(); }

    /// Throws invalid_query on decoration keys outside the strip.
    void validate() const {
        if (L < 0) throw invalid_query("strip height L must be nonnegative");
        for (const auto& [h, v] : across)
            if (h < 0 || h > L)
                throw invalid_query("across decoration at height " + std::to_string(h) + " outside [0, " +
                                    std::to_string(L) + "]");
        for (const auto& [h, v] : down)
            if (h < 1 || h > L)
                throw invalid_query("down decoration at height " + std::to_string(h) + " outside [1, " +
                                    std::to_string(L) + "]");
    }

    /// Throws zero_lambda if some effective lambda_i (1 <= i <= max_height) is the rational 0.
    void require_nonzero_lambdas(int max_height) const {
        for (int i = 1; i <= max_height; ++i)
            if (down_weight(i).is_zero())
                throw zero_lambda("effective down weight lambda_" + std::to_string(i) + " is zero");
    }

    /// Decorations moved down by `j` heights; those that would fall below 0 are dropped.
    weight_spec shifted(int j) const {
        weight_spec w{b, lambda, {}, {}, L - j};
        for (const auto& [h, v] : across)
            if (h - j >= 0) w.across.emplace(h - j, v);
        for (const auto& [h, v] : down)
            if (h - j >= 0) w.down.emplace(h - j, v);
        return w;
    }

    static weight_spec background(const polynomial& b, const polynomial& lambda, int L) {
        return weight_spec{b, lambda, {}, {}, L};
    }

    /// Every weight its own symbol: b_i = "b_i", lambda_i = "lambda_i", over a
    /// rational background b = 0, lambda = 1 so the rho engine applies too.
    static weight_spec symbolic(int L) {
        weight_spec w{polynomial(0), polynomial(1), {}, {}, L};
        for (int i = 0; i <= L; ++i) w.across.emplace(i, var("b_" + std::to_string(i)));
        for (int i = 1; i <= L; ++i) w.down.emplace(i, var("lambda_" + std::to_string(i)) - polynomial(1));
        return w;
    }

    friend bool operator==(const weight_spec&, const weight_spec&) = default;
};

} // namespace latpoly
