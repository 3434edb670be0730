#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

namespace latpoly {

using symbol_id = std::uint32_t;

/// Process-wide interning of symbol names. Ids are only used for fast
/// comparisons; anything user-visible is ordered by name.
class symbol_table {
public:
    static symbol_table& instance() {
        static symbol_table table;
        return table;
    }

    symbol_id intern(std::string_view name) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
        }
        std::unique_lock lock(mutex_);
        auto [it, inserted] = ids_.try_emplace(std::string(name), static_cast<symbol_id>(names_.size()));
        if (inserted) names_.emplace_back(name);
        return it->second;
    }

    // deque keeps references stable while other threads intern
    const std::string& name(symbol_id id) const {
        std::shared_lock lock(mutex_);
        return names_.at(id);
    }

private:
    symbol_table() = default;

    mutable std::shared_mutex mutex_;
    std::deque<std::string> names_;
    std::unordered_map<std::string, symbol_id> ids_;
};

inline symbol_id intern(std::string_view name) { return symbol_table::instance().intern(name); }

inline const std::string& symbol_name(symbol_id id) { return symbol_table::instance().name(id); }

/// The only symbol allowed to carry negative exponents.
inline symbol_id rho_symbol() {
    static const symbol_id id = intern("rho");
    return id;
}

inline symbol_id x_symbol() {
    static const symbol_id id = intern("x");
    return id;
}

} // namespace latpoly
