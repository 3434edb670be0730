#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "errors.hpp"
#include "parse.hpp"
#include "polynomial.hpp"
#include "weights.hpp"

namespace latpoly {

namespace detail {

inline std::string json_pointer_escape(std::string_view key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

// Integers or rational strings; JSON floats are rejected.
inline rational json_rational(const nlohmann::json& v, const std::string& ptr) {
    if (v.is_number_integer()) return rational(v.get<long>());
    if (v.is_number_float()) throw schema_error(ptr, "floating-point literals are not accepted; use a rational string such as \"3/2\"");
    if (!v.is_string()) throw schema_error(ptr, "expected a rational number");
    const auto& s = v.get_ref<const std::string&>();
    try {
        return parse_rational(s);
    } catch (const parse_error& e) {
        throw schema_error(ptr, e.what());
    }
}

inline void reject_reserved(const polynomial& p, const std::string& ptr) {
    if (p.contains(x_symbol()) || p.contains(rho_symbol()))
        throw schema_error(ptr, "decorations may not use the reserved symbols x and rho");
}

inline polynomial json_decoration(const nlohmann::json& v, const std::string& ptr) {
    if (v.is_number_integer()) return polynomial(rational(v.get<long>()));
    if (v.is_number_float()) throw schema_error(ptr, "floating-point literals are not accepted");
    if (v.is_string()) {
        polynomial p;
        try {
            p = parse_polynomial(v.get_ref<const std::string&>());
        } catch (const parse_error& e) {
            throw schema_error(ptr, e.what());
        }
        reject_reserved(p, ptr);
        return p;
    }
    if (v.is_object()) {
        // {"sym": name, "shift": rational} stands for name + shift
        for (const auto& [k, _] : v.items())
            if (k != "sym" && k != "shift") throw schema_error(ptr + "/" + json_pointer_escape(k), "unknown field");
        if (!v.contains("sym") || !v["sym"].is_string()) throw schema_error(ptr + "/sym", "expected a symbol name");
        const auto& name = v["sym"].get_ref<const std::string&>();
        polynomial sym;
        try {
            sym = parse_polynomial(name);
        } catch (const parse_error& e) {
            throw schema_error(ptr + "/sym", e.what());
        }
        if (sym.size() != 1 || sym.total_degree() != 1 || sym.terms().front().coeff != 1)
            throw schema_error(ptr + "/sym", "expected a single symbol name");
        reject_reserved(sym, ptr + "/sym");
        const rational shift = v.contains("shift") ? json_rational(v["shift"], ptr + "/shift") : rational(0);
        return sym + polynomial(shift);
    }
    throw schema_error(ptr, "expected a polynomial string, an integer or {\"sym\", \"shift\"}");
}

inline int json_height(const std::string& key, const std::string& ptr) {
    int h = 0;
    const char* first = key.data();
    const char* last = key.data() + key.size();
    auto [end, ec] = std::from_chars(first, last, h);
    if (key.empty() || ec != std::errc{} || end != last) throw schema_error(ptr, "height keys must be decimal integers");
    return h;
}

} // namespace detail

/// Parse a weights document:
///   {"b": "0", "lambda": "1", "across_decorations": {"0": "c"},
///    "down_decorations": {"1": "kappa-1", "2": {"sym": "omega", "shift": -1}}, "L": 2}
/// "L" is optional; without it `default_L` is used, and failing that the
/// highest decorated height.
inline weight_spec parse_weights(std::string_view text, std::optional<int> default_L = std::nullopt) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw schema_error("", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw schema_error("", "the weights document must be a JSON object");
    for (const auto& [k, _] : doc.items())
        if (k != "b" && k != "lambda" && k != "across_decorations" && k != "down_decorations" && k != "L")
            throw schema_error("/" + detail::json_pointer_escape(k), "unknown field");
    if (!doc.contains("b")) throw schema_error("/b", "missing background across weight");
    if (!doc.contains("lambda")) throw schema_error("/lambda", "missing background down weight");

    weight_spec w;
    w.b = polynomial(detail::json_rational(doc["b"], "/b"));
    w.lambda = polynomial(detail::json_rational(doc["lambda"], "/lambda"));

    int highest = 0;
    auto read_map = [&](const char* field, std::map<int, polynomial>& out) {
        if (!doc.contains(field)) return;
        const std::string base = std::string("/") + field;
        const auto& m = doc[field];
        if (!m.is_object()) throw schema_error(base, "expected an object keyed by height");
        for (const auto& [key, value] : m.items()) {
            const std::string ptr = base + "/" + detail::json_pointer_escape(key);
            const int h = detail::json_height(key, ptr);
            out[h] = detail::json_decoration(value, ptr);
            highest = std::max(highest, h);
        }
    };
    read_map("across_decorations", w.across);
    read_map("down_decorations", w.down);

    if (doc.contains("L")) {
        if (!doc["L"].is_number_integer() || doc["L"].get<long>() < 0)
            throw schema_error("/L", "expected a nonnegative integer");
        w.L = static_cast<int>(doc["L"].get<long>());
    } else {
        w.L = default_L.value_or(highest);
    }

    for (const auto& [h, _] : w.across)
        if (h < 0 || h > w.L)
            throw schema_error("/across_decorations/" + std::to_string(h),
                               "height outside [0, " + std::to_string(w.L) + "]");
    for (const auto& [h, _] : w.down)
        if (h < 1 || h > w.L)
            throw schema_error("/down_decorations/" + std::to_string(h),
                               "height outside [1, " + std::to_string(w.L) + "]");
    return w;
}

/// Inverse of parse_weights: every value is written as its canonical string.
inline nlohmann::json to_json(const weight_spec& w) {
    nlohmann::json doc;
    doc["b"] = to_string(w.b);
    doc["lambda"] = to_string(w.lambda);
    auto write_map = [](const std::map<int, polynomial>& m) {
        nlohmann::json out = nlohmann::json::object();
        for (const auto& [h, v] : m) out[std::to_string(h)] = to_string(v);
        return out;
    };
    doc["across_decorations"] = write_map(w.across);
    doc["down_decorations"] = write_map(w.down);
    doc["L"] = w.L;
    return doc;
}

} // namespace latpoly
