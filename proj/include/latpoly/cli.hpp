#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "closed_forms.hpp"
#include "engines.hpp"
#include "io.hpp"
#include "parse.hpp"

namespace latpoly {

enum class job_mode { compute, crosscheck, bench, gf };
enum class output_format { plain, json, latex };
enum class model_kind { none, dmr, four, rogers };

/// Methods selectable by name. "closed-form" evaluates the binomial sums of a
/// named model, "closed-ct" its specialised constant-term integrand.
inline const std::vector<std::string>& method_names() {
    static const std::vector<std::string> names{"brute", "tmatrix", "viennot-ct", "rho-ct",
                                                "gf",    "closed-form", "closed-ct"};
    return names;
}

struct job_spec {
    job_mode mode = job_mode::compute;
    std::optional<int> t;
    std::optional<int> L;
    int y_start = 0;
    int y_end = 0;
    std::optional<weight_spec> weights;
    model_kind model = model_kind::none;
    std::map<std::string, std::string> params;
    std::vector<std::string> engines; ///< empty selects the mode's default set
    output_format format = output_format::plain;
    std::optional<int> order;          ///< gf mode
    int cap = brute_force_options{}.cap;
    std::string sweep = "t";           ///< bench: "t" or "L"
};

struct job_result {
    int exit_code = 0;
    std::string out;
    std::string err;
};

inline job_mode parse_mode(const std::string& s) {
    if (s == "compute") return job_mode::compute;
    if (s == "crosscheck") return job_mode::crosscheck;
    if (s == "bench") return job_mode::bench;
    if (s == "gf") return job_mode::gf;
    throw invalid_query("unknown mode \"" + s + "\"");
}

inline output_format parse_format(const std::string& s) {
    if (s == "plain") return output_format::plain;
    if (s == "json") return output_format::json;
    if (s == "latex") return output_format::latex;
    throw invalid_query("unknown output format \"" + s + "\" (expected plain, json or latex)");
}

inline model_kind parse_model(const std::string& s) {
    if (s.empty() || s == "none") return model_kind::none;
    if (s == "dmr") return model_kind::dmr;
    if (s == "four" || s == "four-weight") return model_kind::four;
    if (s == "rogers") return model_kind::rogers;
    throw invalid_query("unknown model \"" + s + "\" (expected dmr, four or rogers)");
}

inline std::string to_string(model_kind m) {
    switch (m) {
    case model_kind::none: return "none";
    case model_kind::dmr: return "dmr";
    case model_kind::four: return "four";
    case model_kind::rogers: return "rogers";
    }
    return "?";
}

namespace detail {

// ---------------------------------------------------------------------------
// Named models

/// One fully specified instance of a named model.
struct model_case {
    model_kind kind = model_kind::none;
    int size = 0; ///< r for dmr and four, n for rogers
    dmr_params dmr;
    four_weight_params four;
    strip_height rogers_L;
    std::vector<polynomial> kappas;
    strip_query query;
    weight_spec weights;

    std::string label() const {
        std::string s = to_string(kind) + (kind == model_kind::rogers ? " n=" : " r=") + std::to_string(size);
        if (kind == model_kind::rogers && !rogers_L) return s + " L=inf";
        return s + " L=" + std::to_string(query.L);
    }
};

inline int parse_int(const std::string& name, const std::string& text) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw invalid_query("parameter " + name + " must be an integer, got \"" + text + "\"");
    }
}

inline polynomial parse_param_polynomial(const std::string& name, const std::string& text) {
    polynomial p = parse_polynomial(text);
    if (p.contains(x_symbol()) || p.contains(rho_symbol()))
        throw invalid_query("parameter " + name + " may not use the reserved symbols x and rho");
    return p;
}

inline std::optional<int> model_L(const job_spec& job) {
    if (auto it = job.params.find("L"); it != job.params.end()) return parse_int("L", it->second);
    return job.L;
}

/// Size parameter (r or n): explicit parameter, else half of --t.
inline std::optional<int> model_size(const job_spec& job) {
    const char* key = job.model == model_kind::rogers ? "n" : "r";
    if (auto it = job.params.find(key); it != job.params.end()) return parse_int(key, it->second);
    if (job.t) {
        if (*job.t % 2 != 0) throw invalid_query("models count Dyck paths, so --t must be even");
        return *job.t / 2;
    }
    return std::nullopt;
}

inline void check_param_names(const job_spec& job) {
    for (const auto& [k, _] : job.params) {
        bool ok = k == "L";
        switch (job.model) {
        case model_kind::none: break;
        case model_kind::dmr: ok = ok || k == "r" || k == "kappa" || k == "omega"; break;
        case model_kind::four:
            ok = ok || k == "r" || k == "kappa1" || k == "kappa2" || k == "omega1" || k == "omega2";
            break;
        case model_kind::rogers: ok = ok || k == "n" || k.rfind("kappa_", 0) == 0; break;
        }
        if (job.model == model_kind::none) throw invalid_query("--param needs a --model");
        if (!ok) throw invalid_query("unknown parameter \"" + k + "\" for model " + to_string(job.model));
    }
}

inline model_case make_model_case(const job_spec& job, int size, std::optional<int> L) {
    model_case c;
    c.kind = job.model;
    c.size = size;
    auto param = [&](const std::string& key, const char* symbol) {
        auto it = job.params.find(key);
        return it == job.params.end() ? var(symbol) : parse_param_polynomial(key, it->second);
    };
    switch (job.model) {
    case model_kind::none: throw std::logic_error("make_model_case without a model");
    case model_kind::dmr: {
        if (!L) throw invalid_query("dmr model needs L >= 2 (pass --L)");
        c.dmr = dmr_params{size, *L, param("kappa", "kappa"), param("omega", "omega")};
        c.weights = dmr_weights(c.dmr);
        c.query = strip_query{2 * size, 0, 0, *L};
        break;
    }
    case model_kind::four: {
        if (!L) throw invalid_query("four-weight model needs L >= 4 (pass --L)");
        c.four = four_weight_params{size,
                                    *L,
                                    param("kappa1", "kappa_1"),
                                    param("kappa2", "kappa_2"),
                                    param("omega1", "omega_1"),
                                    param("omega2", "omega_2")};
        c.weights = four_weight_weights(c.four);
        c.query = strip_query{2 * size, 0, 0, *L};
        break;
    }
    case model_kind::rogers: {
        if (size < 0) throw invalid_query("rogers model needs n >= 0");
        if (L && *L < 0) throw invalid_query("rogers model needs L >= 0");
        c.rogers_L = L;
        // a path of length 2n never climbs above n, so the half plane is the strip of height n
        const int strip = L ? *L : size;
        for (int i = 1; i <= std::max(strip, 1); ++i)
            c.kappas.push_back(param("kappa_" + std::to_string(i), ("kappa_" + std::to_string(i)).c_str()));
        c.weights = rogers_weights(strip, c.kappas);
        c.query = strip_query{2 * size, 0, 0, strip};
        break;
    }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Evaluation

inline void check_method(const std::string& name) {
    if (std::find(method_names().begin(), method_names().end(), name) == method_names().end())
        throw invalid_query("unknown engine \"" + name + "\"");
}

inline polynomial evaluate(const std::string& method, const strip_query& q, const weight_spec& w, int cap,
                           const model_case* model) {
    if (method == "closed-form" || method == "closed-ct") {
        if (!model) throw invalid_query("engine " + method + " needs a --model");
        switch (model->kind) {
        case model_kind::dmr: return method == "closed-form" ? dmr_sum(model->dmr) : dmr_ct(model->dmr);
        case model_kind::four:
            return method == "closed-form" ? four_weight_sum(model->four) : four_weight_ct(model->four);
        case model_kind::rogers:
            if (method == "closed-ct") throw invalid_query("engine closed-ct is not available for the rogers model");
            return rogers(model->size, model->rogers_L, model->kappas);
        case model_kind::none: break;
        }
        throw std::logic_error("evaluate: bad model");
    }
    if (method == "brute") return brute_force(q, w, brute_force_options{cap, std::nullopt});
    if (method == "tmatrix") return transfer_matrix(q, w);
    if (method == "viennot-ct") return viennot_ct(q, w);
    if (method == "rho-ct") return rho_ct(q, w);
    if (method == "gf") return compute(engine::generating_function, q, w);
    throw invalid_query("unknown engine \"" + method + "\"");
}

struct timed_value {
    polynomial value;
    double micros = 0;
};

/// Runs the method repeatedly until at least `min_micros` have elapsed and
/// reports the mean time per call.
inline timed_value timed_evaluate(const std::string& method, const strip_query& q, const weight_spec& w, int cap,
                                  const model_case* model, double min_micros = 0) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    timed_value out;
    int reps = 0;
    double elapsed = 0;
    do {
        out.value = evaluate(method, q, w, cap, model);
        ++reps;
        elapsed = std::chrono::duration<double, std::micro>(clock::now() - start).count();
    } while (elapsed < min_micros && reps < 1000);
    out.micros = elapsed / reps;
    return out;
}

inline std::string render(const polynomial& p, output_format f) {
    return f == output_format::latex ? to_latex(p) : to_string(p);
}

inline std::vector<std::string> default_engines(const job_spec& job, const std::optional<weight_spec>& w) {
    const bool rational_background = !w || w->background_is_rational();
    switch (job.mode) {
    case job_mode::compute: return {job.model == model_kind::none ? "tmatrix" : "closed-form"};
    case job_mode::crosscheck:
        if (job.model == model_kind::rogers) return {"brute", "tmatrix", "closed-form"};
        if (job.model != model_kind::none) return {"brute", "tmatrix", "closed-form", "closed-ct"};
        if (rational_background) return {"brute", "tmatrix", "viennot-ct", "rho-ct", "gf"};
        return {"brute", "tmatrix", "viennot-ct", "gf"};
    case job_mode::bench:
        if (job.model == model_kind::rogers) return {"closed-form", "tmatrix"};
        if (job.model != model_kind::none) return {"closed-form", "closed-ct", "tmatrix"};
        return {"rho-ct", "tmatrix"};
    case job_mode::gf: return {"gf"};
    }
    return {};
}

// One grid point of a crosscheck or compute job.
struct query_report {
    std::string label;
    std::map<std::string, std::string> results; // engine -> canonical rendering
    std::map<std::string, double> millis;
    bool agree = true;
    polynomial value; // from the first engine
};

inline query_report run_engines(const std::string& label, const std::vector<std::string>& engines, const strip_query& q,
                                const weight_spec& w, int cap, const model_case* model) {
    query_report r;
    r.label = label;
    std::optional<std::string> first;
    for (const auto& e : engines) {
        const auto tv = timed_evaluate(e, q, w, cap, model);
        const std::string s = to_string(tv.value);
        r.results[e] = s;
        r.millis[e] = tv.micros / 1000.0;
        if (!first) {
            first = s;
            r.value = tv.value;
        } else if (*first != s) r.agree = false;
    }
    return r;
}

inline std::string disagreement_text(const query_report& r, const std::vector<std::string>& engines) {
    std::ostringstream os;
    os << "disagreement at " << r.label << "\n";
    const std::string& a = engines.front();
    for (const auto& e : engines) {
        if (r.results.at(e) == r.results.at(a)) continue;
        os << "  " << a << ": " << r.results.at(a) << "\n";
        os << "  " << e << ": " << r.results.at(e) << "\n";
        break;
    }
    return os.str();
}

inline nlohmann::json report_json(const query_report& r) {
    return nlohmann::json{{"query", r.label}, {"results", r.results}, {"millis", r.millis}, {"agree", r.agree}};
}

// ---------------------------------------------------------------------------
// Modes

inline weight_spec generic_weights(const job_spec& job, int L) {
    if (job.weights) {
        if (job.weights->L != L)
            throw invalid_query("the weights file has L = " + std::to_string(job.weights->L) + " but the query has L = " +
                                std::to_string(L));
        return *job.weights;
    }
    return weight_spec::symbolic(L);
}

inline job_result run_compute(const job_spec& job, const std::vector<std::string>& engines) {
    strip_query q;
    weight_spec w;
    std::optional<model_case> model;
    std::string label;
    if (job.model != model_kind::none) {
        const auto size = model_size(job);
        if (!size) throw invalid_query("model " + to_string(job.model) + " needs its size parameter or --t");
        model = make_model_case(job, *size, model_L(job));
        q = model->query;
        w = model->weights;
        label = model->label();
    } else {
        if (!job.t) throw invalid_query("compute needs --t");
        const int L = job.L ? *job.L : job.weights ? job.weights->L : 0;
        q = strip_query{*job.t, job.y_start, job.y_end, L};
        q.validate();
        w = generic_weights(job, L);
        label = to_string(q);
    }
    const auto report = run_engines(label, engines, q, w, job.cap, model ? &*model : nullptr);
    job_result res;
    if (!report.agree) {
        res.exit_code = 1;
        res.out = disagreement_text(report, engines);
        return res;
    }
    const polynomial& value = report.value;
    switch (job.format) {
    case output_format::plain:
    case output_format::latex: res.out = render(value, job.format) + "\n"; break;
    case output_format::json: {
        auto j = report_json(report);
        j["result"] = report.results.at(engines.front());
        res.out = j.dump(2) + "\n";
        break;
    }
    }
    return res;
}

inline job_result run_crosscheck(const job_spec& job, const std::vector<std::string>& engines) {
    struct point {
        std::string label;
        strip_query q;
        weight_spec w;
        std::optional<model_case> model;
    };
    std::vector<point> grid;
    if (job.model != model_kind::none) {
        const int max_size = model_size(job).value_or(4);
        for (int s = 0; s <= max_size; ++s) {
            auto c = make_model_case(job, s, model_L(job));
            grid.push_back({c.label(), c.query, c.weights, c});
        }
    } else if (job.weights) {
        const int L = job.weights->L;
        for (int t = 0; t <= job.t.value_or(6); ++t)
            for (int a = 0; a <= L; ++a)
                for (int b = 0; b <= L; ++b) {
                    strip_query q{t, a, b, L};
                    grid.push_back({to_string(q), q, *job.weights, std::nullopt});
                }
    } else {
        for (int L = 0; L <= job.L.value_or(3); ++L) {
            const auto w = weight_spec::symbolic(L);
            for (int t = 0; t <= job.t.value_or(6); ++t)
                for (int a = 0; a <= L; ++a)
                    for (int b = 0; b <= L; ++b) {
                        strip_query q{t, a, b, L};
                        grid.push_back({to_string(q), q, w, std::nullopt});
                    }
        }
    }

    std::vector<query_report> reports;
    reports.reserve(grid.size());
    for (const auto& p : grid) reports.push_back(run_engines(p.label, engines, p.q, p.w, job.cap, p.model ? &*p.model : nullptr));

    job_result res;
    const auto bad = std::find_if(reports.begin(), reports.end(), [](const auto& r) { return !r.agree; });
    if (job.format == output_format::json) {
        nlohmann::json j;
        j["agree"] = bad == reports.end();
        j["engines"] = engines;
        j["queries"] = nlohmann::json::array();
        for (const auto& r : reports) j["queries"].push_back(report_json(r));
        res.out = j.dump(2) + "\n";
    }
    if (bad != reports.end()) {
        res.exit_code = 1;
        if (job.format == output_format::json) res.err = disagreement_text(*bad, engines);
        else res.out = disagreement_text(*bad, engines);
        return res;
    }
    if (job.format != output_format::json) {
        std::ostringstream os;
        os << "crosscheck: " << reports.size() << " queries, engines";
        for (const auto& e : engines) os << ' ' << e;
        os << ": all agree\n";
        res.out = os.str();
    }
    return res;
}

inline job_result run_bench(const job_spec& job, const std::vector<std::string>& engines) {
    if (job.format == output_format::latex) throw invalid_query("bench writes CSV or JSON, not LaTeX");
    if (job.sweep != "t" && job.sweep != "L") throw invalid_query("--sweep must be t or L");

    struct row {
        std::string query, engine;
        double micros;
        std::size_t terms;
    };
    std::vector<row> rows;
    auto bench_point = [&](const std::string& label, const strip_query& q, const weight_spec& w, const model_case* m) {
        for (const auto& e : engines) {
            const auto tv = timed_evaluate(e, q, w, job.cap, m, 2000.0);
            rows.push_back({label, e, tv.micros, tv.value.size()});
        }
    };

    if (job.model != model_kind::none) {
        if (job.sweep == "t") {
            const int max_size = model_size(job).value_or(6);
            for (int s = 0; s <= max_size; ++s) {
                const auto c = make_model_case(job, s, model_L(job));
                bench_point(c.label(), c.query, c.weights, &c);
            }
        } else {
            const auto size = model_size(job);
            if (!size) throw invalid_query("an L sweep needs the model size parameter or --t");
            const int lo = job.model == model_kind::four ? 4 : job.model == model_kind::dmr ? 2 : 1;
            for (int L = lo; L <= model_L(job).value_or(lo + 4); ++L) {
                const auto c = make_model_case(job, *size, L);
                bench_point(c.label(), c.query, c.weights, &c);
            }
        }
    } else if (job.sweep == "t") {
        const int L = job.L ? *job.L : job.weights ? job.weights->L : 3;
        const weight_spec w = job.weights ? generic_weights(job, L) : weight_spec::background(0, 1, L);
        for (int t = 0; t <= job.t.value_or(10); ++t) {
            strip_query q{t, job.y_start, job.y_end, L};
            q.validate();
            bench_point(to_string(q), q, w, nullptr);
        }
    } else {
        if (job.weights) throw invalid_query("an L sweep uses undecorated strips; drop --weights");
        for (int L = std::max(job.y_start, job.y_end); L <= job.L.value_or(5); ++L) {
            strip_query q{job.t.value_or(10), job.y_start, job.y_end, L};
            bench_point(to_string(q), q, weight_spec::background(0, 1, L), nullptr);
        }
    }

    std::ostringstream os;
    if (job.format == output_format::json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : rows)
            j.push_back({{"query", r.query}, {"engine", r.engine}, {"micros", r.micros}, {"terms", r.terms}});
        os << j.dump(2) << "\n";
    } else {
        os << "query,engine,micros,terms\n";
        for (const auto& r : rows) os << r.query << ',' << r.engine << ',' << r.micros << ',' << r.terms << '\n';
    }
    return {0, os.str(), ""};
}

inline job_result run_gf(const job_spec& job) {
    if (job.model != model_kind::none) throw invalid_query("gf mode takes --weights or --L, not a model");
    const int L = job.L ? *job.L : job.weights ? job.weights->L : 0;
    const weight_spec w = generic_weights(job, L);
    const int order = job.order ? *job.order : job.t.value_or(6);
    const auto s = generating_function(job.y_start, job.y_end, w, order);
    std::ostringstream os;
    switch (job.format) {
    case output_format::plain: os << to_string(s) << "\n"; break;
    case output_format::latex: {
        bool first = true;
        for (int n = 0; n <= order; ++n) {
            const polynomial c = s.coefficient(n);
            if (c.is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            const bool compound = c.size() > 1;
            if (n == 0) os << to_latex(c);
            else {
                if (compound) os << '(' << to_latex(c) << ')';
                else if (c != polynomial(1)) os << to_latex(c) << ' ';
                if (n == 1) os << 'x';
                else os << "x^{" << n << '}';
            }
        }
        if (first) os << '0';
        os << " + O(x^{" << order + 1 << "})\n";
        break;
    }
    case output_format::json: {
        nlohmann::json j;
        j["query"] = "L=" + std::to_string(L) + " y'=" + std::to_string(job.y_start) + " y=" + std::to_string(job.y_end);
        j["order"] = order;
        j["coefficients"] = nlohmann::json::array();
        for (int n = 0; n <= order; ++n) j["coefficients"].push_back(to_string(s.coefficient(n)));
        j["series"] = to_string(s);
        os << j.dump(2) << "\n";
        break;
    }
    }
    return {0, os.str(), ""};
}

} // namespace detail

/// Runs a job. Exit code 0 on success or agreement, 1 when engines disagree,
/// 2 on invalid input; the message for code 2 is in `err`.
inline job_result run_job(const job_spec& job) {
    try {
        detail::check_param_names(job);
        if (job.cap < 0) throw invalid_query("--cap must be nonnegative");
        if (job.weights) job.weights->validate();
        std::vector<std::string> engines = job.engines.empty() ? detail::default_engines(job, job.weights) : job.engines;
        for (const auto& e : engines) detail::check_method(e);
        if (engines.empty()) throw invalid_query("select at least one engine");
        switch (job.mode) {
        case job_mode::compute: return detail::run_compute(job, engines);
        case job_mode::crosscheck: return detail::run_crosscheck(job, engines);
        case job_mode::bench: return detail::run_bench(job, engines);
        case job_mode::gf: return detail::run_gf(job);
        }
        throw std::logic_error("run_job: bad mode");
    } catch (const error& e) {
        return {2, "", std::string("error: ") + e.what() + "\n"};
    } catch (const std::invalid_argument& e) {
        return {2, "", std::string("error: ") + e.what() + "\n"};
    } catch (const std::domain_error& e) {
        return {2, "", std::string("error: ") + e.what() + "\n"};
    } catch (const std::logic_error& e) {
        return {1, "", std::string("internal error: ") + e.what() + "\n"};
    }
}

} // namespace latpoly
