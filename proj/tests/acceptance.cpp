// Acceptance gate: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. Pass criterion numbers as arguments to run a subset.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <latpoly/cli.hpp>
#include <latpoly/closed_forms.hpp>
#include <latpoly/engines.hpp>
#include <latpoly/paving.hpp>

#include "support.hpp"

using namespace latpoly;
using latpoly::testing::random_weights;
using latpoly::testing::uniform;

namespace {

struct outcome {
    bool pass = true;
    std::string detail;
};

outcome fail(std::string why) { return {false, std::move(why)}; }

// 1. Five engines on every small query, backgrounds (0,1) and (1,1), and every
//    set of at most two symbolic decorations.
outcome engine_agreement() {
    const engine engines[] = {engine::tmatrix, engine::viennot_ct, engine::rho_ct, engine::generating_function};
    std::size_t queries = 0, decoration_sets = 0;
    for (int L = 0; L <= 5; ++L) {
        // slots: across heights 0..L then down heights 1..L
        std::vector<std::pair<bool, int>> slots;
        for (int h = 0; h <= L; ++h) slots.emplace_back(true, h);
        for (int h = 1; h <= L; ++h) slots.emplace_back(false, h);
        std::vector<std::vector<std::size_t>> subsets{{}};
        for (std::size_t a = 0; a < slots.size(); ++a) {
            subsets.push_back({a});
            for (std::size_t b = a + 1; b < slots.size(); ++b) subsets.push_back({a, b});
        }
        for (int background = 0; background <= 1; ++background)
            for (const auto& subset : subsets) {
                weight_spec w = weight_spec::background(background, 1, L);
                for (std::size_t s : subset) {
                    const auto [across, h] = slots[s];
                    if (across) w.across.emplace(h, var("c_" + std::to_string(h)));
                    else w.down.emplace(h, var("d_" + std::to_string(h)));
                }
                ++decoration_sets;
                for (int a = 0; a <= L; ++a)
                    for (int b = 0; b <= L; ++b) {
                        // one generating-function expansion serves every t
                        const auto gf = generating_function(a, b, w, 10);
                        for (int t = 0; t <= 10; ++t) {
                            const strip_query q{t, a, b, L};
                            const polynomial expected = brute_force(q, w);
                            for (engine e : engines) {
                                const polynomial got = e == engine::generating_function ? gf.coefficient(t) : compute(e, q, w);
                                if (got != expected)
                                    return fail(to_string(q) + " background b=" + std::to_string(background) + ": " +
                                                to_string(e) + " gives " + to_string(got) + ", brute force " +
                                                to_string(expected));
                            }
                            ++queries;
                        }
                    }
            }
    }
    return {true, std::to_string(queries) + " queries over " + std::to_string(decoration_sets) + " weight sets"};
}

// 2. Two-wall model: CT form, binomial sum and brute force.
outcome two_wall_model() {
    int cases = 0;
    for (int L = 2; L <= 6; ++L)
        for (int r = 0; r <= 8; ++r) {
            const dmr_params p{r, L};
            const polynomial bf = brute_force({2 * r, 0, 0, L}, dmr_weights(p));
            const polynomial ct = dmr_ct(p), sum = dmr_sum(p);
            if (ct != bf || sum != bf)
                return fail("r=" + std::to_string(r) + " L=" + std::to_string(L) + ": ct " + to_string(ct) + ", sum " +
                            to_string(sum) + ", brute force " + to_string(bf));
            ++cases;
        }
    if (dmr_sum({1, 4}) != var("kappa")) return fail("r=1 anchor");
    if (to_string(dmr_sum({2, 2})) != "kappa^2 + kappa*omega") return fail("r=2, L=2 anchor");
    return {true, std::to_string(cases) + " (r, L) pairs, anchors kappa and kappa^2 + kappa*omega"};
}

// 3. Four decorated heights.
outcome four_weight_model() {
    int cases = 0;
    for (int L = 4; L <= 7; ++L)
        for (int r = 0; r <= 6; ++r) {
            const four_weight_params p{r, L};
            const polynomial bf = brute_force({2 * r, 0, 0, L}, four_weight_weights(p));
            const polynomial ct = four_weight_ct(p), sum = four_weight_sum(p);
            if (ct != bf || sum != bf)
                return fail("r=" + std::to_string(r) + " L=" + std::to_string(L) + ": ct " + to_string(ct) + ", sum " +
                            to_string(sum) + ", brute force " + to_string(bf));
            ++cases;
        }
    return {true, std::to_string(cases) + " (r, L) pairs"};
}

// 4. Height-stratified sum for arbitrary down weights.
outcome stratified_model() {
    const auto k = kappa_symbols(8);
    int strata = 0;
    for (int n = 0; n <= 7; ++n) {
        std::vector<strip_height> heights;
        for (int L = 1; L <= 6; ++L) heights.emplace_back(L);
        heights.emplace_back(std::nullopt); // half plane, i.e. the strip of height n
        for (const auto& L : heights) {
            const int strip = L ? *L : std::max(n, 1);
            const auto w = rogers_weights(strip, k);
            const strip_query q{2 * n, 0, 0, strip};
            const polynomial bf = brute_force(q, w);
            if (rogers(n, L, k) != bf)
                return fail("n=" + std::to_string(n) + " L=" + (L ? std::to_string(*L) : "inf") + ": " +
                            to_string(rogers(n, L, k)) + " vs " + to_string(bf));
            for (int l = 0; l <= std::min(n - 1, strip - 1); ++l) {
                if (stratified_weight(n, l, k, L) != brute_force(q, w, {18, l + 1}))
                    return fail("stratum l=" + std::to_string(l) + " of n=" + std::to_string(n));
                ++strata;
            }
            if (n >= 1 && stratified_weight(n, 0, k, L) != pow(k[0], n)) return fail("s_0 != kappa_1^n");
        }
    }
    return {true, std::to_string(strata) + " strata checked against height-filtered enumeration"};
}

// 5. Pavings against the recurrence, and both cutting identities.
outcome paving_oracle() {
    int specs = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const auto w = random_weights(uniform(0, 6), trial % 2 == 0);
        for (int j = 0; j <= 3; ++j)
            for (int k = 0; k <= 10; ++k)
                if (paving_polynomial(k, j, w) != ortho_poly(k, j, w).value)
                    return fail("paving sum differs at k=" + std::to_string(k) + " j=" + std::to_string(j));
        ++specs;
    }
    int cuts = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto w = random_weights(6);
        for (int j = 0; j <= 2; ++j)
            for (int k = 1; k <= 8; ++k) {
                const polynomial p = ortho_poly(k, j, w).value;
                for (int c = 1; c <= k - 1; ++c, ++cuts)
                    if (edge_cut(k, j, c, w).expand(w) != p) return fail("edge cut k=" + std::to_string(k));
                for (int c = 0; c <= k - 1; ++c, ++cuts)
                    if (vertex_cut(k, j, c, w).expand(w) != p) return fail("vertex cut k=" + std::to_string(k));
            }
    }
    return {true, std::to_string(specs) + " weight specs, " + std::to_string(cuts) + " cuts"};
}

// 6. Decomposition size bound and the two-wall four-term form.
outcome decomposition_bound() {
    int placements = 0;
    for (int trial = 0; trial < 150; ++trial) {
        weight_spec w = weight_spec::background(var("b"), var("lambda"), 12);
        const int k = uniform(1, 12), j = uniform(0, 3);
        const int n_across = uniform(0, 3), n_down = uniform(0, 3);
        for (int i = 0; i < n_across; ++i) w.across[uniform(0, 15)] = var("c_" + std::to_string(i));
        for (int i = 0; i < n_down; ++i) w.down[uniform(1, 15)] = var("d_" + std::to_string(i));
        const auto d = decompose(k, j, w);
        const auto [db, dl] = decoration_counts(k, j, w);
        if (d.terms.size() > static_cast<std::size_t>(std::pow(2, dl) * std::pow(3, db)))
            return fail("term count " + std::to_string(d.terms.size()) + " above bound");
        if (d.expand(w) != ortho_poly(k, j, w).value) return fail("expansion differs");
        ++placements;
    }
    for (int L = 4; L <= 9; ++L) {
        const auto w = dmr_weights({0, L});
        const auto d = decompose(L + 1, 0, w);
        // with b = 0, S_1 = x
        std::multiset<std::pair<std::string, std::multiset<int>>> got, expected{
            {"1", {1, 1, L - 1}}, {"-kappa", {1, L - 2}}, {"-omega", {1, L - 2}}, {"kappa*omega", {L - 3}}};
        for (const auto& t : d.terms) {
            std::multiset<int> orders;
            for (const auto& f : t.factors) orders.insert(f.order);
            got.emplace(to_string(t.coefficient), orders);
        }
        if (got != expected) return fail("two-wall decomposition at L=" + std::to_string(L) + ": " + to_string(d));
    }
    return {true, std::to_string(placements) + " placements; four-term two-wall form for L = 4..9"};
}

// 7. Endpoint identity modulo the top polynomial, rational weights.
outcome divisibility() {
    int checks = 0;
    for (int trial = 0; trial < 5; ++trial)
        for (int L = 0; L <= 8; ++L) {
            weight_spec w = random_weights(L, false);
            for (auto it = w.down.begin(); it != w.down.end();)
                it = w.down_weight(it->first).is_zero() ? w.down.erase(it) : std::next(it);
            for (int y = 0; y <= L; ++y) {
                polynomial lambdas(1);
                for (int l = y + 1; l <= L; ++l) lambdas *= w.down_weight(l);
                const polynomial lhs = lambdas * ortho_poly(y, 0, w).value -
                                       ortho_poly(L, 0, w).value * ortho_poly(L - y, y + 1, w).value;
                const auto [q, r] = divide_monic(lhs, ortho_poly(L + 1, 0, w).value, x_symbol());
                if (!r.is_zero()) return fail("nonzero remainder at L=" + std::to_string(L) + " y=" + std::to_string(y));
                ++checks;
            }
        }
    return {true, std::to_string(checks) + " exact divisions"};
}

// 8. Floating-point closed form of S_k against the exact recurrence.
outcome numeric_closed_form() {
    std::vector<double> xs;
    for (int i = 0; i < 10; ++i) xs.push_back(-1.9 + 3.8 * (i + 0.5) / 10.0);
    for (int i = 0; i < 10; ++i) xs.push_back(2.1 + 1.9 * (i + 0.5) / 10.0);
    double worst = 0;
    for (double x : xs)
        for (int k = 0; k <= 12; ++k) {
            const auto [exact, closed] = chebyshev_closed_form_check(k, x);
            const double rel = std::abs(exact - closed) / std::abs(exact);
            worst = std::max(worst, rel);
            if (!(rel <= 1e-9)) {
                std::ostringstream os;
                os << "k=" << k << " x=" << x << ": exact " << exact << ", closed form " << closed << " (relative error "
                   << rel << ")";
                return fail(os.str());
            }
        }
    std::ostringstream os;
    os << xs.size() << " points, k <= 12, worst relative error " << worst;
    return {true, os.str()};
}

struct csv_row {
    std::string query, engine;
    double micros;
    std::size_t terms;
};

std::vector<csv_row> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (line != "query,engine,micros,terms") throw std::runtime_error("bad CSV header: " + line);
    std::vector<csv_row> rows;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
        if (cells.size() != 4) throw std::runtime_error("bad CSV row: " + line);
        rows.push_back({cells[0], cells[1], std::stod(cells[2]), std::stoul(cells[3])});
    }
    return rows;
}

// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += std::log(x);
        sy += std::log(y);
        sxx += std::log(x) * std::log(x);
        sxy += std::log(x) * std::log(y);
    }
    const double n = static_cast<double>(pts.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// 9. Bench CSV: rho-ct cost polynomial in t at fixed L; rogers cost governed by
//    the nesting depth min(n, L).
outcome bench_sanity() {
    std::ostringstream details;

    job_spec rho_job;
    rho_job.mode = job_mode::bench;
    rho_job.L = 3;
    rho_job.t = 40;
    rho_job.engines = {"rho-ct"};
    const auto rho_res = run_job(rho_job);
    if (rho_res.exit_code != 0) return fail("rho-ct bench failed: " + rho_res.err);
    const auto rho_rows = parse_csv(rho_res.out);
    if (rho_rows.size() != 41) return fail("rho-ct bench has " + std::to_string(rho_rows.size()) + " rows");
    std::vector<std::pair<double, double>> pts;
    for (std::size_t t = 0; t < rho_rows.size(); ++t) {
        if (!(rho_rows[t].micros > 0)) return fail("nonpositive timing");
        if (t >= 10) pts.emplace_back(static_cast<double>(t), rho_rows[t].micros);
    }
    const double slope = log_log_slope(pts);
    // an exponential cost would show up as a steadily rising local slope; a
    // polynomial one keeps it bounded
    const double ratio = rho_rows[40].micros / rho_rows[20].micros;
    details << "rho-ct t=10..40 log-log slope " << slope << ", cost(40)/cost(20) " << ratio;
    if (!(slope > 0 && slope < 6 && ratio < 64)) return fail(details.str());

    // summand counts give a timing-free measure of the nested sum's cost
    const auto k = kappa_symbols(40);
    std::vector<double> growth;
    for (int L = 1; L <= 4; ++L) {
        std::uint64_t s20 = 0, s40 = 0;
        rogers(20, L, k, &s20);
        rogers(40, L, k, &s40);
        growth.push_back(std::log2(static_cast<double>(s40) / static_cast<double>(s20)));
    }
    details << "; rogers summand growth exponents (L=1..4)";
    for (double g : growth) details << ' ' << std::round(g * 100) / 100;
    for (std::size_t i = 0; i < growth.size(); ++i) {
        const double depth = static_cast<double>(i); // L - 1 free heights
        if (std::abs(growth[i] - depth) > 0.75) return fail(details.str());
    }
    std::uint64_t capped = 0, uncapped = 0;
    rogers(12, 3, k, &capped);
    rogers(12, std::nullopt, k, &uncapped);
    details << "; n=12 summands L=3 " << capped << " vs L=inf " << uncapped;
    if (!(uncapped > 10 * capped)) return fail(details.str());

    auto rogers_job = job_spec{};
    rogers_job.mode = job_mode::bench;
    rogers_job.model = model_kind::rogers;
    rogers_job.params = {{"n", "10"}, {"L", "3"}};
    const auto rogers_res = run_job(rogers_job);
    if (rogers_res.exit_code != 0) return fail("rogers bench failed: " + rogers_res.err);
    const auto rogers_rows = parse_csv(rogers_res.out);
    if (rogers_rows.size() != 11 * 2) return fail("rogers bench row count " + std::to_string(rogers_rows.size()));
    for (const auto& r : rogers_rows)
        if (!(r.micros > 0)) return fail("nonpositive timing in rogers bench");
    return {true, details.str()};
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<outcome()>>> criteria{
        {"five-way engine agreement", engine_agreement},
        {"two-wall closed forms", two_wall_model},
        {"four-weight closed forms", four_weight_model},
        {"height-stratified sum", stratified_model},
        {"paving oracle and cuts", paving_oracle},
        {"decomposition bound", decomposition_bound},
        {"endpoint divisibility", divisibility},
        {"numeric closed form", numeric_closed_form},
        {"bench sanity", bench_sanity},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int number = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(number)) continue;
        const auto start = std::chrono::steady_clock::now();
        outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && o.pass;
        std::cout << "criterion " << number << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
                  << o.detail << "; " << std::round(secs * 10) / 10 << " s)" << std::endl;
    }
    return all ? 0 : 1;
}
