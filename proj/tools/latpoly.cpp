// latpoly: weight polynomials of lattice paths in a strip.
//
//   latpoly compute --t 4 --L 2
//   latpoly compute --model dmr --L 2 --param r=2
//   latpoly crosscheck --t 6 --L 3
//   latpoly bench --model rogers --param n=8 --param L=3
//   latpoly gf --L 2 --y-start 0 --y-end 1 --order 8

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <latpoly/cli.hpp>

namespace {

struct raw_options {
    std::optional<int> t, L, order;
    int y_start = 0, y_end = 0;
    int cap = latpoly::brute_force_options{}.cap;
    std::string weights_file, model, format = "plain", sweep = "t";
    std::vector<std::string> params, engines;
};

void add_common(CLI::App* sub, raw_options& o) {
    sub->add_option("--t", o.t, "path length (models: 2r or 2n; sweeps: upper end)");
    sub->add_option("--L", o.L, "strip height (sweeps: upper end)");
    sub->add_option("--y-start", o.y_start, "start height y'");
    sub->add_option("--y-end", o.y_end, "end height y");
    sub->add_option("--weights", o.weights_file, "weights JSON file");
    sub->add_option("--model", o.model, "named model: dmr, four or rogers");
    sub->add_option("--param", o.params, "model parameter k=v (repeatable)");
    sub->add_option("--engines", o.engines, "comma separated engines")->delimiter(',');
    sub->add_option("--format", o.format, "plain, json or latex");
    sub->add_option("--order", o.order, "series order (gf mode)");
    sub->add_option("--cap", o.cap, "largest t the brute-force engine accepts");
    sub->add_option("--sweep", o.sweep, "bench sweep variable: t or L");
}

latpoly::job_spec build_job(const std::string& mode, const raw_options& o) {
    latpoly::job_spec job;
    job.mode = latpoly::parse_mode(mode);
    job.t = o.t;
    job.L = o.L;
    job.y_start = o.y_start;
    job.y_end = o.y_end;
    job.model = latpoly::parse_model(o.model);
    job.engines = o.engines;
    job.format = latpoly::parse_format(o.format);
    job.order = o.order;
    job.cap = o.cap;
    job.sweep = o.sweep;
    for (const auto& p : o.params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0) throw latpoly::invalid_query("--param expects k=v, got \"" + p + "\"");
        job.params[p.substr(0, eq)] = p.substr(eq + 1);
    }
    if (!o.weights_file.empty()) {
        std::ifstream in(o.weights_file);
        if (!in) throw latpoly::invalid_query("cannot read weights file " + o.weights_file);
        std::stringstream text;
        text << in.rdbuf();
        job.weights = latpoly::parse_weights(text.str(), o.L);
    }
    return job;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weight polynomials of decorated lattice paths in a strip"};
    app.require_subcommand(1);
    raw_options opts;
    const std::pair<const char*, const char*> modes[] = {
        {"compute", "evaluate one weight polynomial"},
        {"crosscheck", "run several engines over a grid of queries and compare"},
        {"bench", "time engines over a sweep and print CSV"},
        {"gf", "print the generating function truncated at --order"}};
    for (const auto& [mode, help] : modes) add_common(app.add_subcommand(mode, help), opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    latpoly::job_result result;
    try {
        result = latpoly::run_job(build_job(app.get_subcommands().front()->get_name(), opts));
    } catch (const latpoly::error& e) {
        result = {2, "", std::string("error: ") + e.what() + "\n"};
    }
    std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
}
