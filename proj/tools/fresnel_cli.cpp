#include "fresnel/harness.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace fresnel;
using namespace fresnel::harness;

// Run `fn` against stdout or, when a path was given, a freshly opened file.
int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
    if (path.empty()) return fn(std::cout);
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    const int rc = fn(file);
    file.flush();
    if (!file) throw std::runtime_error("failed writing output file: " + path);
    return rc;
}

std::string trim(const std::string& s) {
    const char* ws = " \t\r";
    const std::size_t b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    const std::size_t e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

// Apply key=value defaults from a config file.  Each key names a long option
// of the subcommand (without the leading dashes); a key whose option already
// appeared on the command line is skipped, so explicit flags always win.
// Handled here rather than through CLI11's set_config, which only consults
// config files registered on the root command.
void apply_config(CLI::App* sub, const std::string& path) {
    if (path.empty()) return;
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(file, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = " on line " + std::to_string(lineno) + " of " + path;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key=value" + where);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config: empty key" + where);
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw std::invalid_argument("config: unknown key '" + key + "'" + where);
        if (opt->count() > 0) continue;  // the command line wins
        opt->add_result(value);
        opt->run_callback();
    }
}

std::vector<double> parse_x_list(const std::vector<std::string>& raw) {
    std::vector<double> xs;
    xs.reserve(raw.size());
    for (const std::string& s : raw) {
        const char* begin = s.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0' || !std::isfinite(v))
            throw std::invalid_argument("non-finite input: '" + s + "'");
        xs.push_back(v);
    }
    return xs;
}

void add_grid_options(CLI::App* sub, Grid& grid) {
    sub->add_option("--xmin", grid.lo, "lower end of the evaluation grid");
    sub->add_option("--xmax", grid.hi, "upper end of the evaluation grid");
    sub->add_option("--points", grid.points, "number of equally spaced grid points");
}

void add_oracle_option(CLI::App* sub, OracleKind& kind) {
    static const std::map<std::string, OracleKind> names{
        {"quad", OracleKind::quad},
        {"weideman", OracleKind::weideman},
        {"power_series", OracleKind::power_series},
        {"dual", OracleKind::dual}};
    sub->add_option("--oracle", kind, "reference used to measure errors")
        ->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fresnel integral toolkit: evaluate the modified trapezium rule and "
                 "verify its error claims against independent references"};
    app.require_subcommand(1);
    int rc = 0;

    // ------------------------------------------------------------- eval
    auto eval_opt = std::make_shared<EvalOptions>();
    auto eval_xs = std::make_shared<std::vector<std::string>>();
    auto eval_out = std::make_shared<std::string>();
    CLI::App* eval = app.add_subcommand("eval", "print F, C and S at given points");
    eval->add_option("--x", *eval_xs, "comma-separated evaluation points")
        ->required()
        ->delimiter(',');
    eval->add_option("--n", eval_opt->N, "number of rule nodes");
    eval->add_option("--out", *eval_out, "write CSV here instead of stdout");
    auto eval_cfg = std::make_shared<std::string>();
    eval->add_option("--config", *eval_cfg, "key=value defaults file; explicit flags win");
    eval->callback([&rc, eval, eval_opt, eval_xs, eval_out, eval_cfg] {
        apply_config(eval, *eval_cfg);
        eval_opt->xs = parse_x_list(*eval_xs);
        rc = with_output(*eval_out,
                         [&](std::ostream& os) { return run_eval(*eval_opt, os); });
    });

    // ------------------------------------------------------------ sweep
    auto sweep_opt = std::make_shared<SweepOptions>();
    auto sweep_out = std::make_shared<std::string>();
    CLI::App* sweep = app.add_subcommand(
        "sweep", "max abs/rel error of rule sizes and model degrees over a grid");
    add_grid_options(sweep, sweep_opt->grid);
    sweep->add_option("--n", sweep_opt->n_list, "rule sizes to test")->delimiter(',');
    sweep->add_option("--m", sweep_opt->m_list, "rational model degrees to test")
        ->delimiter(',');
    add_oracle_option(sweep, sweep_opt->oracle);
    sweep->add_option("--mode", sweep_opt->mode, "which thresholds gate the exit code")
        ->check(CLI::IsMember({"abs", "rel", "both"}));
    sweep->add_option("--max-abs", sweep_opt->max_abs,
                      "fail (exit 1) if any max abs error exceeds this; 0 disables");
    sweep->add_option("--max-rel", sweep_opt->max_rel,
                      "fail (exit 1) if any max rel error exceeds this; 0 disables");
    sweep->add_option("--out", *sweep_out, "write CSV here instead of stdout");
    auto sweep_cfg = std::make_shared<std::string>();
    sweep->add_option("--config", *sweep_cfg, "key=value defaults file; explicit flags win");
    sweep->callback([&rc, sweep, sweep_opt, sweep_out, sweep_cfg] {
        apply_config(sweep, *sweep_cfg);
        rc = with_output(*sweep_out,
                         [&](std::ostream& os) { return run_sweep(*sweep_opt, os); });
    });

    // ------------------------------------------------------ convergence
    auto conv_opt = std::make_shared<ConvergenceOptions>();
    auto conv_out = std::make_shared<std::string>();
    CLI::App* conv = app.add_subcommand(
        "convergence", "per-N max error decay and implied geometric rate");
    add_grid_options(conv, conv_opt->grid);
    conv->add_option("--n", conv_opt->n_list, "ascending rule sizes")->delimiter(',');
    add_oracle_option(conv, conv_opt->oracle);
    conv->add_option("--out", *conv_out, "write CSV here instead of stdout");
    auto conv_cfg = std::make_shared<std::string>();
    conv->add_option("--config", *conv_cfg, "key=value defaults file; explicit flags win");
    conv->callback([&rc, conv, conv_opt, conv_out, conv_cfg] {
        apply_config(conv, *conv_cfg);
        rc = with_output(*conv_out,
                         [&](std::ostream& os) { return run_convergence(*conv_opt, os); });
    });

    // ----------------------------------------------------------- bounds
    auto bounds_opt = std::make_shared<BoundsOptions>();
    auto bounds_out = std::make_shared<std::string>();
    CLI::App* bounds = app.add_subcommand(
        "bounds", "check measured errors against the a priori error bound");
    add_grid_options(bounds, bounds_opt->grid);
    bounds->add_option("--n", bounds_opt->n_list, "ascending rule sizes")->delimiter(',');
    add_oracle_option(bounds, bounds_opt->oracle);
    bounds->add_option("--out", *bounds_out, "write CSV here instead of stdout");
    auto bounds_cfg = std::make_shared<std::string>();
    bounds->add_option("--config", *bounds_cfg, "key=value defaults file; explicit flags win");
    bounds->callback([&rc, bounds, bounds_opt, bounds_out, bounds_cfg] {
        apply_config(bounds, *bounds_cfg);
        rc = with_output(*bounds_out,
                         [&](std::ostream& os) { return run_bounds(*bounds_opt, os); });
    });

    // ------------------------------------------------------------ bench
    auto bench_opt = std::make_shared<BenchOptions>();
    auto bench_out = std::make_shared<std::string>();
    auto bench_length = std::make_shared<long long>(10'000'000);
    CLI::App* bench = app.add_subcommand(
        "bench", "serial timing of the rule versus the rational model");
    bench->add_option("--length", *bench_length, "number of evaluation points");
    bench->add_option("--n", bench_opt->N, "rule size to time");
    bench->add_option("--m", bench_opt->M, "model degree to time");
    bench->add_option("--repeats", bench_opt->repeats, "timed repetitions to average");
    bench->add_option("--xmax", bench_opt->xmax, "points are spread over [0, xmax)");
    bench->add_option("--out", *bench_out, "write CSV here instead of stdout");
    auto bench_cfg = std::make_shared<std::string>();
    bench->add_option("--config", *bench_cfg, "key=value defaults file; explicit flags win");
    bench->callback([&rc, bench, bench_opt, bench_out, bench_length, bench_cfg] {
        apply_config(bench, *bench_cfg);
        if (*bench_length < 1) throw std::invalid_argument("bench: length must be >= 1");
        bench_opt->length = static_cast<std::size_t>(*bench_length);
        rc = with_output(*bench_out,
                         [&](std::ostream& os) { return run_bench(*bench_opt, os); });
    });

    // --------------------------------------------------------- appendix
    auto app_opt = std::make_shared<AppendixOptions>();
    auto app_out = std::make_shared<std::string>();
    CLI::App* appx = app.add_subcommand(
        "appendix", "two-sided magnitude envelope for erfc on the imaginary axis "
                    "and in the right half-plane");
    appx->add_option("--ymax", app_opt->ymax, "top of the imaginary-axis grid");
    appx->add_option("--points", app_opt->points, "imaginary-axis grid points");
    appx->add_option("--degree", app_opt->model_degree, "rational model degree");
    appx->add_option("--out", *app_out, "write CSV here instead of stdout");
    auto appx_cfg = std::make_shared<std::string>();
    appx->add_option("--config", *appx_cfg, "key=value defaults file; explicit flags win");
    appx->callback([&rc, appx, app_opt, app_out, appx_cfg] {
        apply_config(appx, *appx_cfg);
        rc = with_output(*app_out,
                         [&](std::ostream& os) { return run_appendix(*app_opt, os); });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends exit 0
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
