#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fresnel/harness.hpp"

using namespace fresnel;
using namespace fresnel::harness;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream file(path);
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

// Run the installed CLI binary with the given arguments, capturing both
// streams through temporary files in the working directory.
CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string tag = "cli_capture_" + std::to_string(counter++);
    const std::string out_file = tag + ".out";
    const std::string err_file = tag + ".err";
    const std::string cmd =
        std::string("\"") + CLI_PATH + "\" " + args + " > " + out_file + " 2> " + err_file;
    const int raw = std::system(cmd.c_str());
    CliResult r;
    if (WIFEXITED(raw)) r.code = WEXITSTATUS(raw);
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    std::remove(out_file.c_str());
    std::remove(err_file.c_str());
    return r;
}

}  // namespace

// ------------------------------------------------------------ primitives

TEST_CASE("grids are inclusive at both ends and validated") {
    const std::vector<double> xs = make_grid({0.0, 1.0, 5});
    REQUIRE(xs.size() == 5);
    CHECK(xs[0] == 0.0);
    CHECK(xs[1] == 0.25);
    CHECK(xs[2] == 0.5);
    CHECK(xs[3] == 0.75);
    CHECK(xs[4] == 1.0);
    CHECK_THROWS_AS(make_grid({0.0, 1.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(make_grid({1.0, 1.0, 5}), std::invalid_argument);
    CHECK_THROWS_AS(make_grid({2.0, 1.0, 5}), std::invalid_argument);
}

TEST_CASE("17-digit serialization round-trips doubles exactly") {
    const double values[] = {0.0, 0.5, 0.1, 1.0 / 3.0, detail::pi, 1e300, 5e-324};
    for (const double v : values) {
        const std::string s = fmt17(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(fmt17(0.0) == "0");
    CHECK(fmt17(0.5) == "0.5");
}

TEST_CASE("parallel loops fill by index and propagate exceptions") {
    std::vector<double> v(10000, -1.0);
    parallel_for(v.size(), [&](std::size_t i) { v[i] = static_cast<double>(i) * 2.0; });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<double>(i) * 2.0);
    CHECK_THROWS_AS(parallel_for(512,
                                 [](std::size_t i) {
                                     if (i == 137) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
    CHECK_NOTHROW(parallel_for(0, [](std::size_t) {}));
}

// ------------------------------------------------------------------ eval

TEST_CASE("eval serializes the origin exactly and validates inputs") {
    EvalOptions opt;
    opt.xs = {0.0, 1.0};
    opt.N = 12;
    std::ostringstream out;
    CHECK(run_eval(opt, out) == 0);
    const std::vector<std::string> lines = split_lines(out.str());
    REQUIRE(lines.size() >= 4);
    CHECK(lines[0] == "x,f_re,f_im,c,s");
    CHECK(lines[1].rfind("# ", 0) == 0);
    CHECK(lines[3] == "0,0.5,0,0,0");

    EvalOptions bad;
    bad.xs = {1.0, std::numeric_limits<double>::infinity()};
    std::ostringstream sink;
    CHECK_THROWS_AS(run_eval(bad, sink), std::invalid_argument);
}

// ----------------------------------------------------------------- sweep

TEST_CASE("sweeps gate the exit code on the configured thresholds") {
    SweepOptions opt;
    opt.grid = {0.0, 20.0, 101};
    opt.n_list = {12};
    opt.oracle = OracleKind::weideman;
    opt.mode = "abs";
    opt.max_abs = 1e-30;  // absurdly tight: must trip
    std::ostringstream out;
    CHECK(run_sweep(opt, out) == 1);
    CHECK(sweep(opt).violated);

    opt.mode = "rel";  // the abs gate is now inert
    opt.max_rel = 0.0;
    CHECK(!sweep(opt).violated);

    opt.mode = "both";
    opt.max_abs = 1.0;
    CHECK(!sweep(opt).violated);

    opt.mode = "sideways";
    CHECK_THROWS_AS(sweep(opt), std::invalid_argument);

    SweepOptions empty;
    empty.n_list = {};
    empty.m_list = {};
    CHECK_THROWS_AS(sweep(empty), std::invalid_argument);
}

TEST_CASE("model-only sweeps leave the C/S columns as placeholders") {
    SweepOptions opt;
    opt.grid = {0.5, 2.0, 11};
    opt.n_list = {};
    opt.m_list = {50};
    opt.oracle = OracleKind::quad;
    const SweepResult r = sweep(opt);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].method == "model");
    CHECK(r.rows[0].param == 50);
    CHECK(std::isnan(r.rows[0].c_max_abs));
    CHECK(std::isnan(r.rows[0].s_max_rel));
    CHECK(r.rows[0].f_max_abs < 1e-13);
    CHECK(!r.violated);
}

TEST_CASE("sweep CSV starts with its header, then metadata") {
    SweepOptions opt;
    opt.grid = {0.0, 5.0, 21};
    opt.n_list = {6};
    opt.oracle = OracleKind::weideman;
    std::ostringstream out;
    CHECK(run_sweep(opt, out) == 0);
    const std::vector<std::string> lines = split_lines(out.str());
    REQUIRE(lines.size() >= 3);
    CHECK(lines[0] ==
          "method,param,f_max_abs,f_arg_abs,f_max_rel,f_arg_rel,"
          "c_max_abs,c_max_rel,s_max_abs,s_max_rel");
    CHECK(lines[1].rfind("# ", 0) == 0);
    CHECK(lines.back().rfind("rule,6,", 0) == 0);
}

// ----------------------------------------------------------- convergence

TEST_CASE("convergence tables decay at the documented geometric rate") {
    ConvergenceOptions opt;
    opt.grid = {0.0, 20.0, 201};
    opt.n_list = {1, 2, 3, 4, 5, 6, 7, 8};
    opt.oracle = OracleKind::weideman;
    const ConvergenceResult r = convergence(opt);
    REQUIRE(r.rows.size() == 8);
    CHECK(std::isnan(r.rows[0].ratio_to_prev));
    CHECK(std::isnan(r.rows[0].implied_rate));
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
        CHECK(r.rows[i].max_abs < r.rows[i - 1].max_abs);
        CHECK(r.rows[i].ratio_to_prev > 1.0);
    }
    CHECK(!r.rate_violated);

    ConvergenceOptions bad = opt;
    bad.n_list = {3, 2};
    CHECK_THROWS_AS(convergence(bad), std::invalid_argument);
    bad.n_list = {};
    CHECK_THROWS_AS(convergence(bad), std::invalid_argument);
}

// ---------------------------------------------------------------- bounds

TEST_CASE("bound verification finds no violations on a coarse grid") {
    BoundsOptions opt;
    opt.grid = {0.0, 50.0, 201};
    opt.n_list = {5};
    opt.oracle = OracleKind::quad;
    const BoundsResult r = bounds_sweep(opt);
    REQUIRE(r.rows.size() == 201);
    REQUIRE(r.summary.size() == 1);
    CHECK(r.summary[0].N == 5);
    CHECK(r.violations == 0);
    for (const BoundsRow& row : r.rows) {
        CHECK(!row.violation);
        CHECK(row.measured <= row.eta + domination_slack);
    }
    std::ostringstream out;
    CHECK(run_bounds(opt, out) == 0);
    const std::vector<std::string> lines = split_lines(out.str());
    CHECK(lines[0] == "n,x,measured,eta,rel_err,rel_bound,violation");
}

// ----------------------------------------------------------------- bench

TEST_CASE("bench times both methods and validates its options") {
    BenchOptions opt;
    opt.length = 2000;
    opt.N = 12;
    opt.M = 18;
    opt.repeats = 2;
    opt.xmax = 100.0;
    const BenchResult r = bench(opt);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].method == "rule");
    CHECK(r.rows[1].method == "model");
    for (const BenchRowResult& row : r.rows) {
        CHECK(row.mean_seconds > 0.0);
        CHECK(row.ns_per_point > 0.0);
        CHECK(std::isfinite(row.checksum));
        CHECK(row.checksum != 0.0);
    }

    std::ostringstream out;
    CHECK(run_bench(opt, out) == 0);
    CHECK(contains(out.str(), "# op-note: "));
    CHECK(contains(out.str(), "rule,"));
    CHECK(contains(out.str(), "model,"));

    BenchOptions bad = opt;
    bad.length = 0;
    CHECK_THROWS_AS(bench(bad), std::invalid_argument);
    bad = opt;
    bad.repeats = 0;
    CHECK_THROWS_AS(bench(bad), std::invalid_argument);
    bad = opt;
    bad.xmax = 0.0;
    CHECK_THROWS_AS(bench(bad), std::invalid_argument);
}

// -------------------------------------------------------------- appendix

TEST_CASE("appendix verification passes and validates its inputs") {
    AppendixOptions opt;
    opt.ymax = 3.0;
    opt.points = 51;
    const AppendixResult r = appendix(opt);
    REQUIRE(r.axis.size() == 51);
    REQUIRE(r.rhp.size() == 200);
    CHECK(r.violations == 0);
    CHECK(r.min_g >= 1.0);
    CHECK(r.axis[0].y == 0.0);
    CHECK(r.axis[0].magnitude == 1.0);
    CHECK(r.axis[0].in_range);
    for (const AppendixRhpRow& row : r.rhp) {
        CHECK(row.re > 0.0);
        CHECK(row.in_range);
    }

    AppendixOptions bad = opt;
    bad.ymax = 7.0;
    CHECK_THROWS_AS(appendix(bad), std::invalid_argument);
    bad = opt;
    bad.ymax = 0.0;
    CHECK_THROWS_AS(appendix(bad), std::invalid_argument);
    bad = opt;
    bad.points = 1;
    CHECK_THROWS_AS(appendix(bad), std::invalid_argument);

    // serialization is deterministic under the parallel fill
    std::ostringstream a, b;
    CHECK(run_appendix(opt, a) == 0);
    CHECK(run_appendix(opt, b) == 0);
    CHECK(a.str() == b.str());
    CHECK(split_lines(a.str())[0] == "part,re,im,magnitude,lower,loose,upper,g,in_range");
}

// -------------------------------------------------------- CLI subprocess

TEST_CASE("cli: help, usage errors and diagnostics map to the right exit codes") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("eval --help").code == 0);
    CHECK(run_cli("").code == 2);               // a subcommand is required
    CHECK(run_cli("frobnicate").code == 2);     // unknown subcommand
    CHECK(run_cli("eval").code == 2);           // missing required --x
    CHECK(run_cli("eval --x 1 --wat").code == 2);
    CHECK(run_cli("sweep --mode bogus --n 4").code == 2);
    CHECK(run_cli("bench --length 0").code == 2);
    CHECK(run_cli("appendix --ymax 7").code == 2);

    const CliResult overflow = run_cli("eval --x 1e400");
    CHECK(overflow.code == 2);
    CHECK(contains(overflow.err, "non-finite input"));
    const CliResult garbage = run_cli("eval --x abc");
    CHECK(garbage.code == 2);
    CHECK(contains(garbage.err, "non-finite input"));
}

TEST_CASE("cli: eval output matches the in-process serialization byte for byte") {
    const CliResult r = run_cli("eval --x 0,1,2.5 --n 11");
    CHECK(r.code == 0);
    EvalOptions opt;
    opt.xs = {0.0, 1.0, 2.5};
    opt.N = 11;
    std::ostringstream expect;
    run_eval(opt, expect);
    CHECK(r.out == expect.str());
    CHECK(contains(r.out, "0,0.5,0,0,0"));
}

TEST_CASE("cli: sweep exit code reflects threshold violations") {
    const std::string base = "sweep --xmin 0 --xmax 20 --points 51 --n 12 --oracle weideman";
    CHECK(run_cli(base).code == 0);
    CHECK(run_cli(base + " --mode abs --max-abs 1e-30").code == 1);
}

TEST_CASE("cli: identical invocations produce byte-identical files") {
    const std::string cmd =
        "sweep --xmin 0 --xmax 20 --points 101 --n 4,6 --m 12 --oracle weideman --out ";
    CHECK(run_cli(cmd + "det_a.csv").code == 0);
    CHECK(run_cli(cmd + "det_b.csv").code == 0);
    const std::string a = slurp("det_a.csv");
    const std::string b = slurp("det_b.csv");
    CHECK(!a.empty());
    CHECK(a == b);
    std::remove("det_a.csv");
    std::remove("det_b.csv");
}

TEST_CASE("cli: a config file supplies defaults and explicit flags win") {
    {
        std::ofstream cfg("sweep_defaults.ini");
        cfg << "xmax=10\npoints=101\n";
    }
    const CliResult from_cfg =
        run_cli("sweep --config sweep_defaults.ini --n 4 --oracle weideman");
    CHECK(from_cfg.code == 0);
    CHECK(contains(from_cfg.out, "# grid: [0, 10] x 101"));

    const CliResult flag_wins =
        run_cli("sweep --config sweep_defaults.ini --xmax 20 --n 4 --oracle weideman");
    CHECK(flag_wins.code == 0);
    CHECK(contains(flag_wins.out, "# grid: [0, 20] x 101"));
    std::remove("sweep_defaults.ini");

    const CliResult missing = run_cli("sweep --config no_such_file.ini --n 4");
    CHECK(missing.code == 2);
    CHECK(contains(missing.err, "cannot open config file"));

    {
        std::ofstream cfg("sweep_bad.ini");
        cfg << "frequency=10\n";
    }
    const CliResult bad_key = run_cli("sweep --config sweep_bad.ini --n 4");
    CHECK(bad_key.code == 2);
    CHECK(contains(bad_key.err, "unknown key"));
    std::remove("sweep_bad.ini");
}

TEST_CASE("cli: remaining subcommands run clean on small workloads") {
    CHECK(run_cli("convergence --xmin 0 --xmax 20 --points 51 --n 1,2,3 "
                  "--oracle weideman").code == 0);
    CHECK(run_cli("bounds --xmin 0 --xmax 20 --points 51 --n 5 --oracle weideman").code == 0);
    const CliResult bench_run = run_cli("bench --length 2000 --n 12 --m 18 --repeats 1");
    CHECK(bench_run.code == 0);
    CHECK(contains(bench_run.out, "# op-note: "));
    CHECK(contains(bench_run.out, "rule,"));
    CHECK(contains(bench_run.out, "model,"));
    CHECK(run_cli("appendix --ymax 2 --points 21").code == 0);
}

TEST_CASE("cli: an unwritable output path is a usage error") {
    const CliResult r = run_cli("eval --x 1 --out /nonexistent_dir_zz/out.csv");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "cannot open output file"));
}
