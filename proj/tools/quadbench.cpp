// quadbench: Monte Carlo benchmark harness for adaptive-quadrature error
// estimators, plus small utilities for single integrations and rule audits.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quadbench/bench.hpp"
#include "quadbench/drivers.hpp"
#include "quadbench/estimators.hpp"
#include "quadbench/quad_rule.hpp"
#include "quadbench/testbed.hpp"

namespace {

constexpr int kExitBadArgs = 2;
constexpr int kExitEvalErrors = 3;

std::vector<double> parse_tol_list(const std::string& list) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < list.size()) {
        std::size_t next = list.find(',', pos);
        if (next == std::string::npos) next = list.size();
        out.push_back(std::stod(list.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> out;
    for (const std::string& kv : kvs) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--param", "expected key=value, got '" + kv + "'");
        out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return out;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
}

quadbench::quad_rule lookup_rule(const std::string& name) {
    using namespace quadbench;
    if (name == "simpson") return simpson_rule();
    if (name == "g10") return gauss_kronrod_21().first;
    if (name == "k21") return gauss_kronrod_21().second;
    if (name == "gl4") return lobatto_kronrod_7().first;
    if (name == "k7") return lobatto_kronrod_7().second;
    if (name.rfind("cc", 0) == 0) return clenshaw_curtis(std::stoi(name.substr(2)));
    if (name.rfind("gauss", 0) == 0) return gauss_legendre(std::stoi(name.substr(5)));
    throw CLI::ValidationError("--dump", "unknown rule '" + name + "'");
}

std::vector<const quadbench::error_estimator*> select_estimators(const std::string& name) {
    if (name == "all") return quadbench::all_estimators();
    return {&quadbench::find_estimator(name)};
}

std::vector<quadbench::family> select_families(const std::string& name) {
    using quadbench::family;
    if (name == "all")
        return {family::p_n, family::p_n1, family::p_n2, family::d0,
                family::d1,  family::d2,   family::s};
    return {quadbench::parse_family(name)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive-quadrature error-estimator benchmark"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from a key=value file");

    // bench
    std::string bench_estimator = "all";
    std::string bench_family = "all";
    std::string bench_tols = "1e-1,1e-3,1e-6,1e-9,1e-12";
    long long bench_realizations = 1000;
    std::uint64_t bench_seed = 42;
    std::string bench_format = "csv";
    std::string bench_out;
    CLI::App* bench = app.add_subcommand("bench", "run false-positive/false-negative cells");
    bench->add_option("--estimator", bench_estimator, "estimator name or 'all'");
    bench->add_option("--family", bench_family, "test-function family or 'all'");
    bench->add_option("--tol", bench_tols, "comma-separated relative tolerances");
    bench->add_option("--realizations", bench_realizations, "realizations per cell");
    bench->add_option("--seed", bench_seed, "base seed");
    bench->add_option("--format", bench_format, "csv or markdown")
        ->check(CLI::IsMember({"csv", "markdown"}));
    bench->add_option("--out", bench_out, "output path (default stdout)");

    // experiment
    std::string exp_which;
    std::string exp_estimator;
    long long exp_realizations = 1000;
    double exp_tol = 1e-9;
    std::uint64_t exp_seed = 42;
    CLI::App* experiment = app.add_subcommand("experiment", "full adaptive-run experiments");
    experiment->add_option("--which", exp_which, "lyness or waldvogel")
        ->required()
        ->check(CLI::IsMember({"lyness", "waldvogel"}));
    experiment->add_option("--estimator", exp_estimator, "estimator name")->required();
    experiment->add_option("--realizations", exp_realizations, "number of realizations");
    experiment->add_option("--tol", exp_tol, "relative tolerance");
    experiment->add_option("--seed", exp_seed, "base seed");

    // integrate
    std::string int_estimator;
    std::string int_family;
    std::vector<std::string> int_params;
    double int_tol = 1e-6;
    std::string int_driver = "recursive";
    std::uint64_t int_seed = 42;
    CLI::App* integrate = app.add_subcommand("integrate", "integrate one test instance");
    integrate->add_option("--estimator", int_estimator, "estimator name")->required();
    integrate->add_option("--family", int_family, "test-function family")->required();
    integrate->add_option("--param", int_params, "instance parameter overrides, key=value");
    integrate->add_option("--tol", int_tol, "relative tolerance");
    integrate->add_option("--driver", int_driver, "recursive or heap")
        ->check(CLI::IsMember({"recursive", "heap"}));
    integrate->add_option("--seed", int_seed, "seed for drawn parameters");

    // rules
    std::string rules_name;
    std::string rules_out;
    CLI::App* rules = app.add_subcommand("rules", "dump a rule's nodes and weights as CSV");
    rules->add_option("--dump", rules_name, "rule name (simpson, g10, k21, gl4, k7, ccN, gaussN)")
        ->required();
    rules->add_option("--out", rules_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitBadArgs;
    }

    try {
        if (*bench) {
            const std::vector<double> tols = parse_tol_list(bench_tols);
            std::vector<quadbench::bench_cell> cells;
            long long requested = 0, errors = 0;
            for (const quadbench::error_estimator* est : select_estimators(bench_estimator)) {
                for (quadbench::family fam : select_families(bench_family)) {
                    for (double tol : tols) {
                        cells.push_back(
                            quadbench::run_cell(*est, fam, tol, bench_realizations, bench_seed));
                        requested += bench_realizations;
                        errors += cells.back().eval_errors;
                    }
                }
            }
            const std::string text = bench_format == "markdown" ? quadbench::emit_markdown(cells)
                                                                : quadbench::emit_csv(cells);
            write_output(text, bench_out);
            if (errors > 0) {
                std::cerr << "evaluation errors: " << errors << " of " << requested
                          << " realizations\n";
                if (100 * errors > requested) return kExitEvalErrors;
            }
            return 0;
        }

        if (*experiment) {
            const quadbench::error_estimator& est = quadbench::find_estimator(exp_estimator);
            const quadbench::experiment_summary sum =
                quadbench::run_experiment(quadbench::parse_family(exp_which), est,
                                          exp_realizations, exp_tol, exp_seed);
            std::printf("estimator=%s function=%s realizations=%lld failures=%lld mean_evals=%.1f\n",
                        sum.estimator.c_str(), sum.function_name.c_str(), sum.realizations,
                        sum.failures, sum.mean_evals);
            return 0;
        }

        if (*integrate) {
            const quadbench::error_estimator& est = quadbench::find_estimator(int_estimator);
            const quadbench::family fam = quadbench::parse_family(int_family);
            quadbench::rng_stream rng = quadbench::rng_stream::substream(
                int_seed, static_cast<std::uint64_t>(fam), 0);
            quadbench::test_instance inst = quadbench::make_instance(fam, est.test_degree(), rng);
            for (const auto& [key, value] : parse_params(int_params)) {
                if (key == "alpha") {
                    inst.alpha = value;
                    if (inst.fam == quadbench::family::p_n || inst.fam == quadbench::family::p_n1 ||
                        inst.fam == quadbench::family::p_n2)
                        inst.a = -value;
                } else if (key == "beta") {
                    inst.beta = value;
                    inst.b = value;
                } else if (key == "lambda") {
                    inst.lambda = value;
                } else if (key == "x") {
                    inst.b = value;
                } else if (key == "n" || key == "degree") {
                    inst.degree = static_cast<int>(value);
                } else {
                    throw CLI::ValidationError("--param", "unknown parameter '" + key + "'");
                }
            }
            inst.reference = quadbench::reference_integral(inst);

            quadbench::driver_options opt;
            opt.tol_rel = int_tol;
            opt.reference = inst.reference;
            opt.seed = int_seed;
            const quadbench::integrand f = [&inst](double x) { return inst.eval(x); };
            const quadbench::integration_result res =
                int_driver == "heap"
                    ? quadbench::integrate_heap(est, f, inst.a, inst.b, opt)
                    : quadbench::integrate_recursive(est, f, inst.a, inst.b, opt);
            std::printf("instance: %s\n", inst.serialize().c_str());
            std::printf("value=%.17g reference=%.17g abs_error=%.3e\n", res.value, inst.reference,
                        std::fabs(res.value - inst.reference));
            std::printf("error_bound=%.3e evals=%lld intervals=%d status=%s\n", res.error_bound,
                        res.evals, res.intervals, quadbench::to_string(res.status));
            return res.status == quadbench::integration_status::evaluation_error ? kExitEvalErrors
                                                                                 : 0;
        }

        if (*rules) {
            const quadbench::quad_rule rule = lookup_rule(rules_name);
            std::string text = "index,node,weight\n";
            char buf[128];
            for (std::size_t i = 0; i < rule.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i, rule.nodes[i],
                              rule.weights[i]);
                text += buf;
            }
            write_output(text, rules_out);
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
