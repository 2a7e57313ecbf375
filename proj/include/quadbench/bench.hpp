#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "quadbench/drivers.hpp"
#include "quadbench/estimators.hpp"
#include "quadbench/testbed.hpp"

namespace quadbench {

enum class outcome_class { correct, false_positive, false_negative, true_negative };

// Classification of one estimator invocation against the tolerance, with the
// estimate and tolerance expressed in the same convention.
inline outcome_class classify(double error_estimate, double actual_error, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("classify: tolerance must be positive");
    const bool est_ok = error_estimate <= tol;
    const bool act_ok = actual_error <= tol;
    if (est_ok && act_ok) return outcome_class::correct;
    if (est_ok) return outcome_class::false_positive;
    if (act_ok) return outcome_class::false_negative;
    return outcome_class::true_negative;
}

struct bench_cell {
    std::string estimator;
    std::string family_name;
    double tol_rel = 0.0;
    long long realizations = 0;  // classified realizations (partition total)
    long long correct = 0;
    long long false_pos = 0;
    long long false_neg = 0;
    long long true_neg = 0;
    long long eval_errors = 0;  // excluded from the four-way partition
    std::uint64_t seed = 0;

    double pct(long long count) const {
        return realizations == 0 ? 0.0 : 100.0 * double(count) / double(realizations);
    }
};

struct experiment_summary {
    std::string estimator;
    std::string function_name;
    long long realizations = 0;
    long long failures = 0;
    double mean_evals = 0.0;
};

namespace detail {

// One estimator application following the single-shot protocol; the refined
// estimator is applied once per half after one bisection and classified on
// the summed result.
inline outcome_class run_single(const error_estimator& est, const test_instance& inst,
                                double tol_rel, rng_stream& rng) {
    const double tol_abs = tol_rel * std::fabs(inst.reference);
    const integrand f = [&inst](double x) { return inst.eval(x); };

    est_context ctx;
    ctx.tol_abs = tol_abs;
    if (est.needs_global_scale()) ctx.global_scale = est.global_scale(f, inst.a, inst.b, rng);

    double integral, estimate;
    if (est.name() == "new-refined") {
        const estimator_outcome parent = est.estimate(f, inst.a, inst.b, ctx);
        const double mid = 0.5 * (inst.a + inst.b);
        est_context left = ctx, right = ctx;
        left.parent = parent.state.get();
        left.left_child = true;
        right.parent = parent.state.get();
        right.left_child = false;
        const estimator_outcome lo = est.estimate(f, inst.a, mid, left);
        const estimator_outcome hi = est.estimate(f, mid, inst.b, right);
        integral = lo.integral + hi.integral;
        estimate = lo.error_estimate + hi.error_estimate;
    } else {
        const estimator_outcome out = est.estimate(f, inst.a, inst.b, ctx);
        integral = out.integral;
        estimate = out.error_estimate;
    }

    const double actual = std::fabs(integral - inst.reference);
    const double tol_for_estimate =
        est.convention() == error_convention::absolute ? tol_abs : tol_rel;
    // The actual error is always judged against the absolute tolerance; for
    // relative-convention estimators this matches comparing the relative
    // actual error against tol_rel.
    const bool est_ok = estimate <= tol_for_estimate;
    const bool act_ok = actual <= tol_abs;
    if (est_ok && act_ok) return outcome_class::correct;
    if (est_ok) return outcome_class::false_positive;
    if (act_ok) return outcome_class::false_negative;
    return outcome_class::true_negative;
}

}  // namespace detail

// Runs one (estimator, family, tolerance) cell.  Parameter draws depend only
// on (seed, family, realization index), so every estimator sees identical
// instances.
inline bench_cell run_cell(const error_estimator& est, family fam, double tol_rel,
                           long long realizations, std::uint64_t seed) {
    bench_cell cell;
    cell.estimator = std::string(est.name());
    cell.family_name = to_string(fam);
    cell.tol_rel = tol_rel;
    cell.seed = seed;
    for (long long i = 0; i < realizations; ++i) {
        rng_stream rng = rng_stream::substream(seed, static_cast<std::uint64_t>(fam),
                                               static_cast<std::uint64_t>(i));
        const test_instance inst = make_instance(fam, est.test_degree(), rng);
        try {
            switch (detail::run_single(est, inst, tol_rel, rng)) {
                case outcome_class::correct: ++cell.correct; break;
                case outcome_class::false_positive: ++cell.false_pos; break;
                case outcome_class::false_negative: ++cell.false_neg; break;
                case outcome_class::true_negative: ++cell.true_neg; break;
            }
            ++cell.realizations;
        } catch (const evaluation_error&) {
            ++cell.eval_errors;
        }
    }
    return cell;
}

// Full adaptive runs on the lyness/waldvogel stress functions.
inline experiment_summary run_experiment(family which, const error_estimator& est,
                                         long long realizations, double tol_rel,
                                         std::uint64_t seed) {
    if (which != family::lyness && which != family::waldvogel)
        throw std::invalid_argument("run_experiment: expected lyness or waldvogel");
    experiment_summary sum;
    sum.estimator = std::string(est.name());
    sum.function_name = to_string(which);
    sum.realizations = realizations;
    double eval_total = 0.0;
    for (long long i = 0; i < realizations; ++i) {
        rng_stream rng = rng_stream::substream(seed, static_cast<std::uint64_t>(which),
                                               static_cast<std::uint64_t>(i));
        const test_instance inst = make_instance(which, est.test_degree(), rng);
        driver_options opt;
        opt.tol_rel = tol_rel;
        opt.reference = inst.reference;
        opt.seed = rng.next_u64();
        const integrand f = [&inst](double x) { return inst.eval(x); };
        const integration_result res = integrate_recursive(est, f, inst.a, inst.b, opt);
        eval_total += double(res.evals);
        const double tol_abs = tol_rel * std::fabs(inst.reference);
        if (res.status != integration_status::converged ||
            std::fabs(res.value - inst.reference) > tol_abs)
            ++sum.failures;
    }
    sum.mean_evals = realizations > 0 ? eval_total / double(realizations) : 0.0;
    return sum;
}

// --- report emission -------------------------------------------------------

namespace detail {

inline std::string format_tol(double tol) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0e", tol);
    return buf;
}

inline std::string format_pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace detail

inline std::string emit_csv(const std::vector<bench_cell>& cells) {
    std::string out = "estimator,family,tol,correct,fp,fn,tn,realizations,seed\n";
    char buf[256];
    for (const bench_cell& c : cells) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%s,%lld,%lld,%lld,%lld,%lld,%llu\n",
                      c.estimator.c_str(), c.family_name.c_str(),
                      detail::format_tol(c.tol_rel).c_str(), c.correct, c.false_pos, c.false_neg,
                      c.true_neg, c.realizations, static_cast<unsigned long long>(c.seed));
        out += buf;
    }
    return out;
}

// One table per estimator: rows are families, columns tolerances, each cell
// rendered "correct (fp/fn)" in percent.
inline std::string emit_markdown(const std::vector<bench_cell>& cells) {
    std::vector<std::string> estimators;
    std::vector<std::string> families;
    std::vector<double> tols;
    for (const bench_cell& c : cells) {
        if (std::find(estimators.begin(), estimators.end(), c.estimator) == estimators.end())
            estimators.push_back(c.estimator);
        if (std::find(families.begin(), families.end(), c.family_name) == families.end())
            families.push_back(c.family_name);
        if (std::find(tols.begin(), tols.end(), c.tol_rel) == tols.end()) tols.push_back(c.tol_rel);
    }
    std::sort(tols.begin(), tols.end(), std::greater<>());

    std::string out;
    for (const std::string& est : estimators) {
        out += "## " + est + "\n\n";
        out += "| Function |";
        for (double t : tols) out += " tol=" + detail::format_tol(t) + " |";
        out += "\n|---|";
        for (std::size_t i = 0; i < tols.size(); ++i) out += "---|";
        out += "\n";
        for (const std::string& fam : families) {
            bool any = false;
            std::string row = "| " + fam + " |";
            for (double t : tols) {
                const auto it = std::find_if(cells.begin(), cells.end(), [&](const bench_cell& c) {
                    return c.estimator == est && c.family_name == fam && c.tol_rel == t;
                });
                if (it == cells.end()) {
                    row += " - |";
                } else {
                    any = true;
                    row += " " + detail::format_pct(it->pct(it->correct)) + " (" +
                           detail::format_pct(it->pct(it->false_pos)) + "/" +
                           detail::format_pct(it->pct(it->false_neg)) + ") |";
                }
            }
            if (any) out += row + "\n";
        }
        out += "\n";
    }
    return out;
}

}  // namespace quadbench
