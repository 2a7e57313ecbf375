#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <queue>
#include <vector>

#include "quadbench/estimators.hpp"
#include "quadbench/rng.hpp"

namespace quadbench {

enum class integration_status { converged, depth_limit, eval_budget, evaluation_error };

inline const char* to_string(integration_status s) {
    switch (s) {
        case integration_status::converged: return "converged";
        case integration_status::depth_limit: return "depth-limit";
        case integration_status::eval_budget: return "eval-budget";
        default: return "evaluation-error";
    }
}

struct integration_result {
    double value = 0.0;
    double error_bound = 0.0;  // sum of accepted local error estimates (absolute)
    long long evals = 0;
    int intervals = 0;  // accepted (leaf) intervals
    integration_status status = integration_status::converged;
};

struct driver_options {
    double tol_rel = 1e-6;
    // When set (benchmark mode), the absolute tolerance is tol_rel * |reference|;
    // otherwise it is tol_rel * |first whole-interval integral estimate|.
    std::optional<double> reference;
    int max_depth = 50;
    long long eval_budget = 1'000'000;
    std::uint64_t seed = 42;
};

// One interval as tracked by the heap driver.
struct interval_record {
    double a = 0.0, b = 0.0;
    double integral = 0.0;
    double error = 0.0;  // absolute-convention local error
    int depth = 0;
    std::shared_ptr<const child_state> state;
    std::uint64_t sequence = 0;  // insertion order, for deterministic ties
};

namespace detail {

// Converts an estimator-native error into an absolute one for the global
// bookkeeping of the drivers.
inline double absolute_error(const error_estimator& est, const estimator_outcome& out,
                             double global_scale) {
    switch (est.convention()) {
        case error_convention::absolute: return out.error_estimate;
        case error_convention::local_relative:
            return out.error_estimate * std::fabs(out.integral);
        default: return out.error_estimate * global_scale;
    }
}

struct counting_integrand {
    const integrand* f;
    long long* count;
    double operator()(double x) const {
        ++*count;
        return (*f)(x);
    }
};

}  // namespace detail

// Recursive bisection (local tolerances, tau' = tau/sqrt(2) per level).
inline integration_result integrate_recursive(const error_estimator& est, const integrand& f,
                                              double a, double b, const driver_options& opt) {
    detail::require_interval(a, b);
    integration_result res;
    long long evals = 0;
    integrand counted = detail::counting_integrand{&f, &evals};
    rng_stream rng(opt.seed);

    double global_scale = 0.0;
    if (est.needs_global_scale()) global_scale = est.global_scale(counted, a, b, rng);

    const bool relative_native = est.convention() != error_convention::absolute;

    // Tolerance in the estimator's own convention: relative estimators compare
    // their native number against the relative tolerance directly; absolute
    // ones get tol_rel * |reference| (benchmark mode) or, lacking a reference,
    // tol_rel * |first whole-interval integral estimate|.
    double top_tol = opt.tol_rel;
    bool tol_ready = true;
    if (!relative_native) {
        if (opt.reference)
            top_tol = opt.tol_rel * std::fabs(*opt.reference);
        else
            tol_ready = false;
    }

    bool depth_hit = false;
    bool budget_hit = false;
    std::function<void(double, double, double, const child_state*, bool, int)> recurse;
    recurse = [&](double lo, double hi, double tol, const child_state* parent, bool left,
                  int depth) {
        est_context ctx;
        ctx.tol_abs = tol_ready ? tol : std::numeric_limits<double>::infinity();
        ctx.global_scale = global_scale;
        ctx.parent = parent;
        ctx.left_child = left;
        const estimator_outcome out = est.estimate(counted, lo, hi, ctx);
        if (!tol_ready) {
            top_tol = opt.tol_rel * std::fabs(out.integral);
            tol = top_tol;
            tol_ready = true;
        }
        bool accept = out.error_estimate < tol;
        if (!accept && (depth >= opt.max_depth || evals >= opt.eval_budget)) {
            accept = true;
            if (depth >= opt.max_depth) depth_hit = true;
            if (evals >= opt.eval_budget) budget_hit = true;
        }
        if (accept) {
            res.value += out.integral;
            res.error_bound += detail::absolute_error(est, out, global_scale);
            res.intervals += 1;
            return;
        }
        const double mid = 0.5 * (lo + hi);
        const double child_tol = tol / std::numbers::sqrt2;
        recurse(lo, mid, child_tol, out.state.get(), true, depth + 1);
        recurse(mid, hi, child_tol, out.state.get(), false, depth + 1);
    };

    try {
        recurse(a, b, top_tol, nullptr, false, 0);
        res.status = budget_hit  ? integration_status::eval_budget
                     : depth_hit ? integration_status::depth_limit
                                 : integration_status::converged;
    } catch (const evaluation_error&) {
        res.status = integration_status::evaluation_error;
    }
    res.evals = evals;
    return res;
}

// Heap scheme: repeatedly split the interval with the largest local error
// until the summed error estimate drops to the global tolerance.
inline integration_result integrate_heap(const error_estimator& est, const integrand& f, double a,
                                         double b, const driver_options& opt) {
    detail::require_interval(a, b);
    integration_result res;
    long long evals = 0;
    integrand counted = detail::counting_integrand{&f, &evals};
    rng_stream rng(opt.seed);

    double global_scale = 0.0;
    if (est.needs_global_scale()) global_scale = est.global_scale(counted, a, b, rng);

    auto cmp = [](const interval_record& x, const interval_record& y) {
        if (x.error != y.error) return x.error < y.error;
        return x.sequence > y.sequence;  // older interval wins ties
    };
    std::priority_queue<interval_record, std::vector<interval_record>, decltype(cmp)> heap(cmp);
    std::uint64_t sequence = 0;
    double total = 0.0, err = 0.0;
    double tol = 0.0;
    bool tol_ready = false;
    if (opt.reference) {
        tol = opt.tol_rel * std::fabs(*opt.reference);
        tol_ready = true;
    }

    auto evaluate = [&](double lo, double hi, const child_state* parent, bool left, int depth) {
        est_context ctx;
        ctx.tol_abs = tol_ready ? tol : std::numeric_limits<double>::infinity();
        ctx.global_scale = global_scale;
        ctx.parent = parent;
        ctx.left_child = left;
        const estimator_outcome out = est.estimate(counted, lo, hi, ctx);
        interval_record rec;
        rec.a = lo;
        rec.b = hi;
        rec.integral = out.integral;
        rec.error = detail::absolute_error(est, out, global_scale);
        rec.depth = depth;
        rec.state = out.state;
        rec.sequence = sequence++;
        return rec;
    };

    try {
        interval_record first = evaluate(a, b, nullptr, false, 0);
        if (!tol_ready) {
            tol = opt.tol_rel * std::fabs(first.integral);
            tol_ready = true;
        }
        total = first.integral;
        err = first.error;
        heap.push(std::move(first));

        while (err > tol) {
            if (heap.empty()) break;
            const interval_record top = heap.top();
            if (top.depth >= opt.max_depth) {
                res.status = integration_status::depth_limit;
                break;
            }
            if (evals >= opt.eval_budget) {
                res.status = integration_status::eval_budget;
                break;
            }
            heap.pop();
            const double mid = 0.5 * (top.a + top.b);
            interval_record left = evaluate(top.a, mid, top.state.get(), true, top.depth + 1);
            interval_record right = evaluate(mid, top.b, top.state.get(), false, top.depth + 1);
            total = total - top.integral + left.integral + right.integral;
            err = err - top.error + left.error + right.error;
            heap.push(std::move(left));
            heap.push(std::move(right));
        }
    } catch (const evaluation_error&) {
        res.status = integration_status::evaluation_error;
    }
    res.value = total;
    res.error_bound = err;
    res.evals = evals;
    res.intervals = static_cast<int>(heap.size());
    return res;
}

}  // namespace quadbench
