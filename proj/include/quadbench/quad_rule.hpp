#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quadbench/gauss_constants.hpp"

namespace quadbench {

// Thrown when an integrand produces a non-finite value at a quadrature node.
class evaluation_error : public std::runtime_error {
  public:
    explicit evaluation_error(double x)
        : std::runtime_error("integrand returned a non-finite value"), where_(x) {}
    double where() const { return where_; }

  private:
    double where_ = 0.0;
};

// An interpolatory quadrature rule on the reference interval [-1,1].
// `degree` is the guaranteed degree of exactness; nodes are strictly
// increasing and nodes/weights are exactly mirror-symmetric.
struct quad_rule {
    std::string name;
    std::vector<double> nodes;
    std::vector<double> weights;
    int degree = 0;

    std::size_t size() const { return nodes.size(); }
};

// A basic rule compounded over `multiplicity` equal panels.
struct compound_spec {
    const quad_rule* base = nullptr;
    int multiplicity = 1;

    compound_spec(const quad_rule& rule, int m) : base(&rule), multiplicity(m) {
        if (m < 1) throw std::invalid_argument("compound_spec: multiplicity must be >= 1");
    }
};

struct apply_result {
    double value = 0.0;
    long long evals = 0;
};

namespace detail {

inline void mirror_symmetrize(std::vector<double>& v, bool odd) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        if (odd) {
            const double mag = 0.5 * (std::fabs(v[i]) + std::fabs(v[n - 1 - i]));
            v[i] = (v[i] < 0.0) ? -mag : mag;
            v[n - 1 - i] = -v[i];
        } else {
            const double mean = 0.5 * (v[i] + v[n - 1 - i]);
            v[i] = mean;
            v[n - 1 - i] = mean;
        }
    }
    if (odd && n % 2 == 1) v[n / 2] = 0.0;
}

}  // namespace detail

inline const quad_rule& simpson_rule() {
    static const quad_rule rule{"simpson", {-1.0, 0.0, 1.0}, {1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0}, 3};
    return rule;
}

// Clenshaw-Curtis rule over n_points (closed, Chebyshev extrema abscissae).
// Weights by the classical cosine-sum expression; the recorded degree is the
// guaranteed n_points-1 (odd point counts gain one degree by symmetry).
inline quad_rule clenshaw_curtis(int n_points) {
    if (n_points < 2) throw std::invalid_argument("clenshaw_curtis: need at least 2 points");
    const int segs = n_points - 1;
    quad_rule rule;
    rule.name = "cc" + std::to_string(n_points);
    rule.degree = segs;
    rule.nodes.resize(n_points);
    rule.weights.resize(n_points);
    for (int k = 0; k < n_points; ++k)
        rule.nodes[k] = -std::cos(std::numbers::pi * k / segs);
    for (int k = 0; k < n_points; ++k) {
        const double theta = std::numbers::pi * k / segs;
        double sum = 1.0;  // j = 0 term (halved, times I_0 = 2)
        for (int j = 2; j <= segs; j += 2) {
            double term = 2.0 / (1.0 - double(j) * j) * std::cos(j * theta);
            if (j == segs) term *= 0.5;
            sum += term;
        }
        const double gamma = (k == 0 || k == segs) ? 0.5 : 1.0;
        rule.weights[k] = 2.0 * gamma / segs * sum;
    }
    detail::mirror_symmetrize(rule.nodes, /*odd=*/true);
    detail::mirror_symmetrize(rule.weights, /*odd=*/false);
    return rule;
}

namespace detail {

inline double legendre_p(int n, double x, double* deriv = nullptr) {
    double p0 = 1.0, p1 = x;
    if (n == 0) {
        if (deriv) *deriv = 0.0;
        return p0;
    }
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    if (deriv) *deriv = n * (x * p1 - p0) / (x * x - 1.0);
    return p1;
}

}  // namespace detail

// Gauss-Legendre rule over n_points, nodes found by Newton refinement of the
// Chebyshev-angle initial guesses and weights from the derivative identity.
inline quad_rule gauss_legendre(int n_points) {
    if (n_points < 1) throw std::invalid_argument("gauss_legendre: need at least 1 point");
    quad_rule rule;
    rule.name = "gauss" + std::to_string(n_points);
    rule.degree = 2 * n_points - 1;
    rule.nodes.resize(n_points);
    rule.weights.resize(n_points);
    if (n_points == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
        return rule;
    }
    for (int k = 0; k < n_points; ++k) {
        double x = -std::cos(std::numbers::pi * (k + 0.75) / (n_points + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 64; ++it) {
            const double p = detail::legendre_p(n_points, x, &dp);
            const double dx = p / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double p = detail::legendre_p(n_points, x, &dp);
        (void)p;
        rule.nodes[k] = x;
        rule.weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    detail::mirror_symmetrize(rule.nodes, /*odd=*/true);
    detail::mirror_symmetrize(rule.weights, /*odd=*/false);
    return rule;
}

// The 10-point Gauss rule and its 21-point Kronrod extension, from embedded
// verified constants.  K21 contains all G10 nodes; degrees 19 and 31.
inline std::pair<const quad_rule&, const quad_rule&> gauss_kronrod_21() {
    static const quad_rule g10 = [] {
        quad_rule r;
        r.name = "g10";
        r.degree = 19;
        r.nodes.assign(detail::kGauss10Nodes, detail::kGauss10Nodes + detail::kGauss10Size);
        r.weights.assign(detail::kGauss10Weights, detail::kGauss10Weights + detail::kGauss10Size);
        return r;
    }();
    static const quad_rule k21 = [] {
        quad_rule r;
        r.name = "k21";
        r.degree = 31;
        r.nodes.assign(detail::kKronrod21Nodes, detail::kKronrod21Nodes + detail::kKronrod21Size);
        r.weights.assign(detail::kKronrod21Weights,
                         detail::kKronrod21Weights + detail::kKronrod21Size);
        return r;
    }();
    return {g10, k21};
}

// The 4-point Gauss-Lobatto rule and its 7-point Kronrod extension used by
// adaptlob-style integrators.  Nodes and weights are exact closed forms.
inline std::pair<const quad_rule&, const quad_rule&> lobatto_kronrod_7() {
    static const double inv_sqrt5 = 1.0 / std::sqrt(5.0);
    static const double sqrt23 = std::sqrt(2.0 / 3.0);
    static const quad_rule gl4{"gl4",
                               {-1.0, -inv_sqrt5, inv_sqrt5, 1.0},
                               {1.0 / 6.0, 5.0 / 6.0, 5.0 / 6.0, 1.0 / 6.0},
                               5};
    static const quad_rule k7{
        "k7",
        {-1.0, -sqrt23, -inv_sqrt5, 0.0, inv_sqrt5, sqrt23, 1.0},
        {11.0 / 210.0, 72.0 / 245.0, 125.0 / 294.0, 16.0 / 35.0, 125.0 / 294.0, 72.0 / 245.0,
         11.0 / 210.0},
        9};
    return {gl4, k7};
}

// --- application --------------------------------------------------------

namespace detail {

template <class F>
double call_checked(F&& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) throw evaluation_error(x);
    return y;
}

}  // namespace detail

// Applies `rule` to f over [a,b] via the affine map of the reference nodes.
template <class F>
apply_result apply(const quad_rule& rule, F&& f, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("apply: requires a < b");
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
        acc += rule.weights[i] * detail::call_checked(f, mid + half * rule.nodes[i]);
    return {half * acc, static_cast<long long>(rule.size())};
}

// Compound application over m equal panels.  For closed rules (endpoints
// +-1 present) the shared panel boundaries are evaluated and counted once.
template <class F>
apply_result apply(const compound_spec& spec, F&& f, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("apply: requires a < b");
    const quad_rule& rule = *spec.base;
    const int m = spec.multiplicity;
    const bool closed = rule.size() >= 2 && rule.nodes.front() == -1.0 && rule.nodes.back() == 1.0;
    const double panel = (b - a) / m;

    double total = 0.0;
    long long evals = 0;
    double carry = 0.0;  // value at the shared boundary of the previous panel
    for (int p = 0; p < m; ++p) {
        const double pa = a + p * panel;
        const double pb = (p + 1 == m) ? b : a + (p + 1) * panel;
        const double mid = 0.5 * (pa + pb);
        const double half = 0.5 * (pb - pa);
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            double y;
            if (closed && i == 0 && p > 0) {
                y = carry;
            } else {
                y = detail::call_checked(f, mid + half * rule.nodes[i]);
                ++evals;
            }
            if (closed && i + 1 == rule.size()) carry = y;
            acc += rule.weights[i] * y;
        }
        total += half * acc;
    }
    return {total, evals};
}

}  // namespace quadbench
