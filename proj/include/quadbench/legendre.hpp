#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "quadbench/linalg.hpp"
#include "quadbench/quad_rule.hpp"

namespace quadbench {

// Coefficients of a polynomial relative to the orthonormal Legendre basis
// p_k on [-1,1] (p_k = sqrt((2k+1)/2) P_k).  Parseval holds: the L2 norm of
// the represented polynomial equals the Euclidean norm of the coefficients.
struct coeff_vector {
    std::vector<double> coeffs;

    coeff_vector() = default;
    explicit coeff_vector(std::vector<double> c) : coeffs(std::move(c)) {}
    explicit coeff_vector(std::size_t n) : coeffs(n, 0.0) {}

    std::size_t size() const { return coeffs.size(); }
    double& operator[](std::size_t i) { return coeffs[i]; }
    double operator[](std::size_t i) const { return coeffs[i]; }
};

// Value of the orthonormal Legendre polynomial p_k at x.
inline double legendre_eval(int k, double x) {
    if (k < 0) throw std::invalid_argument("legendre_eval: negative degree");
    return std::sqrt((2.0 * k + 1.0) / 2.0) * detail::legendre_p(k, x);
}

// All of p_0(x) .. p_{n-1}(x) in one recurrence sweep.
inline std::vector<double> legendre_eval_all(int n, double x) {
    std::vector<double> out(n);
    double p0 = 1.0, p1 = x;
    for (int k = 0; k < n; ++k) {
        double pk;
        if (k == 0)
            pk = p0;
        else if (k == 1)
            pk = p1;
        else {
            pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        out[k] = std::sqrt((2.0 * k + 1.0) / 2.0) * pk;
    }
    return out;
}

// Evaluates the polynomial represented by c at x.
inline double eval_coeffs(const coeff_vector& c, double x) {
    const std::vector<double> p = legendre_eval_all(static_cast<int>(c.size()), x);
    double acc = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * p[k];
    return acc;
}

// Transform matrices mapping parent coefficients to the coefficients of the
// same polynomial restricted to one half and rescaled to [-1,1]:
// (t_left c) represents x -> g((x-1)/2), (t_right c) represents x -> g((x+1)/2).
struct transform_pair_t {
    detail::matrix t_left;
    detail::matrix t_right;
};

// Vandermonde-like system for interpolation in the orthonormal basis.
struct vandermonde_system {
    std::vector<double> nodes;
    detail::matrix p_matrix;  // (i,j) = p_j(nodes[i])
};

inline vandermonde_system make_vandermonde(const std::vector<double>& nodes) {
    const std::size_t n = nodes.size();
    vandermonde_system sys{nodes, detail::matrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> p = legendre_eval_all(static_cast<int>(n), nodes[i]);
        for (std::size_t j = 0; j < n; ++j) sys.p_matrix(i, j) = p[j];
    }
    return sys;
}

// Interpolation through (nodes, values): solves P c = f with a dense
// partial-pivoting factorization (n <= 32, conditioning is benign for the
// near-Chebyshev node sets used here).
inline coeff_vector solve_coeffs(const std::vector<double>& nodes,
                                 const std::vector<double>& values) {
    const std::size_t n = nodes.size();
    if (n == 0 || n > 32) throw std::invalid_argument("solve_coeffs: need 1 <= n <= 32 nodes");
    if (values.size() != n) throw std::invalid_argument("solve_coeffs: nodes/values mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(values[i])) throw std::invalid_argument("solve_coeffs: non-finite value");
        for (std::size_t j = i + 1; j < n; ++j)
            if (nodes[i] == nodes[j]) throw std::invalid_argument("solve_coeffs: duplicate nodes");
    }
    const vandermonde_system sys = make_vandermonde(nodes);
    return coeff_vector(detail::lu_solve(sys.p_matrix, values));
}

inline double l2_norm(const coeff_vector& c) {
    double acc = 0.0;
    for (double v : c.coeffs) acc += v * v;
    return std::sqrt(acc);
}

namespace detail {

// Gauss rule caches used by the inner-product constructions below.
inline const quad_rule& cached_gauss(int n) {
    static constexpr int kMax = 64;
    static const std::vector<quad_rule> rules = [] {
        std::vector<quad_rule> r;
        r.reserve(kMax);
        for (int i = 1; i <= kMax; ++i) r.push_back(gauss_legendre(i));
        return r;
    }();
    if (n < 1 || n > kMax) throw std::invalid_argument("cached_gauss: size out of range");
    return rules[static_cast<std::size_t>(n - 1)];
}

inline transform_pair_t build_transform_pair(int n) {
    // T_{ij} = integral p_i(x) p_j((x -+ 1)/2) dx, exact for degree i+j <= 2n-2
    // with an (n+1)-point Gauss rule.
    const quad_rule& g = cached_gauss(n + 1);
    transform_pair_t tp{matrix(n, n), matrix(n, n)};
    for (std::size_t q = 0; q < g.size(); ++q) {
        const double x = g.nodes[q], w = g.weights[q];
        const std::vector<double> pi = legendre_eval_all(n, x);
        const std::vector<double> pl = legendre_eval_all(n, 0.5 * (x - 1.0));
        const std::vector<double> pr = legendre_eval_all(n, 0.5 * (x + 1.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                tp.t_left(i, j) += w * pi[i] * pl[j];
                tp.t_right(i, j) += w * pi[i] * pr[j];
            }
    }
    return tp;
}

}  // namespace detail

// Cached per size; the returned reference is immutable and safe to share.
inline const transform_pair_t& transform_pair(int n) {
    static constexpr int kMax = 32;
    static const std::vector<transform_pair_t> cache = [] {
        std::vector<transform_pair_t> c;
        c.reserve(kMax);
        for (int i = 1; i <= kMax; ++i) c.push_back(detail::build_transform_pair(i));
        return c;
    }();
    if (n < 1 || n > kMax) throw std::invalid_argument("transform_pair: size out of range");
    return cache[static_cast<std::size_t>(n - 1)];
}

// Legendre coefficients (length n+1) of the monic Newton polynomial
// pi(x) = prod_i (x - nodes[i]), computed by exact-degree projection.
inline coeff_vector newton_coeffs(const std::vector<double>& nodes) {
    const int n = static_cast<int>(nodes.size());
    const quad_rule& g = detail::cached_gauss(n + 2);  // degree 2n+3 >= 2n
    coeff_vector b(static_cast<std::size_t>(n) + 1);
    for (std::size_t q = 0; q < g.size(); ++q) {
        const double x = g.nodes[q];
        double pi = 1.0;
        for (double xi : nodes) pi *= x - xi;
        const std::vector<double> p = legendre_eval_all(n + 1, x);
        for (int k = 0; k <= n; ++k) b[k] += g.weights[q] * p[k] * pi;
    }
    return b;
}

namespace detail {

// Integral of p_0 over [-1,1]; computed rather than hard-coded so the basis
// normalization has a single source of truth.
inline double omega0() {
    static const double value = [] {
        const quad_rule& g = cached_gauss(2);
        double acc = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            acc += g.weights[i] * legendre_eval(0, g.nodes[i]);
        return acc;
    }();
    return value;
}

}  // namespace detail

// Integral over [a,b] of the polynomial represented by c: only p_0 has a
// nonzero integral, so this is (b-a)/2 * omega_0 * c_0.
inline double integral_from_coeffs(const coeff_vector& c, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("integral_from_coeffs: requires a < b");
    if (c.size() == 0) return 0.0;
    return 0.5 * (b - a) * detail::omega0() * c[0];
}

}  // namespace quadbench
