#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "quadbench/rng.hpp"

namespace quadbench {

enum class family {
    p_n,        // Chebyshev polynomial of the rule's test degree, shifted by +1
    p_n1,       // one degree above
    p_n2,       // two degrees above
    d0,         // jump discontinuity
    d1,         // kink (discontinuous first derivative)
    d2,         // discontinuous second derivative
    s,          // integrable inverse-square-root singularity
    lyness,     // narrow smooth peak 0.1/(0.01+(x-lambda)^2) on [1,2]
    waldvogel,  // floor(e^t) staircase on [0,x]
};

inline const char* to_string(family f) {
    switch (f) {
        case family::p_n: return "p_n";
        case family::p_n1: return "p_n+1";
        case family::p_n2: return "p_n+2";
        case family::d0: return "d_0";
        case family::d1: return "d_1";
        case family::d2: return "d_2";
        case family::s: return "s";
        case family::lyness: return "lyness";
        default: return "waldvogel";
    }
}

inline family parse_family(std::string_view name) {
    for (family f : {family::p_n, family::p_n1, family::p_n2, family::d0, family::d1, family::d2,
                     family::s, family::lyness, family::waldvogel})
        if (name == to_string(f)) return f;
    if (name == "p_n1" || name == "pn1") return family::p_n1;
    if (name == "p_n2" || name == "pn2") return family::p_n2;
    if (name == "pn") return family::p_n;
    if (name == "d0") return family::d0;
    if (name == "d1") return family::d1;
    if (name == "d2") return family::d2;
    throw std::invalid_argument("unknown family: " + std::string(name));
}

namespace detail {

inline double chebyshev_t(int n, double x) {
    if (n == 0) return 1.0;
    double t0 = 1.0, t1 = x;
    for (int k = 2; k <= n; ++k) {
        const double t = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t;
    }
    return t1;
}

// Antiderivative of T_n (up to a constant).
inline double chebyshev_t_antiderivative(int n, double x) {
    if (n == 0) return x;
    if (n == 1) return 0.5 * x * x;
    return 0.5 * (chebyshev_t(n + 1, x) / (n + 1) - chebyshev_t(n - 1, x) / (n - 1));
}

// Largest integer k >= 1 with log(k) <= t; jumps sit exactly at the double
// values of std::log(k).
inline int staircase_level(double t) {
    int k = static_cast<int>(std::floor(std::exp(t)));
    if (k < 1) k = 1;
    while (std::log(static_cast<double>(k + 1)) <= t) ++k;
    while (k > 1 && std::log(static_cast<double>(k)) > t) --k;
    return k;
}

}  // namespace detail

// A realized test integrand: family, drawn parameters, domain and its
// analytic reference integral.
struct test_instance {
    family fam = family::p_n;
    int degree = 0;      // Chebyshev degree (p families)
    double alpha = 0.0;  // discontinuity / singularity location, or -a for p families
    double beta = 0.0;   // b for p families
    double lambda = 0.0; // peak location (lyness)
    double a = 0.0, b = 0.0;
    double reference = 0.0;

    double eval(double x) const {
        switch (fam) {
            case family::p_n:
            case family::p_n1:
            case family::p_n2: return detail::chebyshev_t(degree, x) + 1.0;
            case family::d0: return x < alpha ? 0.0 : 1.0;
            case family::d1: return std::max(0.0, x - alpha);
            case family::d2: {
                const double m = std::max(0.0, x - alpha);
                return m * m;
            }
            case family::s: {
                double dx = x - alpha;
                if (std::fabs(dx) < 1e-300) {
                    // A node landed on the singularity; nudge it toward the
                    // interval center instead of poisoning the whole rule.
                    const double center = 0.5 * (a + b);
                    dx = (center >= alpha ? 1.0 : -1.0) * 1e-12 * (b - a);
                }
                return 1.0 / std::sqrt(std::fabs(dx));
            }
            case family::lyness: return 0.1 / (0.01 + (x - lambda) * (x - lambda));
            default: return static_cast<double>(detail::staircase_level(x));
        }
    }

    double operator()(double x) const { return eval(x); }

    std::string serialize() const {
        std::ostringstream os;
        os.precision(17);
        os << to_string(fam) << " degree=" << degree << " alpha=" << alpha << " beta=" << beta
           << " lambda=" << lambda << " domain=[" << a << "," << b << "] reference=" << reference;
        return os.str();
    }
};

// Closed-form reference integral for an instance whose parameters are set.
inline double reference_integral(const test_instance& inst) {
    switch (inst.fam) {
        case family::p_n:
        case family::p_n1:
        case family::p_n2:
            return detail::chebyshev_t_antiderivative(inst.degree, inst.b) -
                   detail::chebyshev_t_antiderivative(inst.degree, inst.a) + (inst.b - inst.a);
        case family::d0: return 1.0 - inst.alpha;
        case family::d1: {
            const double w = 1.0 - inst.alpha;
            return 0.5 * w * w;
        }
        case family::d2: {
            const double w = 1.0 - inst.alpha;
            return w * w * w / 3.0;
        }
        case family::s:
            return 2.0 * (std::sqrt(inst.b - inst.alpha) + std::sqrt(inst.alpha - inst.a));
        case family::lyness:
            return std::atan((inst.b - inst.lambda) / 0.1) - std::atan((inst.a - inst.lambda) / 0.1);
        default: {
            // Piecewise-constant closed form over the log breakpoints.
            const double x = inst.b;
            double total = 0.0;
            int k = 1;
            double lo = 0.0;
            while (true) {
                const double next = std::log(static_cast<double>(k + 1));
                if (next >= x) {
                    total += k * (x - lo);
                    break;
                }
                total += k * (next - lo);
                lo = next;
                ++k;
            }
            return total;
        }
    }
}

// Draws one realization of a family.  `test_degree` is the degree n of the
// quadrature rule under test (p families use n, n+1, n+2).
inline test_instance make_instance(family fam, int test_degree, rng_stream& rng) {
    test_instance inst;
    inst.fam = fam;
    switch (fam) {
        case family::p_n:
        case family::p_n1:
        case family::p_n2: {
            inst.degree = test_degree + (fam == family::p_n ? 0 : fam == family::p_n1 ? 1 : 2);
            inst.alpha = rng.uniform_pos();  // in (0,1]
            inst.beta = rng.uniform_pos();
            inst.a = -inst.alpha;
            inst.b = inst.beta;
            break;
        }
        case family::d0:
        case family::d1:
        case family::d2:
            inst.alpha = rng.uniform(-1.0, 1.0);
            inst.a = -1.0;
            inst.b = 1.0;
            break;
        case family::s:
            do {
                inst.alpha = rng.uniform(-1.0, 1.0);
            } while (inst.alpha == -1.0);
            inst.a = -1.0;
            inst.b = 1.0;
            break;
        case family::lyness:
            inst.lambda = rng.uniform(1.0, 2.0);
            inst.a = 1.0;
            inst.b = 2.0;
            break;
        default:
            inst.a = 0.0;
            inst.b = rng.uniform(2.5, 3.5);
            break;
    }
    inst.reference = reference_integral(inst);
    return inst;
}

}  // namespace quadbench
