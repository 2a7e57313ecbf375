#!/usr/bin/env python3
"""Generate include/quadbench/gauss_constants.hpp.

Computes the 10-point Gauss-Legendre rule and its 21-point Kronrod
extension at 50-digit precision and emits them as C++ double literals
(30 significant digits).  The Kronrod nodes are the roots of the
Stieltjes polynomial E_11, obtained from its exact rational expansion
in classical Legendre polynomials; the weights follow from solving the
(well conditioned) Legendre-basis moment system at the combined nodes.

Run from the repository root:

    python3 scripts/gen_gauss_constants.py > include/quadbench/gauss_constants.hpp
"""

from fractions import Fraction

import mpmath as mp

mp.mp.dps = 50

N = 10  # Gauss points; Kronrod extension has 2N+1 = 21


def legendre_poly_coeffs(n):
    """Monomial coefficients (exact rationals) of classical P_n, ascending."""
    p0 = [Fraction(1)]
    if n == 0:
        return p0
    p1 = [Fraction(0), Fraction(1)]
    if n == 1:
        return p1
    for k in range(2, n + 1):
        # k P_k = (2k-1) x P_{k-1} - (k-1) P_{k-2}
        xp = [Fraction(0)] + p1
        pk = [Fraction(0)] * (k + 1)
        for i, c in enumerate(xp):
            pk[i] += Fraction(2 * k - 1, k) * c
        for i, c in enumerate(p0):
            pk[i] -= Fraction(k - 1, k) * c
        p0, p1 = p1, pk
    return p1


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def poly_integral(p):
    """Exact integral over [-1,1]."""
    total = Fraction(0)
    for j, c in enumerate(p):
        if j % 2 == 0:
            total += 2 * c / (j + 1)
    return total


def stieltjes_coeffs():
    """E_{N+1} = P_{N+1} + sum_k sigma_k P_{N-1-2k}, from the defining
    orthogonality <E_{N+1} P_N x^j> = 0, j = 0..N."""
    pn = legendre_poly_coeffs(N)
    degrees = list(range(N - 1, -1, -2))  # 9, 7, 5, 3, 1 for N = 10
    basis = [legendre_poly_coeffs(d) for d in degrees]
    lead = legendre_poly_coeffs(N + 1)
    # Odd constraints only (parity kills the even ones for even N).
    rows = []
    rhs = []
    for j in range(1, N + 1, 2):
        xj = [Fraction(0)] * j + [Fraction(1)]
        row = [poly_integral(poly_mul(poly_mul(b, pn), xj)) for b in basis]
        rows.append(row)
        rhs.append(-poly_integral(poly_mul(poly_mul(lead, pn), xj)))
    # Exact Gaussian elimination over the rationals.
    m = len(rows)
    aug = [rows[i] + [rhs[i]] for i in range(m)]
    for col in range(m):
        piv = next(r for r in range(col, m) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(m):
            if r != col and aug[r][col] != 0:
                f = aug[r][col] / aug[col][col]
                aug[r] = [aug[r][c] - f * aug[col][c] for c in range(m + 1)]
    sigma = [aug[i][m] / aug[i][i] for i in range(m)]
    poly = list(lead)
    for s, b in zip(sigma, basis):
        for i, c in enumerate(b):
            poly[i] += s * c
    return poly


def poly_roots(coeffs):
    cs = [mp.mpf(c.numerator) / mp.mpf(c.denominator) for c in coeffs]
    roots = mp.polyroots(list(reversed(cs)), maxsteps=200, extraprec=200)
    return sorted(mp.mpf(r.real) for r in roots)


def legval(n, x):
    p0, p1 = mp.mpf(1), x
    if n == 0:
        return p0
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    return p1


def gauss_rule(n):
    coeffs = legendre_poly_coeffs(n)
    nodes = poly_roots(coeffs)
    weights = []
    for x in nodes:
        dp = n * (x * legval(n, x) - legval(n - 1, x)) / (x * x - 1)
        weights.append(2 / ((1 - x * x) * dp * dp))
    return nodes, weights


def interpolatory_weights(nodes):
    """Weights from exactness on P_0..P_{m-1} (Legendre-basis Vandermonde)."""
    m = len(nodes)
    a = mp.matrix(m, m)
    b = mp.matrix(m, 1)
    for k in range(m):
        for i, x in enumerate(nodes):
            a[k, i] = legval(k, x)
        b[k] = 2 if k == 0 else 0
    return list(mp.lu_solve(a, b))


def check_degree(nodes, weights, degree):
    for j in range(0, degree + 1):
        exact = mp.mpf(2) / (j + 1) if j % 2 == 0 else mp.mpf(0)
        got = mp.fsum(w * x**j for x, w in zip(nodes, weights))
        assert abs(got - exact) < mp.mpf(10) ** (-38), (j, got, exact)
    j = degree + 1 if (degree + 1) % 2 == 0 else degree + 2
    got = mp.fsum(w * x**j for x, w in zip(nodes, weights))
    assert abs(got - mp.mpf(2) / (j + 1)) > mp.mpf(10) ** (-12), "degree too high"


def fmt(x):
    return mp.nstr(x, 30, strip_zeros=False)


def main():
    g_nodes, g_weights = gauss_rule(N)
    check_degree(g_nodes, g_weights, 2 * N - 1)

    e_nodes = poly_roots(stieltjes_coeffs())
    k_nodes = sorted(g_nodes + e_nodes)
    k_weights = interpolatory_weights(k_nodes)
    check_degree(k_nodes, k_weights, 3 * N + 1)

    print("#pragma once")
    print()
    print("// Embedded Gauss-Legendre and Gauss-Kronrod constants on [-1,1],")
    print("// 30 significant digits.  Generated by scripts/gen_gauss_constants.py;")
    print("// the exactness tests in tests/test_quadrules.cpp gate their validity.")
    print()
    print("namespace quadbench::detail {")
    print()
    print(f"inline constexpr int kGauss10Size = {N};")
    print(f"inline constexpr double kGauss10Nodes[{N}] = {{")
    for x in g_nodes:
        print(f"    {fmt(x)},")
    print("};")
    print(f"inline constexpr double kGauss10Weights[{N}] = {{")
    for w in g_weights:
        print(f"    {fmt(w)},")
    print("};")
    print()
    print(f"inline constexpr int kKronrod21Size = {2 * N + 1};")
    print(f"inline constexpr double kKronrod21Nodes[{2 * N + 1}] = {{")
    for x in k_nodes:
        print(f"    {fmt(x)},")
    print("};")
    print(f"inline constexpr double kKronrod21Weights[{2 * N + 1}] = {{")
    for w in k_weights:
        print(f"    {fmt(w)},")
    print("};")
    print()
    print("}  // namespace quadbench::detail")


if __name__ == "__main__":
    main()
