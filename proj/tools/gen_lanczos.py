#!/usr/bin/env python3
"""Print the Lanczos gamma coefficients used by src/specfun.cpp.

Godfrey's construction: the coefficients of the partial-fraction form
    Gamma(z+1) = sqrt(2 pi) (z + g + 1/2)^(z + 1/2) e^{-(z + g + 1/2)}
                 * (c_0 + sum_{k=1}^{n-1} c_k / (z + k))
are c = D B C F, evaluated here in high precision with mpmath.
"""
import argparse

import mpmath as mp


def lanczos_coefficients(g, n):
    # B: rows of binomial coefficients with alternating signs.
    B = mp.zeros(n, n)
    for j in range(n):
        B[0, j] = 1
    for i in range(1, n):
        for j in range(i, n):
            B[i, j] = (-1) ** (j - i) * mp.binomial(i + j - 1, j - i)
    # C: coefficients of the Chebyshev polynomials T_{2i}.
    C = mp.zeros(n, n)
    C[0, 0] = mp.mpf(1) / 2
    for i in range(1, n):
        for j in range(i + 1):
            C[i, j] = (-1) ** (i - j) * sum(
                mp.binomial(2 * i, 2 * k) * mp.binomial(k, k + j - i) for k in range(i - j, i + 1)
            )
    # D: diagonal scaling.
    D = mp.zeros(n, n)
    D[0, 0] = 1
    D[1, 1] = -1
    for i in range(2, n):
        D[i, i] = D[i - 1, i - 1] * 2 * (2 * i - 1) / (i - 1)
    # F: samples of the scaled integrand.
    F = mp.zeros(n, 1)
    for a in range(n):
        F[a] = (
            mp.fac2(2 * a - 1)
            * mp.e ** (a + g + mp.mpf(1) / 2)
            / (2 ** a * (a + g + mp.mpf(1) / 2) ** (a + mp.mpf(1) / 2))
            * mp.sqrt(2)
            / mp.sqrt(mp.pi)
        )
    return D * B * C * F


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--g", type=float, default=7.0)
    parser.add_argument("--n", type=int, default=9)
    parser.add_argument("--dps", type=int, default=60)
    args = parser.parse_args()
    mp.mp.dps = args.dps
    coeffs = lanczos_coefficients(mp.mpf(args.g), args.n)
    for k in range(args.n):
        print(mp.nstr(coeffs[k], 17, min_fixed=-4, max_fixed=5))


if __name__ == "__main__":
    main()
