"""Benchmark polynomial families, generated from their exact roots."""

from __future__ import annotations

import numpy as np

from .polyroots import Polynomial

__all__ = [
    "monic_from_roots",
    "orthogonal_from_roots",
    "chebyshev2_scaled_basis",
    "wilkinson_first",
    "wilkinson_first_reversed",
    "wilkinson_second",
    "random_loguniform",
    "wilkinson_first_chebyshev",
    "SUITES",
]


def monic_from_roots(rts) -> Polynomial:
    """Expand prod (x - r_i) by elementary convolution in double precision."""
    c = np.array([1.0])
    for r in np.asarray(rts, dtype=float).reshape(-1):
        c = np.convolve(c, [1.0, -r])
    # c is highest-degree-first including the leading 1.
    return Polynomial(tuple(c[1:][::-1]))


def orthogonal_from_roots(rts, alpha, beta) -> Polynomial:
    """Expand prod (x - r_i) directly in an orthogonal basis.

    Multiplying an expansion by (x - r) uses the recurrence
    x r_k = r_{k+1} + alpha_k r_k + beta_k r_{k-1}, so the coefficients never
    pass through the monomial representation whose ill-conditioning would
    otherwise dominate the root accuracy of hard test polynomials.
    """
    rts = np.asarray(rts, dtype=float).reshape(-1)
    n = rts.size
    alpha = tuple(float(x) for x in alpha)
    beta = tuple(float(x) for x in beta)
    c = np.zeros(n + 1)
    c[0] = 1.0
    deg = 0
    for r in rts:
        new = np.zeros(n + 1)
        for k in range(deg + 1):
            ck = c[k]
            if ck == 0.0:
                continue
            new[k + 1] += ck
            new[k] += (alpha[k] - r) * ck
            if k >= 1:
                new[k - 1] += beta[k - 1] * ck
        c = new
        deg += 1
    return Polynomial(tuple(c[:n]), alpha=alpha, beta=beta)


def chebyshev2_scaled_basis(a: float, b: float, degree: int):
    """Monic second-kind Chebyshev recurrence constants on [a, b].

    The affine map to [-1, 1] gives constant alpha_k = (a+b)/2 and constant
    beta_k = ((b-a)/4)^2.
    """
    alpha = ((a + b) / 2.0,) * degree
    beta = (((b - a) / 4.0) ** 2,) * (degree - 1)
    return alpha, beta


def wilkinson_first(n: int, rng=None):
    roots = np.arange(1.0, n + 1.0)
    return monic_from_roots(roots), roots


def wilkinson_first_reversed(n: int, rng=None):
    roots = 1.0 / np.arange(1.0, n + 1.0)
    return monic_from_roots(roots), roots


def wilkinson_second(n: int, rng=None):
    roots = 0.6 ** np.arange(1.0, n + 1.0)
    return monic_from_roots(roots), roots


def random_loguniform(n: int, rng):
    """Roots X * 10^(5Y) with X, Y independent uniform on [-1, 1]."""
    x = rng.uniform(-1.0, 1.0, n)
    y = rng.uniform(-1.0, 1.0, n)
    roots = x * 10.0 ** (5.0 * y)
    return monic_from_roots(roots), roots


def wilkinson_first_chebyshev(n: int, rng=None):
    """Roots 1..n, expanded in second-kind Chebyshev scaled to [0, n+1]."""
    roots = np.arange(1.0, n + 1.0)
    alpha, beta = chebyshev2_scaled_basis(roots.min() - 1.0, roots.max() + 1.0, n)
    return orthogonal_from_roots(roots, alpha, beta), roots


SUITES = {
    "wilkinson1": wilkinson_first,
    "wilkinson1_reversed": wilkinson_first_reversed,
    "wilkinson2": wilkinson_second,
    "random_loguniform": random_loguniform,
    "wilkinson1_chebyshev": wilkinson_first_chebyshev,
}
