"""Polynomial root-finding through companion/comrade factor forms.

A monic polynomial, in the monomial basis or in a monic orthogonal basis
with three-term recurrence

    r_0 = 1,  r_1 = x - alpha_0,
    r_{k+1} = (x - alpha_k) r_k - beta_k r_{k-1},     beta_k > 0,

is mapped to the LU factors of its (shifted) companion or comrade matrix.
The factor entries are ratios of Horner (monomial case) or Clenshaw
(orthogonal case) partial values.  Roots then come out of the differential
qd deflation driver.  An optional balancing pass rescales the matrix by
powers of two first; on that path the initial factorization is computed by
the structured elimination sweep instead of the Horner ratios, which keeps
huge coefficient ranges from overflowing the ratios.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .eigensolver import RootReport, SolveConfig, solve
from .errors import HornerZero
from .factorization import hessenberg_factors, qs_lu
from .generators import (
    DiagonalScaling,
    HessLUFactors,
    QsGenerators,
    apply_scaling,
    assemble_dense,
    assemble_hess_dense,
)

__all__ = [
    "Polynomial",
    "HornerTrace",
    "horner_trace",
    "clenshaw_trace",
    "evaluate",
    "companion_lu",
    "comrade_lu",
    "companion_generators",
    "comrade_generators",
    "balance_vector",
    "roots",
    "monomial_to_orthogonal",
    "pair_relative_error",
]

logger = logging.getLogger("qsroots.polyroots")


@dataclass(frozen=True)
class Polynomial:
    """A monic polynomial of degree n.

    ``coeffs`` holds m_0..m_{n-1} (the leading coefficient of x^n, or of
    r_n in the orthogonal case, is 1 and implicit).  ``alpha``/``beta`` are
    the recurrence constants of a monic orthogonal basis: alpha has length
    n (alpha_0..alpha_{n-1}) and beta length n-1 (beta_1..beta_{n-1}, all
    positive).  Leave both None for the monomial basis.
    """

    coeffs: tuple[float, ...]
    alpha: tuple[float, ...] | None = None
    beta: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if self.degree < 1:
            raise ValueError("degree must be at least 1")
        if (self.alpha is None) != (self.beta is None):
            raise ValueError("orthogonal basis needs both alpha and beta")
        if self.alpha is not None:
            alpha = tuple(float(x) for x in self.alpha)
            beta = tuple(float(x) for x in self.beta)
            object.__setattr__(self, "alpha", alpha)
            object.__setattr__(self, "beta", beta)
            if len(alpha) != self.degree or len(beta) != self.degree - 1:
                raise ValueError(
                    f"recurrence lengths must be ({self.degree}, {self.degree - 1}),"
                    f" got ({len(alpha)}, {len(beta)})"
                )
            if not all(np.isfinite(alpha)):
                raise ValueError("alpha must be finite")
            if not all(b > 0 and np.isfinite(b) for b in beta):
                raise ValueError("beta must be finite and positive")

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def is_monomial(self) -> bool:
        return self.alpha is None

    @property
    def basis(self) -> str:
        return "monomial" if self.is_monomial else "orthogonal"


@dataclass(frozen=True)
class HornerTrace:
    """Partial evaluation values H_0..H_n at a shift; H_0 = 1, H_n = P(sigma)."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    @property
    def p_sigma(self) -> float:
        return float(self.values[-1])


def horner_trace(p: Polynomial, sigma: float) -> HornerTrace:
    """All partial values of the Horner rule at sigma (monomial basis)."""
    if not p.is_monomial:
        raise ValueError("horner_trace expects a monomial-basis polynomial")
    n = p.degree
    c = p.coeffs
    H = np.empty(n + 1)
    H[0] = 1.0
    for k in range(1, n + 1):
        H[k] = sigma * H[k - 1] + c[n - k]
    return HornerTrace(H)


def clenshaw_trace(p: Polynomial, sigma: float) -> HornerTrace:
    """Generalized Horner values from the Clenshaw-style recurrence.

    H_0 = 1, H_1 = sigma - alpha_{n-1} + m_{n-1}, and
    H_k = (sigma - alpha_{n-k}) H_{k-1} - beta_{n-k+1} H_{k-2} + m_{n-k};
    H_n equals the polynomial value at sigma.
    """
    if p.is_monomial:
        raise ValueError("clenshaw_trace expects an orthogonal-basis polynomial")
    n = p.degree
    c = p.coeffs
    alpha = p.alpha
    beta = p.beta
    H = np.empty(n + 1)
    H[0] = 1.0
    H[1] = sigma - alpha[n - 1] + c[n - 1]
    for k in range(2, n + 1):
        H[k] = (sigma - alpha[n - k]) * H[k - 1] - beta[n - k] * H[k - 2] + c[n - k]
    return HornerTrace(H)


def evaluate(p: Polynomial, x: float) -> float:
    """P(x) through the basis-appropriate recurrence."""
    trace = horner_trace(p, x) if p.is_monomial else clenshaw_trace(p, x)
    return trace.p_sigma


def _check_horner(H: np.ndarray, n: int, sigma: float) -> None:
    # Only H_1..H_{n-1} appear in denominators; a vanishing H_n just means a
    # singular (but still factorable) trailing pivot.
    for k in range(1, n):
        if H[k] == 0.0 or not np.isfinite(H[k]):
            raise HornerZero(k, sigma)


def companion_lu(p: Polynomial, sigma: float) -> HessLUFactors:
    """LU factors of the shifted companion matrix, from Horner value ratios.

    s_k = -H_{k-1}/H_k, d_k = -H_k/H_{k-1}, g_k = -1/H_{k-1}, b_k = 1 and
    h_k = m_{n-k}.  Exists whenever no H_k(sigma) vanishes for k < n.
    """
    if not p.is_monomial:
        raise ValueError("companion form expects a monomial-basis polynomial")
    n = p.degree
    c = p.coeffs
    H = horner_trace(p, sigma).values
    _check_horner(H, n, sigma)
    return HessLUFactors(
        s=np.array([-H[k - 1] / H[k] for k in range(1, n)]),
        d=np.array([-H[k] / H[k - 1] for k in range(1, n + 1)]),
        g=tuple(np.array([[-1.0 / H[k - 1]]]) for k in range(1, n)),
        b=tuple(np.ones((1, 1)) for _ in range(2, n)),
        h=tuple(np.array([[c[n - k]]]) for k in range(2, n + 1)),
    )


def comrade_lu(p: Polynomial, sigma: float) -> HessLUFactors:
    """LU factors of the shifted comrade matrix, from Clenshaw value ratios.

    Same s and d ratios as the companion form; the upper family is of width
    two, g_k = [1, -1/H_{k-1}], b_k = [[0,0],[0,1]],
    h_k = [beta_{n-k+1}, m_{n-k}]^T, which keeps the upper triangle a
    bidiagonal-plus-rank-one structure.
    """
    if p.is_monomial:
        raise ValueError("comrade form expects an orthogonal-basis polynomial")
    n = p.degree
    c = p.coeffs
    beta = p.beta
    H = clenshaw_trace(p, sigma).values
    _check_horner(H, n, sigma)
    return HessLUFactors(
        s=np.array([-H[k - 1] / H[k] for k in range(1, n)]),
        d=np.array([-H[k] / H[k - 1] for k in range(1, n + 1)]),
        g=tuple(np.array([[1.0, -1.0 / H[k - 1]]]) for k in range(1, n)),
        b=tuple(np.array([[0.0, 0.0], [0.0, 1.0]]) for _ in range(2, n)),
        h=tuple(np.array([[beta[n - k]], [c[n - k]]]) for k in range(2, n + 1)),
    )


def companion_generators(p: Polynomial) -> QsGenerators:
    """Quasiseparable generators of the (unshifted) companion matrix itself."""
    if not p.is_monomial:
        raise ValueError("companion form expects a monomial-basis polynomial")
    n = p.degree
    c = p.coeffs
    d = [np.zeros((1, 1)) for _ in range(n)]
    d[0][0, 0] = -c[n - 1]
    return QsGenerators.from_blocks(
        d=d,
        q=[np.ones((1, 1)) for _ in range(n - 1)],
        a=[np.zeros((1, 1)) for _ in range(max(n - 2, 0))],
        p=[np.ones((1, 1)) for _ in range(n - 1)],
        g=[np.array([[1.0 if k == 0 else 0.0]]) for k in range(n - 1)],
        b=[np.ones((1, 1)) for _ in range(max(n - 2, 0))],
        h=[np.array([[-c[n - j]]]) for j in range(2, n + 1)],
    )


def comrade_generators(p: Polynomial) -> QsGenerators:
    """Quasiseparable generators of the (unshifted) comrade matrix itself."""
    if p.is_monomial:
        raise ValueError("comrade form expects an orthogonal-basis polynomial")
    n = p.degree
    c = p.coeffs
    alpha = p.alpha
    beta = p.beta
    d = [np.array([[alpha[n - k]]]) for k in range(1, n + 1)]
    d[0][0, 0] = alpha[n - 1] - c[n - 1]
    # The second slot of g/h carries the dense first row, reachable only
    # from g_1; the first slot carries the local superdiagonal coupling.
    g = [np.array([[1.0, 1.0 if k == 1 else 0.0]]) for k in range(1, n)]
    h = [np.array([[beta[n - j]], [-c[n - j]]]) for j in range(2, n + 1)]
    return QsGenerators.from_blocks(
        d=d,
        q=[np.ones((1, 1)) for _ in range(n - 1)],
        a=[np.zeros((1, 1)) for _ in range(max(n - 2, 0))],
        p=[np.ones((1, 1)) for _ in range(n - 1)],
        g=g,
        b=[np.array([[0.0, 0.0], [0.0, 1.0]]) for _ in range(max(n - 2, 0))],
        h=h,
    )


def balance_vector(x) -> DiagonalScaling:
    """Powers-of-two scaling that evens out row and column 1-norms.

    Accepts either a generator set or Hessenberg LU factors (balancing then
    targets the product L U).  Classic sweep: for each index, the scale is
    doubled or halved until the off-diagonal row and column norms agree
    within a factor of two, and a change is kept only when it shrinks their
    sum noticeably.  Powers of two keep the similarity exact in floating
    point.
    """
    if isinstance(x, HessLUFactors):
        L, U = assemble_hess_dense(x)
        A = L @ U
    elif isinstance(x, QsGenerators):
        if any(s != 1 for s in x.block_sizes.sizes):
            raise ValueError("balancing is defined for scalar blocks only")
        A = assemble_dense(x)
    else:
        A = np.array(x, dtype=float)
    n = A.shape[0]
    B = A.copy()
    delta = np.ones(n)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            c = float(np.abs(B[:, i]).sum() - abs(B[i, i]))
            r = float(np.abs(B[i, :]).sum() - abs(B[i, i]))
            if c == 0.0 or r == 0.0:
                continue
            f = 1.0
            total = c + r
            while c / f >= 2.0 * (r * f):
                f *= 2.0
            while r * f >= 2.0 * (c / f):
                f /= 2.0
            if f != 1.0 and (c / f + r * f) < 0.95 * total:
                delta[i] *= f
                B[i, :] *= f
                B[:, i] /= f
                changed = True
    return DiagonalScaling(delta)


def roots(p: Polynomial, cfg: SolveConfig | None = None) -> RootReport:
    """All roots of a monic polynomial with real simple roots.

    Unbalanced pipeline: zero-shift companion/comrade factors from the
    Horner/Clenshaw ratios, then the qd deflation driver.  Balanced
    pipeline: scale the matrix itself by powers of two, factor it with the
    structured elimination sweep, then run the same driver.
    """
    cfg = cfg or SolveConfig()
    if cfg.balance:
        gens = companion_generators(p) if p.is_monomial else comrade_generators(p)
        delta = balance_vector(gens)
        scaled = apply_scaling(gens, delta)
        factors = hessenberg_factors(qs_lu(scaled))
        logger.info(
            "balanced degree-%d %s problem, scale range 2^%d..2^%d",
            p.degree, p.basis,
            int(np.log2(delta.delta.min())), int(np.log2(delta.delta.max())),
        )
    else:
        factors = companion_lu(p, 0.0) if p.is_monomial else comrade_lu(p, 0.0)
    return solve(factors, cfg)


def _basis_columns(alpha, beta, n: int) -> np.ndarray:
    """Monomial coefficients (ascending, by column) of r_0..r_n."""
    R = np.zeros((n + 1, n + 1))
    R[0, 0] = 1.0
    if n >= 1:
        R[0, 1] = -alpha[0]
        R[1, 1] = 1.0
    for k in range(2, n + 1):
        R[1:, k] = R[:-1, k - 1]
        R[:, k] -= alpha[k - 1] * R[:, k - 1]
        R[:, k] -= beta[k - 2] * R[:, k - 2]
    return R


def monomial_to_orthogonal(p: Polynomial, alpha, beta) -> Polynomial:
    """Re-expand a monic monomial polynomial in an orthogonal basis.

    Expands each basis polynomial into monomials by the recurrence and
    solves the unit upper triangular change-of-basis system.  The all-zero
    recurrence degenerates to the monomial basis itself, so the
    coefficients come back unchanged.
    """
    if not p.is_monomial:
        raise ValueError("input must be in the monomial basis")
    alpha = tuple(float(x) for x in alpha)
    beta = tuple(float(x) for x in beta)
    n = p.degree
    if len(alpha) != n or len(beta) != n - 1:
        raise ValueError(
            f"recurrence lengths must be ({n}, {n - 1}), got ({len(alpha)}, {len(beta)})"
        )
    if not any(alpha) and not any(beta):
        return Polynomial(p.coeffs)
    R = _basis_columns(alpha, beta, n)
    target = np.array([*p.coeffs, 1.0])
    c = np.linalg.solve(R, target)
    return Polynomial(tuple(c[:n]), alpha=alpha, beta=beta)


def pair_relative_error(exact, computed) -> float:
    """max_i |x_i - xhat_i| / |x_i| after sorting both root sets.

    Roots are paired positionally on the sorted sequences (adequate for the
    real simple roots this solver targets).  A zero exact root falls back to
    absolute error.
    """
    xe = np.sort(np.asarray(exact, dtype=float).reshape(-1))
    xc = np.sort(np.asarray(computed, dtype=float).reshape(-1))
    if xe.shape != xc.shape:
        raise ValueError("root sets must have equal length")
    denom = np.where(xe != 0.0, np.abs(xe), 1.0)
    return float(np.max(np.abs(xe - xc) / denom))
