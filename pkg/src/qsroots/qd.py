"""Quotient-difference sweeps on factored quasiseparable matrices.

Three sweeps over LU generator data, none of which forms a dense product:

* ``stqd``  -- stationary sweep: refactors L U - sigma I as a new LU pair.
* ``qds``   -- progressive sweep: refactors U L - sigma I (one shifted LR
  step in factored form); works for general block factors.
* ``dqds_step`` -- differential form of the progressive sweep for scalar
  Hessenberg factors (unit lower bidiagonal L), carrying the auxiliary
  quantities t_k whose reciprocals are the diagonal of (U L)^{-1} at zero
  shift.

All sweeps are pure functions: inputs are never aliased or mutated, so a
broken sweep can simply be retried on the same input with another shift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Breakdown
from .factorization import LUGenerators, _pivot_check, _rdiv, make_lu_generators
from .generators import HessLUFactors

__all__ = ["QdAuxState", "stqd", "qds", "dqds_step", "dqds_step_tridiagonal"]

# A pivot d-hat that is this small against the terms that summed into it has
# lost all significant digits to cancellation.
_BREAKDOWN_RTOL = 1e-14
_DEFAULT_FLOOR = 1e-300


@dataclass(frozen=True)
class QdAuxState:
    """Auxiliary data carried out of a differential sweep.

    ``t`` is the running auxiliary sequence (with zero shift, 1/t_k equals
    the k-th diagonal entry of (U L)^{-1}); ``sigma`` is the shift that was
    actually applied, which matters when a driver retries with damping.
    ``f_hat``/``f`` are the coupling products of the stationary/progressive
    sweeps; the differential sweep never materializes them.
    """

    t: np.ndarray
    sigma: float
    f_hat: tuple | None = None
    f: tuple | None = None


def _shifted(dk: np.ndarray, sigma: float) -> np.ndarray:
    return dk - sigma * np.eye(dk.shape[0])


def stqd(lu: LUGenerators, sigma: float) -> LUGenerators:
    """Stationary qd sweep with shift: new factors of L U - sigma I.

    The forward recurrence tracks the difference t-hat between the coupling
    chains of the old and new factors (starting from a zero matrix); a, p,
    b, h pass through unchanged.  Raises SingularPivot(k) where the shifted
    matrix stops being strongly regular.
    """
    sizes = lu.block_sizes
    n = sizes.n
    d = [None, *lu.d]
    q = [None, *lu.q]
    a = [None, None, *lu.a]
    p = [None, None, *lu.p]
    g = [None, *lu.g]
    b = [None, None, *lu.b]
    h = [None, None, *lu.h]

    dh = [None] * (n + 1)
    dh[1] = _shifted(d[1], sigma)
    if n == 1:
        return make_lu_generators(sizes, (), (), (), dh[1:], (), (), ())
    _pivot_check(dh[1], 1)

    qh = [None] * n
    gh = [None] * n
    qh[1] = _rdiv(q[1] @ d[1], dh[1])
    gh[1] = g[1]
    th_prev = np.zeros((q[1].shape[0], g[1].shape[1]))
    for k in range(2, n):
        th = q[k - 1] @ g[k - 1] - qh[k - 1] @ gh[k - 1]
        if k - 1 >= 2:
            th = th + a[k - 1] @ th_prev @ b[k - 1]
        dh[k] = p[k] @ th @ h[k] + _shifted(d[k], sigma)
        _pivot_check(dh[k], k)
        qh[k] = _rdiv(a[k] @ th @ h[k] + q[k] @ d[k], dh[k])
        gh[k] = p[k] @ th @ b[k] + g[k]
        th_prev = th
    th = q[n - 1] @ g[n - 1] - qh[n - 1] @ gh[n - 1]
    if n - 1 >= 2:
        th = th + a[n - 1] @ th_prev @ b[n - 1]
    dh[n] = p[n] @ th @ h[n] + _shifted(d[n], sigma)

    return make_lu_generators(sizes, qh[1:], lu.a, lu.p, dh[1:], gh[1:], lu.b, lu.h)


def qds(lu: LUGenerators, sigma: float) -> LUGenerators:
    """Progressive qd sweep with shift: new factors of U L - sigma I.

    Two passes.  The backward pass accumulates the couplings f_k of the
    reversed product and rewrites p and h into the product's own lower/upper
    families (in particular the last one becomes d_n p_n).  The forward pass
    is then a plain generator elimination of that product, producing the new
    q, d, g.  a and b pass through unchanged, which is what preserves the
    off-diagonal ranks from one LR step to the next.
    """
    sizes = lu.block_sizes
    n = sizes.n
    d = [None, *lu.d]
    q = [None, *lu.q]
    a = [None, None, *lu.a]
    p = [None, None, *lu.p]
    g = [None, *lu.g]
    b = [None, None, *lu.b]
    h = [None, None, *lu.h]

    dh = [None] * (n + 1)
    if n == 1:
        dh[1] = _shifted(d[1], sigma)
        return make_lu_generators(sizes, (), (), (), dh[1:], (), (), ())

    ph = [None] * (n + 1)
    hh = [None] * (n + 1)
    f = [None] * (n + 1)
    ph[n] = d[n] @ p[n]
    hh[n] = h[n]
    for k in range(n - 1, 1, -1):
        f[k] = h[k + 1] @ p[k + 1]
        if k + 1 <= n - 1:
            f[k] = f[k] + b[k + 1] @ f[k + 1] @ a[k + 1]
        ph[k] = d[k] @ p[k] + g[k] @ f[k] @ a[k]
        hh[k] = h[k] + b[k] @ f[k] @ q[k]

    f1 = h[2] @ p[2]
    if n >= 3:
        f1 = f1 + b[2] @ f[2] @ a[2]
    dh[1] = d[1] + g[1] @ f1 @ q[1] - sigma * np.eye(sizes.sizes[0])
    _pivot_check(dh[1], 1)

    qh = [None] * n
    gh = [None] * n
    qh[1] = _rdiv(q[1], dh[1])
    gh[1] = g[1]
    fh_prev = None
    for k in range(2, n):
        fh = qh[k - 1] @ gh[k - 1]
        if k - 1 >= 2:
            fh = fh + a[k - 1] @ fh_prev @ b[k - 1]
        dh[k] = d[k] + g[k] @ f[k] @ q[k] - sigma * np.eye(sizes.sizes[k - 1]) \
            - ph[k] @ fh @ hh[k]
        _pivot_check(dh[k], k)
        qh[k] = _rdiv(q[k] - a[k] @ fh @ hh[k], dh[k])
        gh[k] = g[k] - ph[k] @ fh @ b[k]
        fh_prev = fh
    fh = qh[n - 1] @ gh[n - 1]
    if n - 1 >= 2:
        fh = fh + a[n - 1] @ fh_prev @ b[n - 1]
    dh[n] = _shifted(d[n], sigma) - ph[n] @ fh @ hh[n]

    return make_lu_generators(sizes, qh[1:], lu.a, ph[2:], dh[1:], gh[1:], lu.b, hh[2:])


def _breakdown_check(dhk: float, t_term: float, coupling_term: float, k: int,
                     floor: float) -> None:
    scale = max(abs(t_term), abs(coupling_term), floor)
    if not np.isfinite(dhk) or abs(dhk) < _BREAKDOWN_RTOL * scale:
        raise Breakdown(k)


def dqds_step(f: HessLUFactors, sigma: float,
              breakdown_floor: float = _DEFAULT_FLOOR) -> tuple[HessLUFactors, QdAuxState]:
    """Differential qd sweep with shift on scalar Hessenberg factors.

    Single forward pass:

        t_1 = d_1 - sigma
        h^_k = h_k + s_k b_k h_{k+1}
        g^_k = g_k - s^_{k-1} g^_{k-1} b_k          (g^_1 = g_1)
        d^_k = t_k + s_k g^_k h_{k+1}
        s^_k = s_k d_{k+1} / d^_k
        t_{k+1} = t_k d_{k+1} / d^_k - sigma
        d^_n = t_n,  h^_n = h_n

    The produced factors satisfy L^ U^ = U L - sigma I.  ``b`` is returned
    untouched (the very same arrays), so any special structure in it is
    conserved bitwise across sweeps.  Breakdown(k) is raised when a divisor
    d^_k cancels to below 1e-14 of the terms that formed it.
    """
    n = f.n
    if n == 1:
        t = np.array([f.d[0] - sigma])
        return HessLUFactors(s=f.s, d=t.copy(), g=f.g, b=f.b, h=f.h), \
            QdAuxState(t=t, sigma=float(sigma))

    s = [None, *f.s]
    d = [None, *f.d]
    g = [None, *f.g]
    b = [None, None, *f.b]
    h = [None, None, *f.h]

    t = [None] * (n + 1)
    sh = [None] * n
    dh = [None] * (n + 1)
    gh = [None] * n
    hh = [None] * (n + 1)

    t[1] = d[1] - sigma
    gh[1] = g[1]
    coupling = s[1] * (gh[1] @ h[2]).item()
    dh[1] = t[1] + coupling
    _breakdown_check(dh[1], t[1], coupling, 1, breakdown_floor)
    sh[1] = s[1] * d[2] / dh[1]
    t[2] = t[1] * d[2] / dh[1] - sigma
    for k in range(2, n):
        hh[k] = h[k] + s[k] * (b[k] @ h[k + 1])
        gh[k] = g[k] - sh[k - 1] * (gh[k - 1] @ b[k])
        coupling = s[k] * (gh[k] @ h[k + 1]).item()
        dh[k] = t[k] + coupling
        _breakdown_check(dh[k], t[k], coupling, k, breakdown_floor)
        sh[k] = s[k] * d[k + 1] / dh[k]
        t[k + 1] = t[k] * d[k + 1] / dh[k] - sigma
    dh[n] = t[n]
    hh[n] = h[n]

    t_arr = np.array(t[1:], dtype=float)
    if not np.all(np.isfinite(t_arr)):
        raise Breakdown(int(np.argmax(~np.isfinite(t_arr))) + 1)
    out = HessLUFactors(
        s=np.array(sh[1:], dtype=float),
        d=np.array(dh[1:], dtype=float),
        g=tuple(gh[1:]),
        b=f.b,
        h=tuple(hh[2:]),
    )
    return out, QdAuxState(t=t_arr, sigma=float(sigma))


def dqds_step_tridiagonal(l, u, sigma: float,
                          breakdown_floor: float = _DEFAULT_FLOOR):
    """Classical differential qd sweep for normalized tridiagonal factors.

    ``l`` holds the subdiagonal of unit lower bidiagonal L, ``u`` the
    diagonal of upper bidiagonal U with unit superdiagonal.  Returns
    (l_new, u_new, t).  The arithmetic matches ``dqds_step`` on the embedded
    generators operation for operation.
    """
    l = np.asarray(l, dtype=float).reshape(-1)
    u = np.asarray(u, dtype=float).reshape(-1)
    n = u.size
    if l.size != n - 1:
        raise ValueError("need len(l) == len(u) - 1")
    t = np.empty(n)
    lh = np.empty(n - 1)
    uh = np.empty(n)
    t[0] = u[0] - sigma
    for k in range(n - 1):
        uh[k] = t[k] + l[k]
        _breakdown_check(uh[k], t[k], l[k], k + 1, breakdown_floor)
        lh[k] = l[k] * u[k + 1] / uh[k]
        t[k + 1] = t[k] * u[k + 1] / uh[k] - sigma
    uh[n - 1] = t[n - 1]
    if not np.all(np.isfinite(uh)) or not np.all(np.isfinite(lh)):
        raise Breakdown(n)
    return lh, uh, t
