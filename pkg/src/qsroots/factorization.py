"""Fast LU factorization of a strongly regular quasiseparable matrix.

The factorization runs one sweep of successive Schur complements over the
generators, touching each index once, so the cost is linear in the number
of blocks at fixed orders.  A dense Doolittle routine is included as the
independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularPivot
from .generators import BlockSizes, HessLUFactors, QsGenerators, validate

__all__ = [
    "LUGenerators",
    "qs_lu",
    "dense_lu_nopivot",
    "hessenberg_factors",
    "lu_from_hessenberg",
]

_TINY = float(np.finfo(float).tiny)
# Pivot blocks are declared singular when |det| falls below this fraction of
# the product of the block's row 1-norms.
_PIVOT_RTOL = 1e-13


def _pivot_check(block: np.ndarray, k: int) -> None:
    det = float(np.linalg.det(block))
    row_norms = np.abs(block).sum(axis=1)
    scale = float(np.prod(np.maximum(row_norms, _TINY)))
    if not np.isfinite(det) or abs(det) <= _PIVOT_RTOL * max(scale, _TINY):
        raise SingularPivot(k)


def _rdiv(B: np.ndarray, D: np.ndarray) -> np.ndarray:
    """B @ inv(D) through a small dense solve; no inverse is formed."""
    return np.linalg.solve(D.T, B.T).T


@dataclass(frozen=True)
class LUGenerators:
    """Generator form of a factorization A = L U.

    ``l_gens`` assembles to a unit lower triangular matrix (identity
    diagonal blocks, zero-width upper family); ``u_gens`` assembles to an
    upper triangular one (zero-width lower family).  ``f_trace`` holds the
    per-index coupling products of the factor chains,
    f_1 = q_1 g_1,  f_k = a_k f_{k-1} b_k + q_k g_k,
    where q/a come from L and g/b from U.
    """

    l_gens: QsGenerators
    u_gens: QsGenerators
    f_trace: tuple[np.ndarray, ...]

    # The varying families, without the structural zero/identity filler.
    @property
    def q(self):
        return self.l_gens.q

    @property
    def a(self):
        return self.l_gens.a

    @property
    def p(self):
        return self.l_gens.p

    @property
    def d(self):
        return self.u_gens.d

    @property
    def g(self):
        return self.u_gens.g

    @property
    def b(self):
        return self.u_gens.b

    @property
    def h(self):
        return self.u_gens.h

    @property
    def block_sizes(self) -> BlockSizes:
        return self.l_gens.block_sizes

    @property
    def n(self) -> int:
        return self.l_gens.n


def _coupling_trace(q, a, g, b):
    if not q:
        return ()
    f = [q[0] @ g[0]]
    for k in range(1, len(q)):
        f.append(a[k - 1] @ f[-1] @ b[k - 1] + q[k] @ g[k])
    return tuple(f)


def make_lu_generators(sizes: BlockSizes, q, a, p, d, g, b, h, f_trace=None) -> LUGenerators:
    """Assemble an LUGenerators value from the varying factor families.

    The structural parts (identity diagonal of L, empty opposite triangles)
    are filled in with zero-width generators so both factors are complete
    QsGenerators chains.
    """
    nk = sizes.sizes
    n = sizes.n
    q = tuple(q)
    a = tuple(a)
    p = tuple(p)
    d = tuple(d)
    g = tuple(g)
    b = tuple(b)
    h = tuple(h)
    l_gens = QsGenerators(
        block_sizes=sizes,
        d=tuple(np.eye(s) for s in nk),
        q=q,
        a=a,
        p=p,
        g=tuple(np.zeros((nk[k], 0)) for k in range(n - 1)),
        b=tuple(np.zeros((0, 0)) for _ in range(max(n - 2, 0))),
        h=tuple(np.zeros((0, nk[k + 1])) for k in range(n - 1)),
    )
    u_gens = QsGenerators(
        block_sizes=sizes,
        d=d,
        q=tuple(np.zeros((0, nk[k])) for k in range(n - 1)),
        a=tuple(np.zeros((0, 0)) for _ in range(max(n - 2, 0))),
        p=tuple(np.zeros((nk[k + 1], 0)) for k in range(n - 1)),
        g=g,
        b=b,
        h=h,
    )
    if f_trace is None:
        f_trace = _coupling_trace(q, a, g, b)
    return LUGenerators(l_gens=l_gens, u_gens=u_gens, f_trace=tuple(f_trace))


def qs_lu(gens: QsGenerators) -> LUGenerators:
    """Factor a strongly regular quasiseparable matrix as A = L U.

    One forward sweep of successive Schur complements over the generators:
    the eliminated couplings accumulate in the small matrices f_k, and the
    sweep produces new q, d, g families while a, p, b, h carry over
    unchanged.  Each pivot block is checked and SingularPivot(k) is raised
    where strong regularity fails.  No dense intermediate is formed.
    """
    validate(gens)
    n = gens.n
    d = [None, *gens.d]
    q = [None, *gens.q]
    a = [None, None, *gens.a]
    p = [None, None, *gens.p]
    g = [None, *gens.g]
    b = [None, None, *gens.b]
    h = [None, None, *gens.h]

    dt = [None] * (n + 1)
    dt[1] = d[1]
    _pivot_check(dt[1], 1)
    if n == 1:
        return make_lu_generators(gens.block_sizes, (), (), (), dt[1:], (), (), ())

    qt = [None] * n
    gt = [None] * n
    f = [None] * n
    qt[1] = _rdiv(q[1], dt[1])
    gt[1] = g[1]
    f[1] = qt[1] @ gt[1]
    for k in range(2, n):
        dt[k] = d[k] - p[k] @ f[k - 1] @ h[k]
        _pivot_check(dt[k], k)
        qt[k] = _rdiv(q[k] - a[k] @ f[k - 1] @ h[k], dt[k])
        gt[k] = g[k] - p[k] @ f[k - 1] @ b[k]
        f[k] = a[k] @ f[k - 1] @ b[k] + qt[k] @ gt[k]
    dt[n] = d[n] - p[n] @ f[n - 1] @ h[n]
    _pivot_check(dt[n], n)

    return make_lu_generators(
        gens.block_sizes, qt[1:], gens.a, gens.p, dt[1:], gt[1:], gens.b, gens.h,
        f_trace=f[1:],
    )


def dense_lu_nopivot(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Doolittle factorization without pivoting: A = L U, unit lower L.

    Oracle-grade reference; raises SingularPivot(k) when the k-th pivot is
    negligible against its own Schur-complement row.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("square matrix required")
    n = A.shape[0]
    L = np.eye(n)
    U = np.zeros_like(A)
    for k in range(n):
        U[k, k:] = A[k, k:] - L[k, :k] @ U[:k, k:]
        piv = U[k, k]
        row_scale = float(np.abs(U[k, k:]).max())
        if not np.isfinite(piv) or abs(piv) <= _PIVOT_RTOL * max(row_scale, _TINY):
            raise SingularPivot(k + 1)
        if k + 1 < n:
            L[k + 1:, k] = (A[k + 1:, k] - L[k + 1:, :k] @ U[:k, k]) / piv
    return L, U


def hessenberg_factors(lu: LUGenerators) -> HessLUFactors:
    """Flatten scalar-block bidiagonal-L factors into Hessenberg form.

    Requires every block to be 1x1 and every a_k to vanish (so L is unit
    lower bidiagonal); the subdiagonal entries are the scalars p_{k+1} q_k.
    """
    if any(s != 1 for s in lu.block_sizes.sizes):
        raise ValueError("Hessenberg factors require scalar blocks")
    if any(np.any(ak != 0.0) for ak in lu.a):
        raise ValueError("L is not bidiagonal: nonzero a_k present")
    n = lu.n
    s = np.array([(lu.p[k] @ lu.q[k]).item() for k in range(n - 1)])
    d = np.array([blk.item() for blk in lu.d])
    return HessLUFactors(s=s, d=d, g=lu.g, b=lu.b, h=lu.h)


def lu_from_hessenberg(f: HessLUFactors) -> LUGenerators:
    """Embed Hessenberg factors back into the general generator form."""
    n = f.n
    sizes = BlockSizes((1,) * n)
    return make_lu_generators(
        sizes,
        q=tuple(np.array([[sk]]) for sk in f.s),
        a=tuple(np.zeros((1, 1)) for _ in range(max(n - 2, 0))),
        p=tuple(np.ones((1, 1)) for _ in range(n - 1)),
        d=tuple(np.array([[dk]]) for dk in f.d),
        g=f.g,
        b=f.b,
        h=f.h,
    )
