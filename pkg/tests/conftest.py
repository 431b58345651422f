"""Shared oracles and random-instance builders for the test suite."""

import numpy as np
import pytest

from qsroots import HessLUFactors, QsGenerators, assemble_dense


def make_rng(seed):
    return np.random.default_rng(seed)


def antidiag(n):
    return np.eye(n)[::-1]


def numerical_rank(M, tol):
    """Count singular values above tol relative to the largest one."""
    if min(M.shape) == 0:
        return 0
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def random_qs_generators(rng, n, max_order=3, max_block=1, margin=1.0):
    """Random generators made strongly regular by a diagonal dominance boost."""
    sizes = [int(rng.integers(1, max_block + 1)) for _ in range(n)]
    rl = [int(rng.integers(1, max_order + 1)) for _ in range(max(n - 1, 0))]
    ru = [int(rng.integers(1, max_order + 1)) for _ in range(max(n - 1, 0))]

    def u(*shape):
        return rng.uniform(-1.0, 1.0, shape)

    d = [u(sizes[k], sizes[k]) for k in range(n)]
    q = [u(rl[k], sizes[k]) for k in range(n - 1)]
    a = [u(rl[k + 1], rl[k]) for k in range(max(n - 2, 0))]
    p = [u(sizes[k + 1], rl[k]) for k in range(n - 1)]
    g = [u(sizes[k], ru[k]) for k in range(n - 1)]
    b = [u(ru[k], ru[k + 1]) for k in range(max(n - 2, 0))]
    h = [u(ru[k], sizes[k + 1]) for k in range(n - 1)]
    gens = QsGenerators.from_blocks(d=d, q=q, a=a, p=p, g=g, b=b, h=h)
    A = assemble_dense(gens)
    boost = float(np.abs(A).sum(axis=1).max()) + margin
    d = [dk + boost * np.eye(dk.shape[0]) for dk in d]
    return QsGenerators.from_blocks(d=d, q=q, a=a, p=p, g=g, b=b, h=h)


def random_hess_factors(rng, n, max_ru=2, coupling=0.4, signed_s=True):
    """Random Hessenberg LU factors with healthy pivots for sweep tests."""
    ru = [int(rng.integers(1, max_ru + 1)) for _ in range(max(n - 1, 0))]
    s = rng.uniform(0.5, 1.5, max(n - 1, 0))
    if signed_s:
        s = s * rng.choice([-1.0, 1.0], max(n - 1, 0))
    return HessLUFactors(
        s=s,
        d=rng.uniform(0.8, 2.0, n),
        g=[rng.uniform(-coupling, coupling, (1, ru[k])) for k in range(n - 1)],
        b=[rng.uniform(-coupling, coupling, (ru[k], ru[k + 1]))
           for k in range(max(n - 2, 0))],
        h=[rng.uniform(-coupling, coupling, (ru[k], 1)) for k in range(n - 1)],
    )


def dense_block_lu(A, sizes):
    """Block Doolittle oracle: identity diagonal blocks in L, full pivot
    blocks in U.  Independent of the generator recurrences."""
    off = np.concatenate([[0], np.cumsum(sizes)])
    n = len(sizes)
    N = off[-1]
    L = np.eye(N)
    U = np.zeros((N, N))
    for k in range(n):
        rows = slice(off[k], off[k + 1])
        U[rows, off[k]:] = A[rows, off[k]:] - L[rows, :off[k]] @ U[:off[k], off[k]:]
        piv = U[rows, rows]
        below = slice(off[k + 1], N)
        rhs = A[below, rows] - L[below, :off[k]] @ U[:off[k], rows]
        L[below, rows] = np.linalg.solve(piv.T, rhs.T).T
    return L, U


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
