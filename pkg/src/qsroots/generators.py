"""Block quasiseparable generator representation and dense assembly.

A block matrix with block sizes ``n_1..n_n`` is stored through seven
families of small matrices (the generators).  Entry blocks are

    A[i, j] = p_i a_{i-1} ... a_{j+1} q_j     for i > j   (lower part)
    A[i, i] = d_i
    A[i, j] = g_i b_{i+1} ... b_{j-1} h_j     for i < j   (upper part)

with the convention that an empty product of ``a``'s or ``b``'s is an
identity, so the first sub/superdiagonal blocks are ``p_{j+1} q_j`` and
``g_i h_{i+1}``.

Generator sizes chain through per-index lower/upper orders
``r^l_k = rows(q_k)`` and ``r^u_k = cols(g_k)``:

    family   rows        cols        defined for
    d_k      n_k         n_k         k = 1..n
    q_k      r^l_k       n_k         k = 1..n-1
    a_k      r^l_k       r^l_{k-1}   k = 2..n-1
    p_k      n_k         r^l_{k-1}   k = 2..n
    g_k      n_k         r^u_k       k = 1..n-1
    b_k      r^u_{k-1}   r^u_k       k = 2..n-1
    h_k      r^u_{k-1}   n_k         k = 2..n

Documentation and docstrings use the 1-based index k above; storage is
0-based and compact:

    d_k -> d[k-1]    q_k -> q[k-1]    a_k -> a[k-2]    p_k -> p[k-2]
    g_k -> g[k-1]    b_k -> b[k-2]    h_k -> h[k-2]

Orders may vary along the chain and may be zero; a zero order encodes an
absent triangle (used for the triangular factors L and U).

All types here are immutable value data and all operations are pure
functions, so everything is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveScale, SizeMismatch

__all__ = [
    "BlockSizes",
    "QsGenerators",
    "HessLUFactors",
    "DiagonalScaling",
    "validate",
    "assemble_dense",
    "assemble_hess_dense",
    "reverse_juj",
    "apply_scaling",
]


def _block(x) -> np.ndarray:
    return np.atleast_2d(np.asarray(x, dtype=float))


def _blocks(seq) -> tuple[np.ndarray, ...]:
    return tuple(_block(x) for x in seq)


@dataclass(frozen=True)
class BlockSizes:
    """Row/column block sizes of a block matrix."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if not self.sizes or any(s < 1 for s in self.sizes):
            raise ValueError("block sizes must be positive integers")

    @property
    def n(self) -> int:
        return len(self.sizes)

    @property
    def N(self) -> int:
        return int(sum(self.sizes))

    def offsets(self) -> np.ndarray:
        """Start offset of each block, plus the total size as a sentinel."""
        off = np.zeros(self.n + 1, dtype=int)
        np.cumsum(self.sizes, out=off[1:])
        return off


@dataclass(frozen=True)
class QsGenerators:
    """The seven generator families of a block quasiseparable matrix."""

    block_sizes: BlockSizes
    d: tuple[np.ndarray, ...]
    q: tuple[np.ndarray, ...]
    a: tuple[np.ndarray, ...]
    p: tuple[np.ndarray, ...]
    g: tuple[np.ndarray, ...]
    b: tuple[np.ndarray, ...]
    h: tuple[np.ndarray, ...]

    @classmethod
    def from_blocks(cls, d, q=(), a=(), p=(), g=(), b=(), h=()) -> "QsGenerators":
        """Build from block sequences, inferring block sizes from the diagonal."""
        d = _blocks(d)
        sizes = BlockSizes(tuple(x.shape[0] for x in d))
        return cls(
            block_sizes=sizes,
            d=d,
            q=_blocks(q),
            a=_blocks(a),
            p=_blocks(p),
            g=_blocks(g),
            b=_blocks(b),
            h=_blocks(h),
        )

    @property
    def n(self) -> int:
        return self.block_sizes.n

    @property
    def lower_orders(self) -> tuple[int, ...]:
        """Per-index lower orders r^l_k = rows(q_k), k = 1..n-1."""
        return tuple(x.shape[0] for x in self.q)

    @property
    def upper_orders(self) -> tuple[int, ...]:
        """Per-index upper orders r^u_k = cols(g_k), k = 1..n-1."""
        return tuple(x.shape[1] for x in self.g)


def _want(what, k, arr, shape):
    if arr.shape != shape:
        raise SizeMismatch(k, shape, arr.shape, what)


def validate(gens: QsGenerators) -> None:
    """Check every generator's dimensions against the chaining rules.

    Raises SizeMismatch at the first offending index; returns None when the
    whole chain is conformable.
    """
    sizes = gens.block_sizes.sizes
    n = len(sizes)
    counts = {
        "d": (gens.d, n),
        "q": (gens.q, n - 1),
        "a": (gens.a, max(n - 2, 0)),
        "p": (gens.p, n - 1),
        "g": (gens.g, n - 1),
        "b": (gens.b, max(n - 2, 0)),
        "h": (gens.h, n - 1),
    }
    for name, (seq, count) in counts.items():
        if len(seq) != count:
            raise SizeMismatch(name, count, len(seq), f"{name} sequence length")

    rl = gens.lower_orders
    ru = gens.upper_orders
    for k in range(1, n + 1):
        _want("d", k, gens.d[k - 1], (sizes[k - 1], sizes[k - 1]))
    for k in range(1, n):
        _want("q", k, gens.q[k - 1], (rl[k - 1], sizes[k - 1]))
        _want("g", k, gens.g[k - 1], (sizes[k - 1], ru[k - 1]))
    for k in range(2, n):
        _want("a", k, gens.a[k - 2], (rl[k - 1], rl[k - 2]))
        _want("b", k, gens.b[k - 2], (ru[k - 2], ru[k - 1]))
    for k in range(2, n + 1):
        _want("p", k, gens.p[k - 2], (sizes[k - 1], rl[k - 2]))
        _want("h", k, gens.h[k - 2], (ru[k - 2], sizes[k - 1]))


def assemble_dense(gens: QsGenerators) -> np.ndarray:
    """Materialize the full matrix from its generators.

    Fills one block row/column at a time through the running products of
    ``a``'s and ``b``'s, so the total work is quadratic in the matrix size.
    Intended for oracles, balancing and small problems, not for the fast
    paths.
    """
    validate(gens)
    off = gens.block_sizes.offsets()
    n = gens.n
    A = np.zeros((gens.block_sizes.N, gens.block_sizes.N))

    for k in range(n):
        A[off[k]:off[k + 1], off[k]:off[k + 1]] = gens.d[k]

    # Lower part, one block column at a time: x carries a_{i-1}...a_{j+1} q_j.
    for j in range(1, n):
        x = gens.q[j - 1]
        for i in range(j + 1, n + 1):
            if i > j + 1:
                x = gens.a[i - 3] @ x
            A[off[i - 1]:off[i], off[j - 1]:off[j]] = gens.p[i - 2] @ x

    # Upper part, one block row at a time: y carries g_i b_{i+1}...b_{j-1}.
    for i in range(1, n):
        y = gens.g[i - 1]
        for j in range(i + 1, n + 1):
            if j > i + 1:
                y = y @ gens.b[j - 3]
            A[off[i - 1]:off[i], off[j - 1]:off[j]] = y @ gens.h[j - 2]

    return A


@dataclass(frozen=True)
class HessLUFactors:
    """LU factors of a scalar Hessenberg quasiseparable matrix.

    ``L`` is unit lower bidiagonal with subdiagonal ``s``; ``U`` is upper
    triangular with diagonal ``d`` and strictly-upper entries
    ``g_i b_{i+1}...b_{j-1} h_j``.  The g/b/h widths may vary (and differ
    between factor families such as companion vs. comrade forms).

    Storage is 0-based: ``s_k -> s[k-1]``, ``d_k -> d[k-1]``,
    ``g_k -> g[k-1]``, ``b_k -> b[k-2]``, ``h_k -> h[k-2]``.
    """

    s: np.ndarray
    d: np.ndarray
    g: tuple[np.ndarray, ...]
    b: tuple[np.ndarray, ...]
    h: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "s", np.asarray(self.s, dtype=float).reshape(-1))
        object.__setattr__(self, "d", np.asarray(self.d, dtype=float).reshape(-1))
        object.__setattr__(self, "g", _blocks(self.g))
        object.__setattr__(self, "b", _blocks(self.b))
        object.__setattr__(self, "h", _blocks(self.h))
        n = len(self.d)
        if n < 1:
            raise SizeMismatch("d", "length >= 1", 0, "diagonal length")
        for name, seq, count in (
            ("s", self.s, n - 1),
            ("g", self.g, n - 1),
            ("h", self.h, n - 1),
            ("b", self.b, max(n - 2, 0)),
        ):
            if len(seq) != count:
                raise SizeMismatch(name, count, len(seq), f"{name} sequence length")
        for i in range(n - 1):
            _want("g", i + 1, self.g[i], (1, self.g[i].shape[1]))
            _want("h", i + 2, self.h[i], (self.g[i].shape[1], 1))
        for i in range(max(n - 2, 0)):
            _want("b", i + 2, self.b[i], (self.g[i].shape[1], self.g[i + 1].shape[1]))

    @property
    def n(self) -> int:
        return len(self.d)

    def leading(self, m: int) -> "HessLUFactors":
        """Factors of the leading m-by-m principal submatrices of L and U."""
        if not 1 <= m <= self.n:
            raise ValueError(f"active size {m} out of range 1..{self.n}")
        return HessLUFactors(
            s=self.s[:m - 1],
            d=self.d[:m],
            g=self.g[:m - 1],
            b=self.b[:max(m - 2, 0)],
            h=self.h[:m - 1],
        )


def assemble_hess_dense(f: HessLUFactors) -> tuple[np.ndarray, np.ndarray]:
    """Materialize (L, U) densely from Hessenberg factor generators."""
    n = f.n
    L = np.eye(n)
    if n > 1:
        L[np.arange(1, n), np.arange(n - 1)] = f.s
    U = np.zeros((n, n))
    U[np.diag_indices(n)] = f.d
    for i in range(1, n):
        y = f.g[i - 1]
        for j in range(i + 1, n + 1):
            if j > i + 1:
                y = y @ f.b[j - 3]
            U[i - 1, j - 1] = (y @ f.h[j - 2]).item()
    return L, U


def reverse_juj(f: HessLUFactors) -> HessLUFactors:
    """Index-reverse the factors so a forward sweep acts bottom-to-top.

    The returned generators are ``{s_{n-k}, d_{n-k+1}, h_{n-k+1}^T,
    b_{n-k+1}^T, g_{n-k+1}^T}``: they assemble to the antidiagonal flips
    J L^T J and J U^T J, whose product shares the spectrum of the original
    U L product.  Applying the reversal twice restores the input exactly.
    """
    n = f.n
    return HessLUFactors(
        s=f.s[::-1].copy(),
        d=f.d[::-1].copy(),
        g=tuple(f.h[i].T for i in reversed(range(n - 1))),
        b=tuple(f.b[i].T for i in reversed(range(max(n - 2, 0)))),
        h=tuple(f.g[i].T for i in reversed(range(n - 1))),
    )


@dataclass(frozen=True)
class DiagonalScaling:
    """A positive diagonal similarity D = diag(delta)."""

    delta: np.ndarray

    def __post_init__(self):
        delta = np.asarray(self.delta, dtype=float).reshape(-1)
        object.__setattr__(self, "delta", delta)
        if delta.size == 0 or not np.all(np.isfinite(delta)) or np.any(delta <= 0):
            raise NonPositiveScale("scaling entries must be finite and > 0")

    def inverse(self) -> "DiagonalScaling":
        return DiagonalScaling(1.0 / self.delta)


def apply_scaling(gens: QsGenerators, delta) -> QsGenerators:
    """Return generators of the similarity D A D^-1 (scalar blocks only).

    Diagonal entries are untouched; the coupling generators pick up the
    row/column scale: ``q_k / delta_k``, ``p_k * delta_k``, ``g_k * delta_k``,
    ``h_k / delta_k``.
    """
    if not isinstance(delta, DiagonalScaling):
        delta = DiagonalScaling(delta)
    if any(s != 1 for s in gens.block_sizes.sizes):
        raise ValueError("similarity scaling is defined for scalar blocks only")
    dl = delta.delta
    n = gens.n
    if len(dl) != n:
        raise ValueError(f"scaling length {len(dl)} != matrix size {n}")
    return QsGenerators(
        block_sizes=gens.block_sizes,
        d=gens.d,
        q=tuple(gens.q[k] / dl[k] for k in range(n - 1)),
        a=gens.a,
        p=tuple(gens.p[k] * dl[k + 1] for k in range(n - 1)),
        g=tuple(gens.g[k] * dl[k] for k in range(n - 1)),
        b=gens.b,
        h=tuple(gens.h[k] / dl[k + 1] for k in range(n - 1)),
    )
