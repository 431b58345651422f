"""Shifted deflation driver around the differential qd sweep.

The driver owns a shrinking window of Hessenberg LU factors.  Every
iteration reads the trailing entries of the current product L U, either
deflates an eigenvalue (adding back the accumulated shifts) or sweeps with
the trailing diagonal entry as shift, and recovers from sweep breakdowns by
damping the shift.  Each solve owns its factor state exclusively; distinct
solves are independent.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import Breakdown, BreakdownUnrecoverable, NonConvergence
from .generators import HessLUFactors
from .qd import QdAuxState, dqds_step

__all__ = [
    "SolveConfig",
    "DeflationEvent",
    "RootReport",
    "current_entries",
    "recover_breakdown",
    "solve",
]

logger = logging.getLogger("qsroots.eigensolver")


@dataclass(frozen=True)
class SolveConfig:
    """Tolerances and switches for the deflation driver.

    ``deflation_tol`` compares the trailing subdiagonal against the trailing
    diagonal; ``breakdown_tol`` is the absolute floor inside the relative
    breakdown test of a sweep; ``shift_damping`` is the factor applied to a
    shift when its sweep breaks down; ``balance`` picks the scaled pipeline
    in the polynomial front-end.
    """

    deflation_tol: float = 1e-12
    max_iters_per_root: int = 50
    breakdown_tol: float = 1e-300
    balance: bool = True
    shift_damping: float = 0.5

    def __post_init__(self):
        if self.deflation_tol <= 0 or self.breakdown_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iters_per_root < 1:
            raise ValueError("max_iters_per_root must be >= 1")
        if not 0.0 < self.shift_damping < 1.0:
            raise ValueError("shift_damping must lie in (0, 1)")


class DeflationEvent(NamedTuple):
    """One deflation: the window size, the shift total at emission, the
    subdiagonal/diagonal criterion ratio, and the trailing diagonal entry
    that became the eigenvalue once the shifts were added back."""

    active_size: int
    shift: float
    criterion_value: float
    trailing_entry: float


@dataclass(frozen=True)
class RootReport:
    """Roots plus the iteration bookkeeping of the deflation loop."""

    roots: np.ndarray
    iters: tuple[int, ...]
    total_iters: int
    iters_per_root: float
    deflation_log: tuple[DeflationEvent, ...]


def current_entries(f: HessLUFactors, m: int) -> tuple[float, float]:
    """Entries (m, m) and (m, m-1) of the product L U, read off the factors.

    A[m, m] = s_{m-1} (g_{m-1} h_m) + d_m and A[m, m-1] = s_{m-1} d_{m-1};
    for m = 1 the pair is (d_1, 0).
    """
    if not 1 <= m <= f.n:
        raise ValueError(f"active size {m} out of range 1..{f.n}")
    if m == 1:
        return float(f.d[0]), 0.0
    cross = (f.g[m - 2] @ f.h[m - 2]).item()
    a_mm = f.s[m - 2] * cross + f.d[m - 1]
    a_sub = f.s[m - 2] * f.d[m - 2]
    return float(a_mm), float(a_sub)


def recover_breakdown(f: HessLUFactors, sigma: float,
                      cfg: SolveConfig | None = None) -> tuple[HessLUFactors, QdAuxState]:
    """Run one sweep at sigma, damping the shift while it breaks down.

    Attempts sigma, then sigma * damping^j for j = 1..3, then 0 as the last
    resort.  The input factors are never touched, so every retry starts from
    the same state.  The shift that finally ran is reported in the returned
    aux state.
    """
    cfg = cfg or SolveConfig()
    shifts = [sigma]
    damped = sigma
    for _ in range(3):
        damped = damped * cfg.shift_damping
        shifts.append(damped)
    shifts.append(0.0)
    for attempt, sg in enumerate(shifts):
        try:
            out = dqds_step(f, sg, breakdown_floor=cfg.breakdown_tol)
        except Breakdown as exc:
            logger.info(
                "sweep at shift %.17g broke down at k=%d (attempt %d)",
                sg, exc.k, attempt + 1,
            )
            continue
        return out
    raise BreakdownUnrecoverable(f.n)


def solve(f: HessLUFactors, cfg: SolveConfig | None = None) -> RootReport:
    """Find all eigenvalues of L U by shifted differential qd with deflation.

    The loop keeps factors of the active leading window.  Per iteration it
    deflates when the trailing subdiagonal of the current product is
    negligible against the trailing diagonal (emitting that diagonal entry
    plus all shifts applied so far), and otherwise sweeps with the trailing
    diagonal entry as the shift.  Sweeps are budgeted at
    ``max_iters_per_root`` per matrix dimension in total.
    """
    cfg = cfg or SolveConfig()
    n0 = f.n
    budget = cfg.max_iters_per_root * n0
    trace = logger.isEnabledFor(logging.DEBUG)

    cur = f
    roots: list[float] = []
    iters: list[int] = []
    log: list[DeflationEvent] = []
    shift_accum = 0.0
    since_deflation = 0
    total = 0
    while True:
        m = cur.n
        a_mm, a_sub = current_entries(cur, m)
        # The trailing entry of the shifted iterate collapses to zero as it
        # converges, so the subdiagonal is compared against both that entry
        # and the restored eigenvalue estimate a_mm + accumulated shifts.
        scale = max(abs(a_mm), abs(a_mm + shift_accum))
        if m == 1 or a_sub == 0.0 or abs(a_sub) < cfg.deflation_tol * scale:
            if a_sub == 0.0:
                criterion = 0.0
            elif scale != 0.0:
                criterion = abs(a_sub) / scale
            else:
                criterion = float("inf")
            roots.append(a_mm + shift_accum)
            iters.append(since_deflation)
            log.append(DeflationEvent(m, shift_accum, criterion, a_mm))
            logger.info(
                "deflated %.17g at active size %d after %d sweeps",
                roots[-1], m, since_deflation,
            )
            since_deflation = 0
            if m == 1:
                break
            cur = cur.leading(m - 1)
            continue
        if total >= budget:
            raise NonConvergence(m, total)
        sigma = a_mm
        if trace:
            logger.debug(
                "size %d sweep %d: shift %.17g, subdiag %.3e",
                m, total + 1, sigma, a_sub,
            )
        cur, aux = recover_breakdown(cur, sigma, cfg)
        shift_accum += aux.sigma
        total += 1
        since_deflation += 1

    return RootReport(
        roots=np.array(roots),
        iters=tuple(iters),
        total_iters=total,
        iters_per_root=total / n0,
        deflation_log=tuple(log),
    )
