"""Structured eigenvalue and polynomial root-finding toolkit.

Fast LU factorization and qd-type iterations (stationary, progressive and
differential with shifts) on quasiseparable matrix generators, specialized
into a root-finder for monic polynomials in monomial and orthogonal bases
through companion and comrade factor forms.
"""

from .errors import (
    Breakdown,
    BreakdownUnrecoverable,
    HornerZero,
    NonConvergence,
    NonPositiveScale,
    QsRootsError,
    SingularPivot,
    SizeMismatch,
)
from .generators import (
    BlockSizes,
    DiagonalScaling,
    HessLUFactors,
    QsGenerators,
    apply_scaling,
    assemble_dense,
    assemble_hess_dense,
    reverse_juj,
    validate,
)
from .factorization import (
    LUGenerators,
    dense_lu_nopivot,
    hessenberg_factors,
    lu_from_hessenberg,
    make_lu_generators,
    qs_lu,
)
from .qd import QdAuxState, dqds_step, dqds_step_tridiagonal, qds, stqd
from .eigensolver import (
    DeflationEvent,
    RootReport,
    SolveConfig,
    current_entries,
    recover_breakdown,
    solve,
)
from .polyroots import (
    HornerTrace,
    Polynomial,
    balance_vector,
    clenshaw_trace,
    companion_generators,
    companion_lu,
    comrade_generators,
    comrade_lu,
    evaluate,
    horner_trace,
    monomial_to_orthogonal,
    pair_relative_error,
    roots,
)
from .suites import SUITES, chebyshev2_scaled_basis, monic_from_roots

__version__ = "0.1.0"

__all__ = [
    "QsRootsError", "SizeMismatch", "NonPositiveScale", "SingularPivot",
    "Breakdown", "BreakdownUnrecoverable", "NonConvergence", "HornerZero",
    "BlockSizes", "QsGenerators", "HessLUFactors", "DiagonalScaling",
    "validate", "assemble_dense", "assemble_hess_dense", "reverse_juj",
    "apply_scaling",
    "LUGenerators", "qs_lu", "dense_lu_nopivot", "hessenberg_factors",
    "lu_from_hessenberg", "make_lu_generators",
    "QdAuxState", "stqd", "qds", "dqds_step", "dqds_step_tridiagonal",
    "SolveConfig", "DeflationEvent", "RootReport", "current_entries",
    "recover_breakdown", "solve",
    "Polynomial", "HornerTrace", "horner_trace", "clenshaw_trace", "evaluate",
    "companion_lu", "comrade_lu", "companion_generators", "comrade_generators",
    "balance_vector", "roots", "monomial_to_orthogonal", "pair_relative_error",
    "SUITES", "monic_from_roots", "chebyshev2_scaled_basis",
    "__version__",
]
