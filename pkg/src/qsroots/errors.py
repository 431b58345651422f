"""Exception types shared across the toolkit."""


class QsRootsError(Exception):
    """Base class for every structured-solver failure."""


class SizeMismatch(QsRootsError):
    """A generator's dimensions break the chaining rules."""

    def __init__(self, index, expected, got, what="generator"):
        self.index = index
        self.expected = expected
        self.got = got
        self.what = what
        super().__init__(
            f"{what} at k={index}: expected {expected}, got {got}"
        )


class NonPositiveScale(QsRootsError):
    """A balancing vector must be strictly positive and finite."""


class SingularPivot(QsRootsError):
    """A pivot block is (numerically) singular, so no-pivot LU does not exist."""

    def __init__(self, k):
        self.k = k
        super().__init__(f"singular pivot block at k={k}")


class Breakdown(QsRootsError):
    """A qd sweep pivot lost all significant digits to cancellation."""

    def __init__(self, k):
        self.k = k
        super().__init__(f"qd sweep breakdown at k={k}")


class BreakdownUnrecoverable(QsRootsError):
    """Every damped-shift retry of a broken sweep failed as well."""

    def __init__(self, m):
        self.m = m
        super().__init__(
            f"qd sweep kept breaking down at active size {m} after shift damping"
        )


class NonConvergence(QsRootsError):
    """The deflation loop exhausted its sweep budget."""

    def __init__(self, m, sweeps):
        self.m = m
        self.sweeps = sweeps
        super().__init__(
            f"no deflation at active size {m} after {sweeps} sweeps"
        )


class HornerZero(QsRootsError):
    """A Horner value vanished, so the factored form does not exist at this shift."""

    def __init__(self, k, sigma):
        self.k = k
        self.sigma = sigma
        super().__init__(f"Horner value H_{k}({sigma!r}) vanishes; pick another shift")
