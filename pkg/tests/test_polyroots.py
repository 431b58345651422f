import math

import numpy as np
import numpy.testing as npt
import pytest

from qsroots import (
    HornerZero,
    Polynomial,
    SolveConfig,
    assemble_dense,
    assemble_hess_dense,
    balance_vector,
    clenshaw_trace,
    companion_generators,
    companion_lu,
    comrade_generators,
    comrade_lu,
    dense_lu_nopivot,
    dqds_step,
    evaluate,
    horner_trace,
    monomial_to_orthogonal,
    pair_relative_error,
    roots,
)
from qsroots.suites import (
    chebyshev2_scaled_basis,
    monic_from_roots,
    orthogonal_from_roots,
    wilkinson_first,
    wilkinson_first_chebyshev,
)
from conftest import make_rng


def dense_companion(p):
    n = p.degree
    C = np.zeros((n, n))
    C[0, :] = [-p.coeffs[n - 1 - j] for j in range(n)]
    C[np.arange(1, n), np.arange(n - 1)] = 1.0
    return C


def dense_comrade(p):
    n = p.degree
    alpha, beta, m = p.alpha, p.beta, p.coeffs
    C = np.zeros((n, n))
    for k in range(n):
        C[k, k] = alpha[n - 1 - k]
    C[0, 0] -= m[n - 1]
    if n > 1:
        C[0, 1] = beta[n - 2] - m[n - 2]
        for k in range(1, n - 1):
            C[k, k + 1] = beta[n - 2 - k]
        for j in range(2, n):
            C[0, j] += -m[n - 1 - j]
        C[np.arange(1, n), np.arange(n - 1)] = 1.0
    return C


class TestPolynomial:
    def test_validation(self):
        with pytest.raises(ValueError):
            Polynomial(())
        with pytest.raises(ValueError):
            Polynomial((1.0, 2.0), alpha=(0.0, 0.0))
        with pytest.raises(ValueError):
            Polynomial((1.0, 2.0), alpha=(0.0, 0.0), beta=(-1.0,))
        with pytest.raises(ValueError):
            Polynomial((1.0, 2.0), alpha=(0.0,), beta=(1.0,))
        p = Polynomial((1.0, 2.0), alpha=(0.0, 0.0), beta=(0.25,))
        assert p.basis == "orthogonal"


class TestHorner:
    def test_quadratic_at_zero(self):
        tr = horner_trace(Polynomial((2.0, -3.0)), 0.0)
        npt.assert_allclose(tr.values, [1.0, -3.0, 2.0])
        assert tr.p_sigma == 2.0

    def test_quadratic_at_root(self):
        tr = horner_trace(Polynomial((2.0, -3.0)), 1.0)
        npt.assert_allclose(tr.values, [1.0, -2.0, 0.0])

    def test_wilkinson_ten_at_zero(self):
        p, _ = wilkinson_first(10)
        tr = horner_trace(p, 0.0)
        assert tr.p_sigma == math.factorial(10)

    def test_consistency_with_power_form(self):
        rng = make_rng(300)
        for _ in range(20):
            n = int(rng.integers(1, 9))
            coeffs = rng.uniform(-2.0, 2.0, n)
            p = Polynomial(tuple(coeffs))
            x = float(rng.uniform(-2.0, 2.0))
            direct = x ** n + sum(coeffs[k] * x ** k for k in range(n))
            rel = abs(evaluate(p, x) - direct) / max(abs(direct), 1.0)
            assert rel <= 1e-12


class TestClenshaw:
    def test_chebyshev_like_quadratic(self):
        p = Polynomial((0.0, 0.0), alpha=(0.0, 0.0), beta=(0.25,))
        for sigma in (-1.3, 0.0, 0.4, 2.0):
            tr = clenshaw_trace(p, sigma)
            npt.assert_allclose(tr.p_sigma, sigma * sigma - 0.25, atol=1e-15)

    def test_zero_coefficients_gives_pure_recurrence(self):
        alpha = (0.3, -0.1, 0.2)
        beta = (0.5, 0.25)
        p = Polynomial((0.0, 0.0, 0.0), alpha=alpha, beta=beta)
        sigma = 0.7
        r0, r1 = 1.0, sigma - alpha[0]
        r2 = (sigma - alpha[1]) * r1 - beta[0] * r0
        r3 = (sigma - alpha[2]) * r2 - beta[1] * r1
        npt.assert_allclose(clenshaw_trace(p, sigma).p_sigma, r3, rtol=1e-14)

    def test_vanishes_at_root(self):
        roots = np.array([-0.5, 0.5])
        p = orthogonal_from_roots(roots, (0.0, 0.0), (0.25,))
        npt.assert_allclose(clenshaw_trace(p, 0.5).p_sigma, 0.0, atol=1e-15)


class TestCompanionLU:
    def test_quadratic_example(self):
        p = Polynomial((2.0, -3.0))
        f = companion_lu(p, 0.0)
        npt.assert_allclose(f.s, [1.0 / 3.0])
        npt.assert_allclose(f.d, [3.0, 2.0 / 3.0])
        npt.assert_allclose(f.g[0], [[-1.0]])
        npt.assert_allclose(f.h[0], [[2.0]])
        L, U = assemble_hess_dense(f)
        npt.assert_allclose(L @ U, dense_companion(p), atol=1e-15)

    def test_trailing_entry_is_value_ratio(self):
        rng = make_rng(301)
        for _ in range(10):
            n = int(rng.integers(2, 10))
            p = monic_from_roots(rng.uniform(0.5, 4.0, n))
            sigma = float(rng.uniform(-1.0, -0.1))
            f = companion_lu(p, sigma)
            H = horner_trace(p, sigma).values
            npt.assert_allclose(f.d[-1], -H[n] / H[n - 1], rtol=1e-14)

    def test_shifted_identity_random(self):
        rng = make_rng(302)
        for _ in range(15):
            n = int(rng.integers(2, 16))
            rts = np.sort(rng.uniform(0.5, 5.0, n)) * rng.choice([-1.0, 1.0], n)
            p = monic_from_roots(rts)
            sigma = float(rng.uniform(5.5, 7.0))  # never a root
            f = companion_lu(p, sigma)
            L, U = assemble_hess_dense(f)
            C = dense_companion(p)
            target = C - sigma * np.eye(n)
            npt.assert_allclose(
                L @ U, target, rtol=0,
                atol=1e-10 * max(np.abs(target).max(), 1.0),
            )

    def test_root_shift_gives_singular_or_error(self):
        p = Polynomial((2.0, -3.0))  # roots 1, 2
        try:
            f = companion_lu(p, 1.0)
        except HornerZero:
            return
        assert f.d[-1] == pytest.approx(0.0, abs=1e-15)

    def test_horner_zero_raised(self):
        # x^3 - x: H_1(0) = m_2 = 0 blocks the zero-shift factorization.
        p = Polynomial((0.0, -1.0, 0.0))
        with pytest.raises(HornerZero):
            companion_lu(p, 0.0)


class TestComradeLU:
    def test_chebyshev_quadratic_shifted(self):
        p = Polynomial((0.0, 0.0), alpha=(0.0, 0.0), beta=(0.25,))
        tr = clenshaw_trace(p, 1.0)
        npt.assert_allclose(tr.values, [1.0, 1.0, 0.75])
        f = comrade_lu(p, 1.0)
        npt.assert_allclose(f.s, [-1.0])
        npt.assert_allclose(f.d, [-1.0, -0.75])
        L, U = assemble_hess_dense(f)
        npt.assert_allclose(L @ U, [[-1.0, 0.25], [1.0, -1.0]], atol=1e-15)
        # the unshifted matrix has roots +/- 1/2
        C = dense_comrade(p)
        npt.assert_allclose(C, [[0.0, 0.25], [1.0, 0.0]])
        npt.assert_allclose(np.sort(np.linalg.eigvals(C).real), [-0.5, 0.5])

    def test_shifted_identity_random(self):
        rng = make_rng(303)
        for _ in range(15):
            n = int(rng.integers(2, 7))
            alpha = tuple(rng.uniform(-0.5, 0.5, n))
            beta = tuple(rng.uniform(0.1, 0.8, n - 1))
            p = Polynomial(tuple(rng.uniform(-1.0, 1.0, n)), alpha=alpha, beta=beta)
            sigma = float(rng.uniform(4.0, 5.0))
            f = comrade_lu(p, sigma)
            L, U = assemble_hess_dense(f)
            target = dense_comrade(p) - sigma * np.eye(n)
            npt.assert_allclose(
                L @ U, target, rtol=0,
                atol=1e-10 * max(np.abs(target).max(), 1.0),
            )

    def test_upper_factor_entries_degree_four(self):
        rng = make_rng(304)
        n = 4
        alpha = tuple(rng.uniform(-0.5, 0.5, n))
        beta = tuple(rng.uniform(0.2, 0.9, n - 1))
        m = tuple(rng.uniform(-1.0, 1.0, n))
        p = Polynomial(m, alpha=alpha, beta=beta)
        sigma = 3.5
        _, U = assemble_hess_dense(comrade_lu(p, sigma))
        _, Ud = dense_lu_nopivot(dense_comrade(p) - sigma * np.eye(n))
        npt.assert_allclose(U, Ud, rtol=0, atol=1e-12 * np.abs(Ud).max())


class TestMatrixGenerators:
    def test_companion_assembles_to_companion(self):
        rng = make_rng(305)
        for n in (1, 2, 5, 9):
            p = Polynomial(tuple(rng.uniform(-2.0, 2.0, n)))
            npt.assert_allclose(
                assemble_dense(companion_generators(p)), dense_companion(p)
            )

    def test_comrade_assembles_to_comrade(self):
        rng = make_rng(306)
        for n in (1, 2, 3, 6):
            alpha = tuple(rng.uniform(-1.0, 1.0, n))
            beta = tuple(rng.uniform(0.1, 1.0, max(n - 1, 0)))
            p = Polynomial(tuple(rng.uniform(-2.0, 2.0, n)),
                           alpha=alpha, beta=beta)
            npt.assert_allclose(
                assemble_dense(comrade_generators(p)), dense_comrade(p)
            )


class TestStructureConservation:
    def test_companion_b_stays_one(self):
        p = monic_from_roots(np.arange(1.0, 16.0))
        f = companion_lu(p, 0.0)
        b0 = f.b
        for _ in range(20):
            f, _aux = dqds_step(f, 0.05)
            for bk in f.b:
                assert bk.shape == (1, 1) and bk[0, 0] == 1.0
        assert all(x is y for x, y in zip(f.b, b0[:len(f.b)]))

    def test_comrade_b_stays_projector(self):
        p, _ = wilkinson_first_chebyshev(12)
        f = comrade_lu(p, 0.0)
        ref = np.array([[0.0, 0.0], [0.0, 1.0]])
        for _ in range(20):
            f, _aux = dqds_step(f, 0.05)
            for bk in f.b:
                assert np.array_equal(bk, ref)


class TestBalance:
    def test_symmetric_fixed_point(self):
        A = np.array([[2.0, 1.0, 0.0], [1.0, 3.0, 0.5], [0.0, 0.5, 1.0]])
        delta = balance_vector(A)
        npt.assert_array_equal(delta.delta, np.ones(3))

    def test_recovers_symmetric_norm_ratios(self):
        rng = make_rng(307)
        n = 6
        S = rng.uniform(-1.0, 1.0, (n, n))
        S = S + S.T
        D = np.diag(2.0 ** rng.integers(-6, 7, n).astype(float))
        A = D @ S @ np.linalg.inv(D)
        delta = balance_vector(A)
        B = np.diag(delta.delta) @ A @ np.linalg.inv(np.diag(delta.delta))
        for i in range(n):
            c = np.abs(B[:, i]).sum() - abs(B[i, i])
            r = np.abs(B[i, :]).sum() - abs(B[i, i])
            assert c < 2.0 * r and r < 2.0 * c
        assert np.all(np.log2(delta.delta) == np.round(np.log2(delta.delta)))

    def test_balancing_keeps_roots(self):
        p = monic_from_roots([1.0, 2.5, 4.0, 7.0])
        on = roots(p, SolveConfig(balance=True))
        off = roots(p, SolveConfig(balance=False))
        assert pair_relative_error(np.sort(on.roots), np.sort(off.roots)) <= 1e-6


class TestRoots:
    def test_quadratic(self):
        p = Polynomial((2.0, -3.0))
        for balance in (False, True):
            rep = roots(p, SolveConfig(balance=balance))
            npt.assert_allclose(np.sort(rep.roots), [1.0, 2.0], atol=1e-12)

    def test_wilkinson_twenty_unbalanced(self):
        p, rts = wilkinson_first(20)
        rep = roots(p, SolveConfig(balance=False))
        assert pair_relative_error(rts, rep.roots) <= 1e-2
        assert rep.iters_per_root <= 6.0

    def test_wilkinson_ten_chebyshev_basis(self):
        p, rts = wilkinson_first_chebyshev(10)
        rep = roots(p, SolveConfig(balance=False))
        assert pair_relative_error(rts, rep.roots) <= 1e-9


class TestBasisConversion:
    def test_degenerate_recurrence_is_monomial(self):
        p = Polynomial((1.0, -2.0, 0.5))
        out = monomial_to_orthogonal(p, (0.0, 0.0, 0.0), (0.0, 0.0))
        assert out.coeffs == p.coeffs

    def test_chebyshev_quadratic(self):
        out = monomial_to_orthogonal(Polynomial((-0.25, 0.0)), (0.0, 0.0), (0.25,))
        npt.assert_allclose(out.coeffs, (0.0, 0.0), atol=1e-16)

    def test_round_trip_evaluation(self):
        rng = make_rng(308)
        n = 10
        p = Polynomial(tuple(rng.uniform(-1.5, 1.5, n)))
        alpha = tuple(rng.uniform(-0.5, 0.5, n))
        beta = tuple(rng.uniform(0.2, 1.0, n - 1))
        q = monomial_to_orthogonal(p, alpha, beta)
        for x in rng.uniform(-2.0, 2.0, 20):
            ref = evaluate(p, float(x))
            got = evaluate(q, float(x))
            assert abs(got - ref) <= 1e-10 * max(abs(ref), 1.0)

    def test_matches_direct_expansion_from_roots(self):
        rts = np.array([0.4, 1.1, 2.2, 3.3])
        alpha, beta = chebyshev2_scaled_basis(-0.6, 4.3, 4)
        via_monomial = monomial_to_orthogonal(monic_from_roots(rts), alpha, beta)
        direct = orthogonal_from_roots(rts, alpha, beta)
        npt.assert_allclose(via_monomial.coeffs, direct.coeffs,
                            rtol=1e-9, atol=1e-12)


class TestPairing:
    def test_relative_error(self):
        assert pair_relative_error([1.0, 2.0], [2.0 + 2e-3, 1.0]) == pytest.approx(1e-3)

    def test_zero_root_uses_absolute(self):
        assert pair_relative_error([0.0, 1.0], [1e-4, 1.0]) == pytest.approx(1e-4)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            pair_relative_error([1.0], [1.0, 2.0])
