import random

import mpmath as mp
import pytest

from expspan import (DomainError, Interval, MultiplicitySequence,
                     PrecisionContext, ProductKind, blaschke_eval,
                     derivative_factor, eval_product, fixture, gnk_eval,
                     laurent_coeffs, lk_circle_minima, lk_eval, lk_function,
                     lk_schedule, taylor_coeffs)


def central_diff(f, c, order, h):
    """Plain central finite differences, orders 0..2."""
    if order == 0:
        return f(c)
    if order == 1:
        return (f(c + h) - f(c - h)) / (2 * h)
    return (f(c + h) - 2 * f(c) + f(c - h)) / (h * h)


class TestEvalProduct:
    def test_all_kinds_one_at_origin(self, squares8):
        for kind in ProductKind:
            assert eval_product(kind, squares8, 8, 0) == 1

    def test_exact_zero_at_frequency(self, squares8):
        assert eval_product(ProductKind.F_PLAIN, squares8, 8, squares8.lam(1)) == 0
        assert eval_product(ProductKind.F_EVEN, squares8, 8, -squares8.lam(2)) == 0
        assert eval_product(ProductKind.L_EVEN, squares8, 8, 1j * squares8.lam(3)) == 0

    def test_hand_product(self, squares8):
        got = eval_product(ProductKind.F_PLAIN, squares8, 2, 2)
        assert abs(got - mp.mpf(-0.5)) < mp.mpf("1e-55")

    def test_multiplicities_enter_as_powers(self):
        seq = fixture("example_v", 2)  # (3, mu=2), (9, mu=4)
        got = eval_product(ProductKind.G_ABS, seq, 2, 1)
        want = (mp.mpf(4) / 3) ** 2 * (mp.mpf(10) / 9) ** 4
        assert abs(got - want) < mp.mpf("1e-55")


class TestDerivativeFactor:
    def test_two_point_hand_value(self):
        seq = MultiplicitySequence.from_pairs([(1, 1), (2, 1)])
        got = derivative_factor(seq, 2, 1)
        assert abs(got - mp.mpf("-0.5")) < mp.mpf("1e-55")

    def test_single_entry(self):
        seq = MultiplicitySequence.from_pairs([(mp.mpc(2, 1), 1)])
        got = derivative_factor(seq, 1, 1)
        assert abs(got + 1 / mp.mpc(2, 1)) < mp.mpf("1e-55")

    def test_never_vanishes(self, squares8):
        for n in range(1, 9):
            assert abs(derivative_factor(squares8, 8, n)) > 0
            assert abs(derivative_factor(squares8, 8, n, ProductKind.F_EVEN)) > 0

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_matches_numerical_derivative(self, seed):
        # oracle: mu_n-th central difference of the product itself, run at
        # half the working digits
        rng = random.Random(seed)
        mus = [rng.choice([1, 2]) for _ in range(4)]
        lams = [mp.mpf(n) * mp.mpf("1.5") + rng.random() for n in range(1, 5)]
        seq = MultiplicitySequence.from_pairs(list(zip(lams, mus)))
        n = rng.randrange(1, 5)
        mu = seq.mu(n)
        with mp.workdps(mp.mp.dps // 2):
            h = mp.mpf(10) ** (-mp.mp.dps // 4)
            f = lambda z: eval_product(ProductKind.F_PLAIN, seq, 4, z)
            num = central_diff(f, seq.lam(n), mu, h) / mp.factorial(mu)
        got = derivative_factor(seq, 4, n)
        assert abs(got - num) < mp.mpf(10) ** (-mp.mp.dps // 4)


class TestTaylorCoeffs:
    def test_constant_term_is_one(self, squares8):
        for kind in ProductKind:
            assert abs(taylor_coeffs(kind, squares8, 6, 4)[0] - 1) < mp.mpf("1e-55")

    def test_linear_coefficient_is_minus_sum(self):
        seq = fixture("example_v", 3)
        c = taylor_coeffs(ProductKind.F_PLAIN, seq, 3, 2)
        want = -sum(mp.mpf(seq.mu(n)) / seq.lam(n) for n in range(1, 4))
        assert abs(c[1] - want) < mp.mpf("1e-50")

    def test_abs_kind_all_positive(self):
        seq = fixture("example_v", 3)
        c = taylor_coeffs(ProductKind.G_ABS, seq, 3, 14)
        deg = seq.total_multiplicity(3)
        assert all(v > 0 for v in c[:deg + 1])
        assert all(v == 0 for v in c[deg + 1:])

    def test_polynomial_matches_product(self, squares8):
        rng = random.Random(3)
        deg = squares8.total_multiplicity(6)
        for kind in (ProductKind.F_PLAIN, ProductKind.L_EVEN):
            mult = 2 if kind is ProductKind.L_EVEN else 1
            c = taylor_coeffs(kind, squares8, 6, mult * deg)
            for _ in range(10):
                z = mp.mpc(rng.uniform(-1, 1), rng.uniform(-1, 1)) * abs(squares8.lam(6)) / 2
                poly = mp.polyval(list(reversed(c)), z)
                direct = eval_product(kind, squares8, 6, z)
                scale = max(1, abs(direct))
                assert abs(poly - direct) / scale < mp.mpf(10) ** (-mp.mp.dps // 2)


class TestLKSchedule:
    def test_geometric_halving(self):
        eps = lk_schedule(Interval(-1, 1), 3)
        assert eps == [mp.mpf("0.5"), mp.mpf("0.25"), mp.mpf("0.125")]
        assert sum(eps) == mp.mpf("0.875")

    def test_sum_approaches_half_length(self):
        iv = Interval(0, 1)
        total = sum(lk_schedule(iv, 40))
        assert abs(total - iv.tau) < mp.mpf("1e-11")
        assert total < iv.tau


class TestLKEval:
    @pytest.fixture
    def lk(self, squares8, unit_interval):
        ctx = PrecisionContext(digits=60, trunc_N=6, cos_K=8)
        return lk_function(squares8, unit_interval, ctx)

    def test_value_one_at_origin(self, lk):
        assert lk_eval(lk, 0) == 1

    def test_exact_zero_on_rotated_frequencies(self, lk):
        for n in range(1, 7):
            assert lk_eval(lk, 1j * lk.seq.lam(n)) == 0

    def test_real_axis_symmetry(self, lk):
        # even product and cosines are even; only the phase factor breaks
        # symmetry, so |G(-x)| = |G(x)| on the real axis
        for x in ("0.7", "2.3", "11.5"):
            x = mp.mpf(x)
            assert abs(abs(lk_eval(lk, x)) - abs(lk_eval(lk, -x))) < mp.mpf("1e-50")

    def test_cosine_window_mean_square_decays(self, lk):
        # finite-scale shadow of the damping mechanism: the mean square of
        # the cosine window over [X, 2X] keeps dropping as X doubles
        def window(x):
            return mp.fprod([mp.cos(e * x) for e in lk.epsilons])

        means = []
        for X in (4, 8, 16, 32, 64):
            s = mp.fsum(window(X + (X * q) / 64) ** 2 for q in range(64)) / 64
            means.append(s)
        assert all(means[i + 1] < means[i] for i in range(len(means) - 1))

    def test_circle_minima_positive(self, lk):
        minima = lk_circle_minima(lk, "0.1", [1, 2, 3, 4], samples=48)
        assert all(m.min_abs > 0 for m in minima)
        assert all(m.fitted_const > 0 for m in minima)


class TestLaurent:
    @pytest.fixture
    def setup(self):
        seq = MultiplicitySequence.from_pairs(
            [(1, 2), (mp.mpf("2.5"), 1), (mp.mpf("4.5"), 2)], "mixed-mu")
        ctx = PrecisionContext(digits=120, trunc_N=3, cos_K=6)
        lk = lk_function(seq, Interval(0, 1), ctx)
        return seq, lk

    def test_node_doubling_converges(self, setup):
        seq, lk = setup
        with mp.workdps(120):
            for n in (1, 2, 3):
                lc = laurent_coeffs(lk, n, "0.1", seq.mu(n), 64)
                assert lc.converged, f"n={n} moved {lc.max_rel_change}"
                assert lc.max_rel_change < mp.mpf("1e-30")

    def test_simple_pole_residue(self, setup):
        # A_1 at a simple zero must equal 1/G'(i lambda_n)
        seq, lk = setup
        with mp.workdps(120):
            lc = laurent_coeffs(lk, 2, "0.1", 1, 64)
            c = 1j * seq.lam(2)
            h = mp.mpf(10) ** -40
            gp = (lk_eval(lk, c + h) - lk_eval(lk, c - h)) / (2 * h)
            assert abs(lc.values[0] * gp - 1) < mp.mpf("1e-35")

    def test_analytic_integrand_integrates_to_zero(self, setup):
        # quadrature sanity: replacing 1/G by G kills every moment
        seq, lk = setup
        with mp.workdps(120):
            r = laurent_coeffs(lk, 1, "0.1", 1, 64).radius
            c = 1j * seq.lam(1)
            Q = 64
            s = mp.mpc(0)
            for q in range(Q):
                z = c + r * mp.exp(2j * mp.pi * q / Q)
                s += lk_eval(lk, z) * mp.exp(2j * mp.pi * q / Q)
            assert abs(r * s / Q) < mp.mpf("1e-80")

    def test_bound_constants_within_spread(self):
        # |A_{n,1}| e^((beta-eps) Re lambda_n) stays within one order of
        # magnitude across the first frequencies for a tame fixture
        seq = fixture("power", 8, exponent=1.5)
        ctx = PrecisionContext(digits=80, trunc_N=8)
        lk = lk_function(seq, Interval(0, 1), ctx)
        with mp.workdps(80):
            consts = []
            for n in range(1, 5):
                lc = laurent_coeffs(lk, n, "0.1", 1, 64)
                consts.append(abs(lc.values[0])
                              * mp.exp((mp.mpf(1) - mp.mpf("0.1")) * mp.re(seq.lam(n))))
        assert max(consts) / min(consts) < 15


class TestGnk:
    @pytest.fixture
    def setup(self):
        seq = MultiplicitySequence.from_pairs(
            [(1, 2), (mp.mpf("2.5"), 1), (mp.mpf("4.5"), 2)], "mixed-mu")
        ctx = PrecisionContext(digits=120, trunc_N=3, cos_K=6)
        lk = lk_function(seq, Interval(0, 1), ctx)
        laurents = {n: laurent_coeffs(lk, n, "0.1", seq.mu(n), 64)
                    for n in (1, 2, 3)}
        return seq, lk, laurents

    def test_interpolation_identity_matrix(self, setup):
        # derivative l at i lambda_m of G_{n,k} is delta_{(m,l),(n,k)},
        # checked by central differences at step 1e-20
        seq, lk, laurents = setup
        idx = [(n, k) for n in (1, 2, 3) for k in range(seq.mu(n))]
        with mp.workdps(120):
            h = mp.mpf(10) ** -20
            worst = mp.mpf(0)
            for (n, k) in idx:
                f = lambda z: gnk_eval(lk, laurents[n], n, k, z)
                for (m, l) in idx:
                    got = central_diff(f, 1j * seq.lam(m), l, h)
                    want = 1 if (m, l) == (n, k) else 0
                    worst = max(worst, abs(got - want))
        assert worst < mp.mpf(10) ** -30

    def test_center_values(self, setup):
        seq, lk, laurents = setup
        assert gnk_eval(lk, laurents[1], 1, 0, 1j * seq.lam(1)) == 1
        assert gnk_eval(lk, laurents[1], 1, 1, 1j * seq.lam(1)) == 0

    def test_other_zeros_exact(self, setup):
        seq, lk, laurents = setup
        assert gnk_eval(lk, laurents[1], 1, 0, 1j * seq.lam(2)) == 0

    def test_simple_zero_closed_form(self, setup):
        # for mu_n = 1: G_{n,0}(z) = G(z) / ((z - i lambda_n) G'(i lambda_n))
        seq, lk, laurents = setup
        with mp.workdps(120):
            c = 1j * seq.lam(2)
            h = mp.mpf(10) ** -40
            gp = (lk_eval(lk, c + h) - lk_eval(lk, c - h)) / (2 * h)
            z = mp.mpc("0.3", "2.1")
            want = lk_eval(lk, z) / ((z - c) * gp)
            got = gnk_eval(lk, laurents[2], 2, 0, z)
            assert abs(got - want) < mp.mpf("1e-35")

    def test_inside_disk_needs_full_principal_part(self, setup):
        seq, lk, laurents = setup
        partial = laurent_coeffs(lk, 1, "0.1", 1, 32)  # J < mu_1
        z = 1j * seq.lam(1) + partial.radius / 2
        with pytest.raises(DomainError):
            gnk_eval(lk, partial, 1, 0, z)


class TestBlaschke:
    def test_zero_at_frequency(self, squares8):
        assert blaschke_eval(squares8, 8, squares8.lam(1)) == 0

    def test_origin_value(self, squares8):
        got = blaschke_eval(squares8, 8, 0)
        assert abs(got - mp.mpf(1) / 16) < mp.mpf("1e-55")

    def test_pole_region_refused(self, squares8):
        with pytest.raises(DomainError):
            blaschke_eval(squares8, 8, -4)
        with pytest.raises(DomainError):
            blaschke_eval(squares8, 8, mp.mpc(-5, 2))

    def test_decay_weight_bounded_on_grid(self, squares8):
        # sup |f(z)| (1 + Im(z)^2) over a right half-plane grid stays finite
        # and is reported as a fitted constant
        vals = []
        for re in ("-2", "0", "3", "10"):
            for im in ("-40", "-5", "0", "5", "40"):
                z = mp.mpc(re, im)
                vals.append(abs(blaschke_eval(squares8, 8, z)) * (1 + mp.im(z) ** 2))
        assert max(vals) < mp.mpf(10) ** 6
