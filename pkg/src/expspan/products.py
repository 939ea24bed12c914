"""Entire and meromorphic functions built from a frequency sequence.

Truncated canonical products (four kinds), removed-factor derivatives,
exact Maclaurin coefficients, the windowed even product with cosine
damping (zeros at i*lambda_n), Laurent coefficients of its reciprocal on
small circles, the interpolation functions built from them, and a
Blaschke-type quotient analytic right of Re z = -4.

All truncated products are polynomials (times bounded factors), so growth
statements become fitted-constant trend checks rather than type bounds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import mpmath as mp

from .core import (Interval, MultiplicitySequence, PrecisionContext,
                   fitted_separation_constant, separation_disk_radius)
from .errors import DomainError


class ProductKind(enum.Enum):
    """Factor shapes: which set the truncated product vanishes on.

    F_PLAIN  prod (1 - z/lambda_n)^mu_n      zeros on the sequence
    G_ABS    prod (1 + z/|lambda_n|)^mu_n    zeros on -|lambda_n|
    F_EVEN   prod (1 - z^2/lambda_n^2)^mu_n  zeros on +-lambda_n
    L_EVEN   prod (1 + z^2/lambda_n^2)^mu_n  zeros on +-i lambda_n
    """

    F_PLAIN = "F"
    G_ABS = "G"
    F_EVEN = "F_even"
    L_EVEN = "L_even"


def _factor_base(kind: ProductKind, lam, z):
    if kind is ProductKind.F_PLAIN:
        return 1 - z / lam
    if kind is ProductKind.G_ABS:
        return 1 + z / abs(lam)
    if kind is ProductKind.F_EVEN:
        return 1 - z * z / (lam * lam)
    return 1 + z * z / (lam * lam)


def eval_product(kind: ProductKind, seq: MultiplicitySequence, N: int, z) -> mp.mpc:
    """Finite product over the prefix, factors in modulus-increasing order.

    Hitting a zero of the truncated product short-circuits to exact 0.
    """
    seq.check_prefix(N)
    z = mp.mpc(z)
    acc = mp.mpc(1)
    for n in range(1, N + 1):
        base = _factor_base(kind, seq.lam(n), z)
        if base == 0:
            return mp.mpc(0)
        acc *= base ** seq.mu(n)
    return acc


def derivative_factor(seq: MultiplicitySequence, N: int, n: int,
                      kind: ProductKind = ProductKind.F_PLAIN) -> mp.mpc:
    """Removed-factor value of F^(mu_n)(lambda_n) / mu_n! for the truncated product.

    F_PLAIN: (-1/lambda_n)^mu_n * prod_{j != n} (1 - lambda_n/lambda_j)^mu_j
    F_EVEN:  (-2/lambda_n)^mu_n * prod_{j != n} (1 - lambda_n^2/lambda_j^2)^mu_j

    No numerical differentiation is involved; for a valid sequence the value
    is never zero because every remaining factor is nonzero.
    """
    seq.check_prefix(N)
    if not 1 <= n <= N:
        raise ValueError(f"n={n} outside prefix 1..{N}")
    if kind not in (ProductKind.F_PLAIN, ProductKind.F_EVEN):
        raise ValueError("removed-factor derivative defined for F_PLAIN and F_EVEN")
    lam, mu = seq.lam(n), seq.mu(n)
    if kind is ProductKind.F_PLAIN:
        acc = (-1 / lam) ** mu
    else:
        acc = (-2 / lam) ** mu
    for j in range(1, N + 1):
        if j == n:
            continue
        acc *= _factor_base(kind, seq.lam(j), lam) ** seq.mu(j)
    return acc


def _factor_coeffs(kind: ProductKind, lam, mu: int) -> list[mp.mpc]:
    """Polynomial coefficients of one factor, ascending powers of z."""
    if kind is ProductKind.F_PLAIN:
        r, step = -1 / lam, 1
    elif kind is ProductKind.G_ABS:
        r, step = 1 / abs(lam), 1
    elif kind is ProductKind.F_EVEN:
        r, step = -1 / (lam * lam), 2
    else:
        r, step = 1 / (lam * lam), 2
    out = [mp.mpc(0)] * (mu * step + 1)
    for j in range(mu + 1):
        out[j * step] = mp.binomial(mu, j) * r ** j
    return out


def taylor_coeffs(kind: ProductKind, seq: MultiplicitySequence, N: int, M: int,
                  ctx: PrecisionContext | None = None) -> list[mp.mpc]:
    """First M+1 Maclaurin coefficients of the truncated product.

    The truncated product is a polynomial; coefficients beyond its degree
    are exactly zero.  For G_ABS every returned coefficient is positive.
    """
    seq.check_prefix(N)
    if M < 1:
        raise ValueError("M must be >= 1")
    dps = (ctx.digits if ctx else mp.mp.dps) + 10
    with mp.workdps(dps):
        acc = [mp.mpc(1)]
        for n in range(1, N + 1):
            fac = _factor_coeffs(kind, seq.lam(n), seq.mu(n))
            new = [mp.mpc(0)] * min(len(acc) + len(fac) - 1, M + 1)
            for i, a in enumerate(acc):
                if i > M:
                    break
                for j, b in enumerate(fac):
                    if i + j > M:
                        break
                    new[i + j] += a * b
            acc = new
        acc += [mp.mpc(0)] * (M + 1 - len(acc))
    if kind is ProductKind.G_ABS:
        acc = [mp.re(c) for c in acc]
    return acc


def lk_schedule(interval: Interval, K: int) -> list[mp.mpf]:
    """Cosine half-width schedule eps_k = tau * 2^-k, k = 1..K.

    Decreasing, with partial sum tau(1 - 2^-K) < tau; the full series sums
    to tau, which fixes the exponential width of the cosine window.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    tau = interval.tau
    return [tau * mp.mpf(2) ** (-k) for k in range(1, K + 1)]


@dataclass(frozen=True)
class LKFunction:
    """Windowed even product G(z) = e^(-i sigma z) L(z) prod cos(eps_k z).

    L is the L_EVEN product over the prefix, so G vanishes exactly at
    +-i lambda_n for n <= trunc_N.  sigma and the schedule come from the
    target interval.
    """

    seq: MultiplicitySequence
    interval: Interval
    epsilons: tuple[mp.mpf, ...]
    trunc_N: int
    cos_K: int

    def __post_init__(self):
        self.seq.check_prefix(self.trunc_N)
        eps = self.epsilons
        if any(eps[i] <= eps[i + 1] for i in range(len(eps) - 1)):
            raise ValueError("cosine schedule must be strictly decreasing")
        if not sum(eps) <= self.interval.tau:
            raise ValueError("cosine schedule must sum to at most tau")


def lk_function(seq: MultiplicitySequence, interval: Interval,
                ctx: PrecisionContext) -> LKFunction:
    seq.check_prefix(ctx.trunc_N)  # no silent truncation downgrade
    return LKFunction(seq=seq, interval=interval,
                      epsilons=tuple(lk_schedule(interval, ctx.cos_K)),
                      trunc_N=ctx.trunc_N, cos_K=ctx.cos_K)


def lk_eval(lk: LKFunction, z) -> mp.mpc:
    """Evaluate the windowed product; exact zero at z = i lambda_n."""
    z = mp.mpc(z)
    for n in range(1, lk.trunc_N + 1):
        if z == 1j * lk.seq.lam(n) or z == -1j * lk.seq.lam(n):
            return mp.mpc(0)
    val = mp.exp(-1j * lk.interval.sigma * z)
    val *= eval_product(ProductKind.L_EVEN, lk.seq, lk.trunc_N, z)
    for e in lk.epsilons:
        val *= mp.cos(e * z)
    return val


@dataclass(frozen=True)
class CircleMinimum:
    """min |G| over the circle about i lambda_n, with the compensated constant
    min|G| * exp(-(beta - eps) Re lambda_n)."""

    n: int
    radius: mp.mpf
    min_abs: mp.mpf
    fitted_const: mp.mpf


def lk_circle_minima(lk: LKFunction, eps, ns: list[int], samples: int = 96,
                     m_eps=None) -> list[CircleMinimum]:
    """Sampled minima of |G| on the separation circles about i lambda_n.

    The compensated constants are the finite-scale shadow of the circle
    lower bound; their infimum over n is the fitted constant.
    """
    eps = mp.mpf(eps)
    if m_eps is None:
        m_eps = fitted_separation_constant(lk.seq, lk.trunc_N, eps)
    beta = lk.interval.beta
    out = []
    for n in ns:
        lam = lk.seq.lam(n)
        r = separation_disk_radius(lk.seq, lk.trunc_N, eps, n, m_eps=m_eps)
        c = 1j * lam
        mn = min(abs(lk_eval(lk, c + r * mp.exp(2j * mp.pi * q / samples)))
                 for q in range(samples))
        out.append(CircleMinimum(n=n, radius=r, min_abs=mn,
                                 fitted_const=mn * mp.exp(-(beta - eps) * mp.re(lam))))
    return out


@dataclass(frozen=True)
class LaurentCoeffs:
    """Principal-part coefficients of 1/G about the pole i lambda_n.

    values[j-1] is the coefficient of (z - i lambda_n)^-j, j = 1..J.
    converged reports the node-doubling check; a False value means the
    quadrature moved by more than tol and must not be trusted silently.
    """

    n: int
    values: tuple[mp.mpc, ...]
    eps: mp.mpf
    radius: mp.mpf
    quad_Q: int
    converged: bool
    max_rel_change: mp.mpf


def _contour_moments(lk: LKFunction, center, radius, J: int, Q: int) -> list[mp.mpc]:
    # trapezoid on the circle: spectrally accurate for periodic analytic data
    vals = []
    nodes = [center + radius * mp.exp(2j * mp.pi * q / Q) for q in range(Q)]
    gvals = [lk_eval(lk, z) for z in nodes]
    for j in range(1, J + 1):
        s = mp.mpc(0)
        for q, g in enumerate(gvals):
            s += mp.exp(2j * mp.pi * q * j / Q) / g
        vals.append(radius ** j * s / Q)
    return vals


def laurent_coeffs(lk: LKFunction, n: int, eps, J: int, quad_Q: int,
                   tol=None, m_eps=None) -> LaurentCoeffs:
    """Contour quadrature for the principal part of 1/G at i lambda_n.

    Runs the trapezoid rule at quad_Q and 2*quad_Q nodes; the relative
    movement between the two is reported and gates `converged`.
    """
    lk.seq.check_prefix(n)
    mu = lk.seq.mu(n)
    if not 1 <= J <= mu:
        raise ValueError(f"J={J} must be in 1..mu_n={mu}")
    eps = mp.mpf(eps)
    tol = mp.mpf(tol) if tol is not None else mp.mpf("1e-30")
    r = separation_disk_radius(lk.seq, lk.trunc_N, eps, n, m_eps=m_eps)
    center = 1j * lk.seq.lam(n)
    coarse = _contour_moments(lk, center, r, J, quad_Q)
    fine = _contour_moments(lk, center, r, J, 2 * quad_Q)
    worst = mp.mpf(0)
    for a, b in zip(coarse, fine):
        scale = max(abs(b), mp.mpf(1e-300))
        worst = max(worst, abs(a - b) / scale)
    return LaurentCoeffs(n=n, values=tuple(fine), eps=eps, radius=r,
                         quad_Q=quad_Q, converged=bool(worst < tol),
                         max_rel_change=worst)


def gnk_eval(lk: LKFunction, laurent: LaurentCoeffs, n: int, k: int, z) -> mp.mpc:
    """Interpolation function G_{n,k}(z) = (G(z)/k!) sum_l A_{k+l} (z - i lambda_n)^-l.

    Outside the separation disk the defining sum is used directly.  Inside,
    the pole of 1/G makes that form singular, so the regular-part rewrite is
    used instead; it needs the full principal part (J = mu_n).
    """
    if n != laurent.n:
        raise ValueError("laurent coefficients belong to a different n")
    mu = lk.seq.mu(n)
    if not 0 <= k < mu:
        raise ValueError(f"k={k} must be < mu_n={mu}")
    z = mp.mpc(z)
    center = 1j * lk.seq.lam(n)
    w = z - center
    A = laurent.values
    if abs(w) >= laurent.radius:
        g = lk_eval(lk, z)
        s = mp.mpc(0)
        for l in range(1, mu - k + 1):
            s += A[k + l - 1] / w ** l
        return g * s / mp.factorial(k)
    if len(A) < mu:
        raise DomainError(
            "evaluation inside the separation disk needs the full principal part "
            f"(have J={len(A)}, need mu_n={mu})")
    if w == 0:
        return mp.mpc(1) if k == 0 else mp.mpc(0)
    g = lk_eval(lk, z)
    principal = sum(A[j - 1] / w ** j for j in range(1, mu + 1))
    regular = 1 / g - principal
    # (z-c)^k/k! - G (z-c)^k p_n(z)/k! - (G/k!) sum_{j<=k} A_j (z-c)^(k-j)
    val = w ** k / mp.factorial(k)
    val -= g * w ** k * regular / mp.factorial(k)
    val -= g / mp.factorial(k) * sum(A[j - 1] * w ** (k - j) for j in range(1, k + 1))
    return val


def blaschke_eval(seq: MultiplicitySequence, N: int, z) -> mp.mpc:
    """Quotient (4+z)^-2 prod ((1 - z/lambda_n)/(1 + z/(conj(lambda_n)+4)))^mu_n.

    Analytic for Re z > -4; evaluation is refused at or left of the pole
    line.  Vanishes exactly at the truncated frequencies.
    """
    seq.check_prefix(N)
    z = mp.mpc(z)
    if not mp.re(z) > -4:
        raise DomainError(f"Re z = {mp.nstr(mp.re(z), 8)} must be > -4")
    acc = (4 + z) ** -2
    for n in range(1, N + 1):
        lam, mu = seq.lam(n), seq.mu(n)
        num = 1 - z / lam
        if num == 0:
            return mp.mpc(0)
        acc *= (num / (1 + z / (mp.conj(lam) + 4))) ** mu
    return acc
