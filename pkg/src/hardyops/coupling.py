"""Coupling-constant layer for half-space Hardy operators.

Parameterizes the operator family by the boundary-decay exponent p: the
coupling function C(p), its inverse p(lambda), the sharp Hardy constant
lambda_star, the nonlocal-form normalization A(d, -alpha), the comparison
constant lambda_zero, and an auxiliary one-dimensional integral gamma(alpha, p)
available both as a quadrature and in closed form.

Conventions: alpha in (0, 2] is the operator order, lambda the coupling.  The
principal branch of C is the increasing one on [(alpha-1)/2, M) with M = alpha
for alpha < 2 and M = +inf for alpha = 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from hardyops.specfun import DomainError, _sinpi, gamma_signed, ln_gamma

# Coupling values computed by callers incur rounding near lambda_star; accept
# them within this absolute slack instead of rejecting.
LAMBDA_SLACK = 1e-12


def branch_upper(alpha: float) -> float:
    """Upper end M of the principal exponent branch."""
    return alpha if alpha < 2.0 else math.inf


def _check_alpha(alpha: float, include_two: bool) -> None:
    hi_ok = alpha <= 2.0 if include_two else alpha < 2.0
    if not (0.0 < alpha and hi_ok):
        rng = "(0, 2]" if include_two else "(0, 2)"
        raise DomainError(f"alpha must lie in {rng}, got {alpha!r}")


def normalization_A(d: int, alpha: float) -> float:
    """Normalization constant A(d, -alpha) of the nonlocal quadratic form."""
    if d < 1 or d != int(d):
        raise DomainError(f"d must be a positive integer, got {d!r}")
    _check_alpha(alpha, include_two=False)
    log_val = (
        math.log(alpha)
        - (1.0 - alpha) * math.log(2.0)
        - 0.5 * d * math.log(math.pi)
        + ln_gamma(0.5 * (d + alpha))
        - ln_gamma(1.0 - 0.5 * alpha)
    )
    return math.exp(log_val)


def normalization_A1_reduced(alpha: float) -> float:
    """One-dimensional reduced form sin(pi*alpha/2) * Gamma(alpha+1) / pi."""
    _check_alpha(alpha, include_two=False)
    return _sinpi(0.5 * alpha) * math.exp(ln_gamma(alpha + 1.0)) / math.pi


def lambda_star(alpha: float) -> float:
    """Sharp Hardy constant; depends on alpha only.  Exactly -1/4 at alpha=2."""
    _check_alpha(alpha, include_two=True)
    if alpha == 2.0:
        return -0.25
    g = math.exp(ln_gamma(0.5 * (1.0 + alpha)))
    return -(g / math.pi) * (g - 2.0 ** (alpha - 1.0) * math.sqrt(math.pi)
                             / gamma_signed(1.0 - 0.5 * alpha))


def coupling_C(alpha: float, p: float) -> float:
    """Coupling function C(p) on the branch domain (-1, M).

    The product Gamma(alpha-p) * sin(pi(2p-alpha)/2) is rewritten through the
    reflection formula whenever alpha - p < 1/2; that removes the pole/zero
    pairs exactly (in particular the alpha = 2 line, where C(p) = p(p-1)).
    """
    _check_alpha(alpha, include_two=True)
    if not (-1.0 < p < branch_upper(alpha)):
        raise DomainError(f"p must lie in (-1, M) with M={branch_upper(alpha)}, got {p!r}")
    first = math.exp(ln_gamma(alpha)) * _sinpi(0.5 * alpha)
    if alpha - p >= 0.5:
        second = math.exp(ln_gamma(1.0 + p) + ln_gamma(alpha - p)) * _sinpi(p - 0.5 * alpha)
    else:
        s_num = _sinpi(p - 0.5 * alpha)
        s_den = _sinpi(alpha - p)
        if s_den == 0.0:
            # Only reachable for alpha = 2 at integer p: removable, ratio -> 1.
            ratio = 1.0
        else:
            ratio = s_num / s_den
        second = math.pi * math.exp(ln_gamma(1.0 + p) - ln_gamma(1.0 - alpha + p)) * ratio
    return (first + second) / math.pi


def gamma_integral(alpha: float, p: float) -> float:
    """gamma(alpha, p) as a quadrature of its defining integral on (0, 1).

    Uses the substitution t = 1 - u; the integrand is O(u^{1-alpha}) at u = 0,
    which the adaptive rule integrates directly.  Absolute error <= 1e-9.
    """
    _check_alpha(alpha, include_two=False)
    if not (-1.0 < p < alpha):
        raise DomainError(f"p must lie in (-1, alpha), got {p!r}")
    b = alpha - p - 1.0

    def f_t(t: float) -> float:
        # original variable, singular only at t -> 0 (when p < 0 or b < 0)
        return (t ** p - 1.0) * (1.0 - t ** b) / (1.0 - t) ** (1.0 + alpha)

    def f_u(u: float) -> float:
        # t = 1 - u; the factors vanish like u at u -> 0, so evaluate them
        # through expm1 to keep the O(u^{1-alpha}) integrand noise-free
        lw = math.log1p(-u)
        return -math.expm1(p * lw) * math.expm1(b * lw) / u ** (1.0 + alpha)

    # full_output=1 accepts the extrapolated value when QAGS reports that the
    # requested tolerance sits below the attainable roundoff floor; achieved
    # accuracy (~1e-12, budget 1e-9) is pinned down by the oracle tests.
    lower = quad(f_t, 0.0, 0.5, limit=200, epsabs=1e-11, epsrel=1e-11, full_output=1)[0]
    upper = quad(f_u, 0.0, 0.5, limit=200, epsabs=1e-11, epsrel=1e-11, full_output=1)[0]
    return lower + upper


def gamma_closed(alpha: float, p: float) -> float:
    """Closed form of gamma(alpha, p) for alpha != 1.

    Both Gamma ratios are folded into a single pole-free product
    Gamma(1+p) Gamma(alpha-p) (sin(pi(p-alpha)) + sin(pi p)) / pi, so the
    expression is stable on the whole domain.
    """
    _check_alpha(alpha, include_two=False)
    if alpha == 1.0:
        raise DomainError("gamma_closed is singular at alpha = 1; use gamma_integral")
    if not (-1.0 < p < alpha):
        raise DomainError(f"p must lie in (-1, alpha), got {p!r}")
    combo = math.exp(ln_gamma(1.0 + p) + ln_gamma(alpha - p)) \
        * (_sinpi(p - alpha) + _sinpi(p)) / math.pi
    return 1.0 / alpha + gamma_signed(1.0 - alpha) * combo / alpha


def exponent_p(alpha: float, lam: float) -> float:
    """Unique p in [(alpha-1)/2, M) with C(p) = lam, on the increasing branch.

    Bracketed bisection down to width 1e-3, then safeguarded Newton with a
    numerically differentiated C.  Residual |C(p) - lam| <= 1e-10 max(1,|lam|).
    """
    _check_alpha(alpha, include_two=True)
    lstar = lambda_star(alpha)
    if lam < lstar - LAMBDA_SLACK:
        raise DomainError(f"lambda={lam!r} below the sharp constant {lstar!r}")
    p_lo = 0.5 * (alpha - 1.0)
    if lam <= lstar:
        return p_lo
    # Geometric bracket growth until C exceeds lam.
    if alpha == 2.0:
        p_hi = p_lo + 1.0
        for _ in range(200):
            if coupling_C(alpha, p_hi) >= lam:
                break
            p_hi = 2.0 * p_hi + 1.0
        else:
            raise DomainError(f"failed to bracket p for lambda={lam!r}")
    else:
        gap = min(1e-3, 0.05 * (alpha + 1.0))
        p_hi = alpha - gap
        for _ in range(200):
            if coupling_C(alpha, p_hi) >= lam:
                break
            gap /= 16.0
            p_hi = alpha - gap
        else:
            raise DomainError(f"failed to bracket p for lambda={lam!r}")
    lo, hi = p_lo, p_hi
    while hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        if coupling_C(alpha, mid) < lam:
            lo = mid
        else:
            hi = mid
    tol = 1e-13 * max(1.0, abs(lam))
    p = 0.5 * (lo + hi)
    for _ in range(80):
        f = coupling_C(alpha, p) - lam
        if abs(f) <= tol:
            break
        if f < 0.0:
            lo = p
        else:
            hi = p
        h = 1e-7 * (1.0 + abs(p))
        if alpha < 2.0:
            h = min(h, 0.25 * (alpha - p))
        h = min(h, 0.25 * (p + 1.0))
        df = (coupling_C(alpha, p + h) - coupling_C(alpha, p - h)) / (2.0 * h)
        step_ok = df > 0.0 and math.isfinite(df)
        p_new = p - f / df if step_ok else 0.5 * (lo + hi)
        if not (lo < p_new < hi):
            p_new = 0.5 * (lo + hi)
        if p_new == p:
            break
        p = p_new
    return p


def lambda_zero(d: int, alpha: float) -> float:
    """Comparison constant lambda_0 > 0 for alpha in (0, 2).

    Defined through the exterior integral of the nonlocal kernel over the
    reflected half-space; reduces to a Beta-type one-dimensional integral and
    is independent of d.  For d = 1 this is sin(pi alpha/2) Gamma(alpha) / pi.
    """
    if d < 1 or d != int(d):
        raise DomainError(f"d must be a positive integer, got {d!r}")
    _check_alpha(alpha, include_two=False)
    if d == 1:
        return normalization_A(1, alpha) / alpha
    # Transverse directions integrate to |S^{d-2}|/2 * B((alpha+1)/2, (d-1)/2).
    sphere = 2.0 * math.pi ** (0.5 * (d - 1)) / math.exp(ln_gamma(0.5 * (d - 1)))
    bfac = math.exp(ln_gamma(0.5 * (alpha + 1.0)) + ln_gamma(0.5 * (d - 1))
                    - ln_gamma(0.5 * (alpha + d)))
    return normalization_A(d, alpha) * 0.5 * sphere * bfac / alpha


@dataclass(frozen=True)
class DerivedExponents:
    """Secondary exponents attached to a coupling choice."""

    q: float   # min(p, (alpha-1)_+), the difference-kernel exponent
    r: float   # -min(q, 0) >= 0
    p0: float  # exponent of the lambda = 0 comparison operator


@dataclass(frozen=True)
class CouplingParams:
    """Validated parameter triple (d, alpha, lambda) with derived quantities."""

    d: int
    alpha: float
    lam: float
    p: float
    lambda_star: float
    lambda_zero: float | None

    @property
    def derived(self) -> DerivedExponents:
        p0 = max(self.alpha - 1.0, 0.0)
        q = min(self.p, p0)
        return DerivedExponents(q=q, r=max(-q, 0.0), p0=p0)

    def check(self) -> None:
        """Re-verify the defining relations (used by tests and the CLI)."""
        resid = abs(coupling_C(self.alpha, self.p) - self.lam)
        tol = 1e-10 * max(1.0, abs(self.lam)) if self.lam != 0.0 else 1e-12
        if resid > tol and self.p > 0.5 * (self.alpha - 1.0):
            raise DomainError(f"C(p) residual {resid} exceeds tolerance")
        if self.lam < self.lambda_star - LAMBDA_SLACK:
            raise DomainError("lambda below lambda_star")


def make_coupling(d: int, alpha: float, lam: float) -> CouplingParams:
    """Build CouplingParams from the raw triple, solving for p."""
    p = exponent_p(alpha, lam)
    lz = lambda_zero(d, alpha) if alpha < 2.0 else None
    return CouplingParams(d=d, alpha=alpha, lam=lam, p=p,
                          lambda_star=lambda_star(alpha), lambda_zero=lz)
