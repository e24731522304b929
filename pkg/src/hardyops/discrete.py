"""Graded-mesh 1D discretization of half-line Hardy operators.

The quadratic form (nonlocal difference form for alpha < 2, Dirichlet energy
for alpha = 2, plus the inverse-power Hardy potential) is realized on
piecewise-linear hats over a mesh graded toward the boundary.  For alpha < 2
the domain is truncated at X with a Dirichlet condition understood as
extension by zero: the assembled form is the half-line form of the extended
function, i.e. the regional form on (0, X) plus the exact exterior "killing"
potential coming from (X, infinity).

Assembly is exact: with hat basis functions the double integral reduces, via
two integrations by parts, to cell-pair integrals of explicit antiderivatives
of the kernel, so no singular quadrature is needed anywhere (including the
diagonal cell pairs).  Spectral calculus is provided through a dense
generalized symmetric eigendecomposition against the lumped mass.
"""

from __future__ import annotations

import io
import math
import threading
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from hardyops.coupling import normalization_A
from hardyops.specfun import DomainError

DENSE_SOLVER_CAP = 4000


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Graded mesh on (0, X): vertices X*(k/N)^g, interior nodes as dofs."""

    vertices: np.ndarray   # (N+1,), vertices[0] = 0, vertices[-1] = X
    nodes: np.ndarray      # (N-1,) interior vertices
    weights: np.ndarray    # (N-1,) midpoint-rule weights, sum ~ X
    X: float
    grading: float
    N: int                 # cell count; dof count is N-1

    @property
    def cell_lengths(self) -> np.ndarray:
        return np.diff(self.vertices)

    def key(self) -> tuple:
        return (self.X, self.grading, self.N)


def build_grid(X: float, N: int, g: float) -> Grid1D:
    """Graded mesh with node_k = X*(k/N)^g and midpoint cell weights."""
    if not X > 0.0:
        raise DomainError(f"X must be positive, got {X!r}")
    if N < 16:
        raise DomainError(f"N must be at least 16, got {N!r}")
    if g < 1.0:
        raise DomainError(f"grading exponent must be >= 1, got {g!r}")
    k = np.arange(N + 1, dtype=float)
    vertices = X * (k / N) ** g
    nodes = vertices[1:-1]
    weights = 0.5 * (vertices[2:] - vertices[:-2])
    return Grid1D(vertices=vertices, nodes=nodes, weights=weights,
                  X=float(X), grading=float(g), N=int(N))


# ---------------------------------------------------------------------------
# Stiffness assembly
# ---------------------------------------------------------------------------

def _phi2_diag(r: np.ndarray, alpha: float) -> np.ndarray:
    """Second antiderivative of the diagonal-singular kernel piece.

    alpha != 1: d^2/dr^2 [ |r|^{3-a} / (a(a-1)(2-a)(3-a)) ] = |r|^{1-a}/(a(a-1))
    alpha == 1: d^2/dr^2 [ (3/4) r^2 - (r^2/2) ln|r| ] = -ln|r|
    """
    a = np.abs(r)
    if alpha == 1.0:
        out = np.zeros_like(a)
        nz = a > 0.0
        out[nz] = 0.75 * a[nz] ** 2 - 0.5 * a[nz] ** 2 * np.log(a[nz])
        return out
    kap = 1.0 / (alpha * (alpha - 1.0))
    return kap * a ** (3.0 - alpha) / ((2.0 - alpha) * (3.0 - alpha))


def _antider_max(v: np.ndarray, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """First/second antiderivatives of the max-variable kernel piece f(tau).

    f(tau) = -kappa tau^{1-a} for alpha != 1, f(tau) = +ln(tau) for alpha = 1.
    """
    if alpha == 1.0:
        F1 = np.zeros_like(v)
        F2 = np.zeros_like(v)
        nz = v > 0.0
        lv = np.log(v[nz])
        F1[nz] = v[nz] * lv - v[nz]
        F2[nz] = 0.5 * v[nz] ** 2 * lv - 0.75 * v[nz] ** 2
        return F1, F2
    kap = 1.0 / (alpha * (alpha - 1.0))
    F1 = -kap * v ** (2.0 - alpha) / (2.0 - alpha)
    F2 = -kap * v ** (3.0 - alpha) / ((2.0 - alpha) * (3.0 - alpha))
    return F1, F2


def _antider_min(v: np.ndarray, alpha: float, X: float) -> tuple[np.ndarray, np.ndarray]:
    """First/second antiderivatives of the min-variable kernel piece g(t).

    g(t) = -kappa (X-t)^{1-a} for alpha != 1, g(t) = +ln(X-t) for alpha = 1.
    """
    w = X - v
    if alpha == 1.0:
        G1 = np.zeros_like(v)
        G2 = np.zeros_like(v)
        nz = w > 0.0
        lw = np.log(w[nz])
        G1[nz] = -w[nz] * lw + w[nz]
        G2[nz] = 0.5 * w[nz] ** 2 * lw - 0.75 * w[nz] ** 2
        return G1, G2
    kap = 1.0 / (alpha * (alpha - 1.0))
    G1 = kap * w ** (2.0 - alpha) / (2.0 - alpha)
    G2 = -kap * w ** (3.0 - alpha) / ((2.0 - alpha) * (3.0 - alpha))
    return G1, G2


def _kernel_f(r: np.ndarray, alpha: float) -> np.ndarray:
    """Diagonal kernel piece: |r|^{1-a}/(a(a-1)) for a != 1, -ln|r| at a = 1."""
    a = np.abs(r)
    if alpha == 1.0:
        return -np.log(a)
    return a ** (1.0 - alpha) / (alpha * (alpha - 1.0))


def _kernel_f2(r: np.ndarray, alpha: float) -> np.ndarray:
    """Second derivative of _kernel_f, used in the far-pair Taylor rule."""
    a = np.abs(r)
    if alpha == 1.0:
        return 1.0 / a ** 2
    return (1.0 - alpha) * (-alpha) * a ** (-1.0 - alpha) / (alpha * (alpha - 1.0))


def _diag_singular_pairs(grid: Grid1D, alpha: float) -> np.ndarray:
    """Cell-pair integrals of the diagonal-singular kernel piece.

    The exact four-point antiderivative formula cancels catastrophically when
    the pair separation is large compared to the geometric mean of the cell
    sizes (the result is O(h h' f(D)) while the antiderivative values are
    O(D^2 f(D))).  Far pairs therefore use a midpoint Taylor rule instead,
    which at that separation is accurate to O((h/D)^4).
    """
    v = grid.vertices
    h = grid.cell_lengths
    Pphi = _phi2_diag(v[:, None] - v[None, :], alpha)
    P = Pphi[1:, :-1] + Pphi[:-1, 1:] - Pphi[:-1, :-1] - Pphi[1:, 1:]
    del Pphi
    mid = 0.5 * (v[:-1] + v[1:])
    D = np.abs(mid[:, None] - mid[None, :])
    hh = np.outer(h, h)
    span = h[:, None] + h[None, :]
    far = D > np.maximum(300.0 * np.sqrt(hh), 6.0 * span)
    if np.any(far):
        Df = D[far]
        corr = (h[:, None] ** 2 + h[None, :] ** 2)[far] / 24.0
        P[far] = hh[far] * (_kernel_f(Df, alpha) + corr * _kernel_f2(Df, alpha))
    return P


_GAUSS01 = np.polynomial.legendre.leggauss(8)


def _samecell_max(grid: Grid1D, alpha: float) -> np.ndarray:
    """2 * int over a cell of f(tau)(tau - a) dtau for the max-variable piece.

    The antiderivative formula subtracts values of size O(a^{3-alpha}) to
    produce an O(f(a) h^2) result, which is catastrophic once a >> h; those
    cells are evaluated by an 8-point Gauss rule on the smooth integrand.
    """
    v = grid.vertices
    h = grid.cell_lengths
    a, b = v[:-1], v[1:]
    F1, F2 = _antider_max(v, alpha)
    out = 2.0 * (F1[1:] * h - np.diff(F2))
    far = a > 4.0 * h
    if np.any(far):
        xg, wg = _GAUSS01
        sg = 0.5 * (xg + 1.0)
        wg = 0.5 * wg
        tau = a[far, None] + h[far, None] * sg[None, :]
        if alpha == 1.0:
            fv = np.log(tau)
        else:
            fv = -tau ** (1.0 - alpha) / (alpha * (alpha - 1.0))
        out[far] = 2.0 * h[far] ** 2 * np.sum(wg[None, :] * sg[None, :] * fv, axis=1)
    return out


def _samecell_min(grid: Grid1D, alpha: float) -> np.ndarray:
    """2 * int over a cell of g(t)(b - t) dt for the min-variable piece."""
    v = grid.vertices
    h = grid.cell_lengths
    a, b = v[:-1], v[1:]
    G1, G2 = _antider_min(v, alpha, grid.X)
    out = 2.0 * (-G1[:-1] * h + np.diff(G2))
    far = (grid.X - b) > 4.0 * h
    if np.any(far):
        xg, wg = _GAUSS01
        sg = 0.5 * (xg + 1.0)
        wg = 0.5 * wg
        t = b[far, None] - h[far, None] * sg[None, :]
        u = grid.X - t
        if alpha == 1.0:
            gv = np.log(u)
        else:
            gv = -u ** (1.0 - alpha) / (alpha * (alpha - 1.0))
        out[far] = 2.0 * h[far] ** 2 * np.sum(wg[None, :] * sg[None, :] * gv, axis=1)
    return out


def _cellpair_weights(grid: Grid1D, alpha: float, regional: bool) -> np.ndarray:
    """Integrals of the double-parts-integrated kernel over all cell pairs.

    Returns P with P[c, c'] = integral over cell_c x cell_c' of
    w(min(t,tau), max(t,tau)), where w(a, b) is the exact double integral of
    |x - y|^{-1-alpha} over {y < a} x {x > b} intersected with (0, X)^2
    (regional=True) or with the full line (regional=False; constant terms
    drop later because hat slopes integrate to zero).
    """
    v = grid.vertices
    h = grid.cell_lengths
    P = _diag_singular_pairs(grid, alpha)
    if not regional:
        return P
    # max-variable term
    F1, F2 = _antider_max(v, alpha)
    dF1 = np.diff(F1)
    upper = np.triu(np.outer(h, dF1), k=1)
    P += upper + upper.T
    del upper
    P[np.diag_indices_from(P)] += _samecell_max(grid, alpha)
    # min-variable term (c < c' means the minimum lives in cell c)
    G1, G2 = _antider_min(v, alpha, grid.X)
    dG1 = np.diff(G1)
    upper = np.triu(np.outer(dG1, h), k=1)
    P += upper + upper.T
    del upper
    P[np.diag_indices_from(P)] += _samecell_min(grid, alpha)
    # constant term
    if alpha == 1.0:
        cval = -math.log(grid.X)
    else:
        cval = grid.X ** (1.0 - alpha) / (alpha * (alpha - 1.0))
    P += cval * np.outer(h, h)
    return P


def _contract_slopes(P: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Apply hat-function slopes (+1/h_i on cell i, -1/h_{i+1} on cell i+1)."""
    Q = P[:-1, :] / h[:-1, None] - P[1:, :] / h[1:, None]
    K = Q[:, :-1] / h[None, :-1] - Q[:, 1:] / h[None, 1:]
    return K


def _nonlocal_stiffness(alpha: float, grid: Grid1D, regional: bool) -> np.ndarray:
    P = _cellpair_weights(grid, alpha, regional)
    K = normalization_A(1, alpha) * _contract_slopes(P, grid.cell_lengths)
    return 0.5 * (K + K.T)


def _local_stiffness(grid: Grid1D) -> np.ndarray:
    """Classical P1 Dirichlet stiffness (alpha = 2)."""
    h = grid.cell_lengths
    n = grid.N - 1
    K = np.zeros((n, n))
    d = 1.0 / h
    K[np.diag_indices(n)] = d[:-1] + d[1:]
    idx = np.arange(n - 1)
    K[idx, idx + 1] = -d[1:-1]
    K[idx + 1, idx] = -d[1:-1]
    return K


# stiffness bases are expensive at N ~ 2000; keep a tiny LRU keyed by grid/alpha
_BASE_CACHE: OrderedDict[tuple, tuple[np.ndarray, np.ndarray]] = OrderedDict()
_CACHE_LOCK = threading.Lock()
_CACHE_MAX = 8


def _base_parts(alpha: float, grid: Grid1D) -> tuple[np.ndarray, np.ndarray]:
    """(lambda-independent stiffness, Hardy potential diagonal)."""
    key = (alpha, grid.key())
    with _CACHE_LOCK:
        if key in _BASE_CACHE:
            _BASE_CACHE.move_to_end(key)
            return _BASE_CACHE[key]
    hardy = grid.weights * grid.nodes ** (-alpha)
    if alpha == 2.0:
        base = _local_stiffness(grid)
    else:
        base = _nonlocal_stiffness(alpha, grid, regional=True)
        # exterior killing from (X, inf): A(1,-a)/a * (X - x)^{-a}
        kill = normalization_A(1, alpha) / alpha * (grid.X - grid.nodes) ** (-alpha)
        base = base + np.diag(grid.weights * kill)
    with _CACHE_LOCK:
        _BASE_CACHE[key] = (base, hardy)
        while len(_BASE_CACHE) > _CACHE_MAX:
            _BASE_CACHE.popitem(last=False)
    return base, hardy


@dataclass(frozen=True, eq=False)
class DiscreteOperator:
    """Symmetric matrix realization of the quadratic form on a Grid1D."""

    alpha: float
    lam: float
    grid: Grid1D
    stiffness: np.ndarray  # (N-1, N-1), includes the lambda-potential
    hardy: np.ndarray      # diagonal of the Hardy weight, weights * x^{-alpha}
    mass: np.ndarray       # lumped mass diagonal (= grid.weights)

    def form(self, u: np.ndarray, v: np.ndarray | None = None) -> float:
        v = u if v is None else v
        return float(u @ (self.stiffness @ v))

    def apply(self, u: np.ndarray) -> np.ndarray:
        """Operator action in the mass inner product: M^{-1} K u."""
        return (self.stiffness @ u) / self.mass


def assemble_form(alpha: float, lam: float, grid: Grid1D,
                  warn_below_sharp: bool = True) -> DiscreteOperator:
    """Assemble the discrete quadratic form for coupling lam.

    lam below the sharp constant is allowed (indefinite forms are useful
    optimality probes); a warning is emitted unless suppressed.
    """
    if not (0.0 < alpha <= 2.0):
        raise DomainError(f"alpha must lie in (0, 2], got {alpha!r}")
    from hardyops.coupling import lambda_star
    if warn_below_sharp and lam < lambda_star(alpha) - 1e-12:
        import warnings
        warnings.warn(f"lambda={lam} below the sharp constant; form is indefinite",
                      stacklevel=2)
    base, hardy = _base_parts(alpha, grid)
    K = base + lam * np.diag(hardy)
    return DiscreteOperator(alpha=alpha, lam=lam, grid=grid, stiffness=K,
                            hardy=hardy, mass=grid.weights.copy())


def assemble_fullline_form(alpha: float, grid: Grid1D) -> np.ndarray:
    """Stiffness of the whole-line fractional form for zero-extended hats.

    Only the translation-invariant kernel piece survives (hat slopes have
    zero mean, so the constant parts of the double antiderivative drop);
    used to cross-check the regional + exterior + comparison-potential
    decomposition of the whole-line energy.
    """
    if not (0.0 < alpha < 2.0):
        raise DomainError(f"alpha must lie in (0, 2), got {alpha!r}")
    P = _cellpair_weights(grid, alpha, regional=False)
    K = normalization_A(1, alpha) * _contract_slopes(P, grid.cell_lengths)
    return 0.5 * (K + K.T)


# ---------------------------------------------------------------------------
# Spectral calculus
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Mass-orthonormal eigenpairs of (stiffness, diag(mass))."""

    eigenvalues: np.ndarray   # nondecreasing
    eigenvectors: np.ndarray  # columns, v^T M w = delta
    mass: np.ndarray
    operator: DiscreteOperator

    def coefficients(self, u: np.ndarray) -> np.ndarray:
        return self.eigenvectors.T @ (self.mass * u)

    def synthesize(self, coeff: np.ndarray) -> np.ndarray:
        return self.eigenvectors @ coeff

    def residual(self) -> float:
        """max_k |K v_k - mu_k M v_k| / |K v_k| over the spectrum."""
        K = self.operator.stiffness
        KV = K @ self.eigenvectors
        MV = self.mass[:, None] * self.eigenvectors * self.eigenvalues[None, :]
        num = np.linalg.norm(KV - MV, axis=0)
        den = np.linalg.norm(KV, axis=0)
        den[den == 0.0] = 1.0
        return float(np.max(num / den))


def eigendecompose(op: DiscreteOperator) -> SpectralDecomposition:
    """Dense generalized symmetric eigendecomposition (N capped)."""
    n = op.stiffness.shape[0]
    if n + 1 > DENSE_SOLVER_CAP:
        raise DomainError(f"dense solver capped at N={DENSE_SOLVER_CAP}, got N={n + 1}")
    rw = np.sqrt(op.mass)
    B = op.stiffness / rw[:, None] / rw[None, :]
    B = 0.5 * (B + B.T)
    vals, Y = eigh(B)
    V = Y / rw[:, None]
    return SpectralDecomposition(eigenvalues=vals, eigenvectors=V,
                                 mass=op.mass.copy(), operator=op)


def heat_apply(dec: SpectralDecomposition, t: float, u: np.ndarray) -> np.ndarray:
    """exp(-t L) u through the spectral representation."""
    if t < 0.0:
        raise DomainError("heat_apply requires t >= 0")
    c = dec.coefficients(u)
    return dec.synthesize(np.exp(-t * dec.eigenvalues) * c)


def power_apply(dec: SpectralDecomposition, s: float, u: np.ndarray) -> np.ndarray:
    """L^{s/2} u; negative s gives the Riesz (inverse) powers."""
    c = dec.coefficients(u)
    return dec.synthesize(dec.eigenvalues ** (0.5 * s) * c)


def sobolev_norm(dec: SpectralDecomposition, s: float, u: np.ndarray) -> float:
    """|| L^{s/2} u || in the mass norm, via the spectral measure."""
    c = dec.coefficients(u)
    return float(math.sqrt(np.sum(dec.eigenvalues ** s * c * c)))


def riesz_kernel_entry(dec: SpectralDecomposition, s: float, i: int, j: int) -> float:
    """Kernel of L^{-s/2} at node pair (i, j), mass-normalized."""
    V = dec.eigenvectors
    return float(np.sum(dec.eigenvalues ** (-0.5 * s) * V[i, :] * V[j, :]))


def mass_norm(op_or_dec, u: np.ndarray) -> float:
    mass = op_or_dec.mass
    return float(math.sqrt(np.sum(mass * u * u)))


def hardy_quotient_min(alpha: float, grid: Grid1D) -> float:
    """Smallest generalized eigenvalue of (Form_{lambda=0}, Hardy weight).

    Converges to |lambda_star(alpha)| from the sharp Hardy inequality as the
    grid resolves the boundary.
    """
    op = assemble_form(alpha, 0.0, grid)
    rw = np.sqrt(op.hardy)
    B = op.stiffness / rw[:, None] / rw[None, :]
    B = 0.5 * (B + B.T)
    vals = eigh(B, eigvals_only=True, subset_by_index=[0, 0])
    return float(vals[0])


def commutator_with_multiplier(op: DiscreteOperator, u: np.ndarray,
                               m: np.ndarray) -> float:
    """Mass norm of [A, m] u for a multiplier m given on the nodes.

    Diagonal potential terms commute with multiplication operators, so the
    full stiffness stands in for the pure nonlocal part.
    """
    K = op.stiffness
    v = K @ (m * u) - m * (K @ u)
    return float(math.sqrt(np.sum(v * v / op.mass)))


def commutator_norm(op: DiscreteOperator, u: np.ndarray, r: float, R: float) -> float:
    """Mass norm of [A, chi*theta] u: chi cuts off at radius R..2R and theta
    at boundary distance r..2r, both with the standard derivative scaling."""
    grid = op.grid
    if not (0.0 < r <= 1.0 <= R < 0.5 * grid.X):
        raise DomainError(f"need 0 < r <= 1 <= R < X/2, got r={r!r}, R={R!r}")
    hmin_r = np.min(np.diff(grid.vertices[grid.vertices <= 2.0 * r]), initial=np.inf)
    if not np.isfinite(hmin_r) or hmin_r > 0.5 * r:
        raise DomainError(f"grid too coarse to resolve cutoff scale r={r!r}")
    return commutator_with_multiplier(op, u, cutoff_product(grid, r, R))


# ---------------------------------------------------------------------------
# Test-function families
# ---------------------------------------------------------------------------

def smoothstep(u: np.ndarray) -> np.ndarray:
    """C-infinity transition: 0 for u <= 0, 1 for u >= 1."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    out[u >= 1.0] = 1.0
    mid = (u > 0.0) & (u < 1.0)
    a = np.exp(-1.0 / u[mid])
    b = np.exp(-1.0 / (1.0 - u[mid]))
    out[mid] = a / (a + b)
    return out


def taper(x: np.ndarray, lo: float = 0.5, hi: float = 2.0) -> np.ndarray:
    """Plateau envelope: 1 on (0, lo], smooth descent to 0 at hi."""
    return 1.0 - smoothstep((x - lo) / (hi - lo))


def boundary_bump(grid: Grid1D, eps: float, gamma_exp: float,
                  lo: float = 0.5, hi: float = 2.0) -> np.ndarray:
    """min(x/eps, 1)^gamma times the plateau envelope, on grid nodes."""
    x = grid.nodes
    return np.minimum(x / eps, 1.0) ** gamma_exp * taper(x, lo, hi)


def interior_bump(grid: Grid1D, center: float = 2.0, halfwidth: float = 1.5) -> np.ndarray:
    """Smooth bump around center, scaled >= 1 on the inner half of its support."""
    s = (grid.nodes - center) / halfwidth
    out = np.zeros_like(s)
    inside = np.abs(s) < 1.0
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - s[inside] ** 2))
    edge = min(0.25, (0.5 / halfwidth) ** 2)
    return out / math.exp(1.0 - 1.0 / (1.0 - edge))


def dilate_bump(grid: Grid1D, R: float) -> np.ndarray:
    """Interior bump dilated by R (mass moves outward with R)."""
    s = (grid.nodes / R - 2.0) / 1.5
    out = np.zeros_like(s)
    inside = np.abs(s) < 1.0
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - s[inside] ** 2))
    return out


def singular_profile(grid: Grid1D, p_exp: float,
                     lo: float = 0.5, hi: float = 2.0) -> np.ndarray:
    """x^p profile running to the grid floor, tapered to zero by hi."""
    return grid.nodes ** p_exp * taper(grid.nodes, lo, hi)


def decay_profile(grid: Grid1D, p_exp: float, alpha: float) -> np.ndarray:
    """Smooth profile saturating the class (1 ^ x)^p (1 ^ |x|^{-1-alpha})."""
    x = grid.nodes
    return x ** p_exp * (1.0 + x * x) ** (-0.5 * (1.0 + alpha + p_exp))


def boundary_cutoff(grid: Grid1D, r: float) -> np.ndarray:
    """theta(x; r): 0 below r, 1 above 2r, |theta'| ~ 1/r."""
    return smoothstep((grid.nodes - r) / r)


def radial_cutoff(grid: Grid1D, R: float) -> np.ndarray:
    """chi(x; R): 1 below R, 0 above 2R, |chi'| ~ 1/R."""
    return 1.0 - smoothstep((grid.nodes - R) / R)


def cutoff_product(grid: Grid1D, r: float, R: float) -> np.ndarray:
    """chi(x; R) * theta(x; r): 0 near the boundary and far out."""
    return boundary_cutoff(grid, r) * radial_cutoff(grid, R)


# ---------------------------------------------------------------------------
# Text serialization (CSV with a one-line header)
# ---------------------------------------------------------------------------

def _header(grid: Grid1D, alpha: float, lam: float) -> str:
    return f"N={grid.N},alpha={alpha!r},lambda={lam!r},X={grid.X!r},g={grid.grading!r}"


def _parse_header(line: str) -> dict:
    out = {}
    for item in line.strip().split(","):
        key, val = item.split("=")
        out[key] = float(val)
    return out


def save_operator(op: DiscreteOperator, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(_header(op.grid, op.alpha, op.lam) + "\n")
        np.savetxt(fh, op.stiffness, delimiter=",")
        np.savetxt(fh, op.mass[None, :], delimiter=",")


def load_operator(path: str) -> DiscreteOperator:
    with open(path) as fh:
        head = _parse_header(fh.readline())
        body = np.loadtxt(io.StringIO(fh.read()), delimiter=",")
    grid = build_grid(head["X"], int(head["N"]), head["g"])
    n = grid.N - 1
    stiff = body[:n, :]
    mass = body[n, :]
    hardy = grid.weights * grid.nodes ** (-head["alpha"])
    return DiscreteOperator(alpha=head["alpha"], lam=head["lambda"], grid=grid,
                            stiffness=stiff, hardy=hardy, mass=mass)


def save_spectrum(dec: SpectralDecomposition, path: str) -> None:
    op = dec.operator
    with open(path, "w") as fh:
        fh.write(_header(op.grid, op.alpha, op.lam) + "\n")
        np.savetxt(fh, dec.eigenvalues[None, :], delimiter=",")
        np.savetxt(fh, dec.eigenvectors, delimiter=",")


def load_spectrum(path: str) -> tuple[dict, np.ndarray, np.ndarray]:
    with open(path) as fh:
        head = _parse_header(fh.readline())
        body = np.loadtxt(io.StringIO(fh.read()), delimiter=",")
    return head, body[0, :], body[1:, :]
