"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s`.  Criteria 6 and 13 are
implemented exactly as stated and are expected to fail in part; the printed
lines and the failure messages carry the measured evidence (see the package
README for the convergence-floor analysis).
"""

import math
import time

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.optimize import curve_fit

from hardyops import verify as V
from hardyops.coupling import (coupling_C, exponent_p, gamma_integral,
                               lambda_star, make_coupling, normalization_A)
from hardyops.discrete import build_grid, hardy_quotient_min
from hardyops.kernels import (heat_exact_halfline, heat_images_halfline,
                              master_regime_estimate, master_time_integral,
                              pt, riesz_envelope, riesz_exact_halfline)


def announce(num: int, label: str, ok: bool, detail: str, elapsed: float,
             limit: float | None = None) -> None:
    budget = f" [{elapsed:.1f}s" + (f" < {limit:.0f}s]" if limit else "]")
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {label} ({detail})"
          + budget, flush=True)


def test_criterion_01_coupling_layer_exactness():
    t0 = time.monotonic()
    ps = np.linspace(-1.0 + 1e-3, 6.0 - 1e-3, 1000)
    worst_c = max(abs(coupling_C(2.0, float(p)) - p * (p - 1.0)) for p in ps)
    lams = np.concatenate([np.linspace(-0.25, 100.0, 401), [-0.25, 0.0, 2.0]])
    worst_p = max(abs(exponent_p(2.0, float(l))
                      - 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * l))) for l in lams)
    dt = time.monotonic() - t0
    ok = worst_c <= 1e-11 and worst_p <= 1e-11 and dt < 1.0
    announce(1, "coupling layer exactness",
             ok, f"worst dC={worst_c:.2e}, worst dp={worst_p:.2e}", dt, 1.0)
    assert worst_c <= 1e-11
    assert worst_p <= 1e-11
    assert dt < 1.0


def test_criterion_02_sharp_constant_anchors():
    t0 = time.monotonic()
    e1 = abs(lambda_star(1.0))
    exact2 = lambda_star(2.0) == -0.25
    worst = 0.0
    for alpha in np.linspace(0.05, 2.0, 40):
        worst = max(worst, abs(coupling_C(float(alpha), 0.5 * (alpha - 1.0))
                               - lambda_star(float(alpha))))
    dt = time.monotonic() - t0
    ok = e1 <= 1e-12 and exact2 and worst <= 1e-10 and dt < 1.0
    announce(2, "sharp-constant anchors", ok,
             f"|ls(1)|={e1:.1e}, ls(2) exact={exact2}, worst midline dev={worst:.1e}",
             dt, 1.0)
    assert e1 <= 1e-12
    assert exact2
    assert worst <= 1e-10
    assert dt < 1.0


def test_criterion_03_integral_equivalence():
    t0 = time.monotonic()
    rng = np.random.default_rng(42)
    worst = 0.0
    count = 0
    while count < 200:
        alpha = float(rng.uniform(1e-2, 2.0 - 1e-3))
        if abs(alpha - 1.0) <= 1e-3:
            continue
        p = float(rng.uniform(0.5 * (alpha - 1.0), alpha - 1e-2))
        lhs = normalization_A(1, alpha) * gamma_integral(alpha, p)
        worst = max(worst, abs(lhs - coupling_C(alpha, p)))
        count += 1
    dt = time.monotonic() - t0
    ok = worst <= 1e-7 and dt < 30.0
    announce(3, "closed form vs quadrature for the coupling integral", ok,
             f"worst abs dev={worst:.2e} over 200 samples", dt, 30.0)
    assert worst <= 1e-7
    assert dt < 30.0


def test_criterion_04_exact_kernel_reduction_and_semigroup():
    t0 = time.monotonic()
    worst_img = 0.0
    for t in np.logspace(-2, 2, 10):
        for r in np.logspace(-1, 1, 10):
            for s in np.logspace(-1, 1, 10):
                a = heat_exact_halfline(0.0, float(t), float(r), float(s))
                b = heat_images_halfline(float(t), float(r), float(s))
                if b == 0.0:  # Gaussian underflow at extreme separations
                    assert a == 0.0
                    continue
                worst_img = max(worst_img, abs(a - b) / b)
    rng = np.random.default_rng(7)
    worst_semi = 0.0
    for _ in range(20):
        lam = float(rng.uniform(-0.2, 4.0))
        t, u = (float(v) for v in rng.uniform(0.2, 1.5, 2))
        r, s = (float(v) for v in rng.uniform(0.3, 2.5, 2))
        zmax = max(r, s) + 14.0 * math.sqrt(t + u) + 5.0
        val = quad(lambda z: heat_exact_halfline(lam, t, r, z)
                   * heat_exact_halfline(lam, u, z, s), 0.0, zmax,
                   points=[r, s], limit=400, epsrel=1e-10)[0]
        ref = heat_exact_halfline(lam, t + u, r, s)
        worst_semi = max(worst_semi, abs(val - ref) / ref)
    dt = time.monotonic() - t0
    ok = worst_img <= 1e-12 and worst_semi <= 1e-6 and dt < 120.0
    announce(4, "exact-kernel reduction and semigroup", ok,
             f"images dev={worst_img:.2e}, semigroup dev={worst_semi:.2e}",
             dt, 120.0)
    assert worst_img <= 1e-12
    assert worst_semi <= 1e-6
    assert dt < 120.0


def test_criterion_05_envelope_sandwich():
    t0 = time.monotonic()
    rep = V.check_heat_envelope(lams=(-0.24, 0.0, 1.0, 5.0), n_log=7)
    dt = time.monotonic() - t0
    pieces = []
    ok = rep.verdict and dt < 120.0
    for lam in (-0.24, 0.0, 1.0, 5.0):
        k21 = rep.measured[f"k2_over_k1_lam{lam:g}"]
        cup = rep.measured[f"c_upper_lam{lam:g}"]
        ok = ok and k21 < 1e3 and cup < 0.25
        pieces.append(f"lam={lam:g}: k2/k1={k21:.1f}, c_up={cup}")
    announce(5, "heat-kernel envelope sandwich", ok, "; ".join(pieces), dt, 120.0)
    assert rep.verdict
    for lam in (-0.24, 0.0, 1.0, 5.0):
        assert rep.measured[f"k2_over_k1_lam{lam:g}"] < 1e3
        assert rep.measured[f"c_upper_lam{lam:g}"] < 0.25
    assert dt < 120.0


def test_criterion_06_discrete_hardy_sharpness():
    # Expected to FAIL at the pinned grid: the truncated critical quotient
    # converges like (C''/2)(theta/(g ln N))^2, which at g=2, N=2000 floors
    # out near +10% (alpha=2) to +44% (alpha=1.5).  The monotone trend and
    # the extrapolated limits (within ~1-2% of |lambda_star|) are verified
    # and printed as supporting evidence.
    t0 = time.monotonic()
    sizes = [250, 500, 1000, 2000]
    rows = {}
    for alpha in (0.5, 1.0, 1.5, 2.0):
        rows[alpha] = [hardy_quotient_min(alpha, build_grid(10.0, N, 2.0))
                       for N in sizes]
    dt = time.monotonic() - t0
    details = []
    monotone_ok = True
    final_ok = True
    failures = []
    for alpha, vals in rows.items():
        target = abs(lambda_star(alpha))
        monotone = all(b < a for a, b in zip(vals, vals[1:]))
        monotone_ok = monotone_ok and monotone
        if alpha == 1.0:
            err = abs(vals[-1])
            hit = err <= 0.02
            details.append(f"a=1: nu={vals[-1]:.4f} (abs err {err:.3f})")
        else:
            err = abs(vals[-1] - target) / target
            hit = err <= 0.05
            f = lambda L, nuinf, c, b: nuinf + c / (L + b) ** 2
            popt, _ = curve_fit(f, 2.0 * np.log(sizes), vals,
                                p0=[target, 10.0, 0.0], maxfev=20000)
            details.append(f"a={alpha:g}: nu={vals[-1]:.4f} vs {target:.4f} "
                           f"(rel {err:+.3f}, extrapolated {popt[0]:.4f})")
        if not hit:
            failures.append(f"alpha={alpha:g} misses the 5% window "
                            f"(measured dev {err:.3f})")
        final_ok = final_ok and hit
    ok = monotone_ok and final_ok and dt < 600.0
    announce(6, "discrete Hardy sharpness at N=2000/X=10/g=2", ok,
             f"monotone={monotone_ok}; " + "; ".join(details), dt, 600.0)
    assert monotone_ok, "convergence tables must decrease monotonically"
    assert dt < 600.0
    if failures:
        pytest.fail(
            "criterion 6 unattainable at the pinned grid (log-window floor "
            "(C''/2)(theta/(g ln N))^2; needs g*ln N ~ 28-44, i.e. N ~ 1e6-1e9 "
            "at g=2): " + "; ".join(failures))


def test_criterion_07_master_time_integral_regimes():
    t0 = time.monotonic()
    worst_lo, worst_hi = math.inf, 0.0
    cases = 0

    def probe(alpha, d, p, s, T, S, c_exp=1.0):
        nonlocal worst_lo, worst_hi, cases
        ratio = master_time_integral(alpha, d, p, s, T, S, c_exp) \
            / master_regime_estimate(alpha, d, p, s, T, S)
        worst_lo = min(worst_lo, ratio)
        worst_hi = max(worst_hi, ratio)
        cases += 1

    alpha, d, s = 1.2, 1, 0.5
    thr = 0.5 * alpha * (1.0 + 0.5 * s)
    for p in (0.5, thr, 1.1):
        # small scales S <= T <= 1 (the pair constraint pins S near T)
        for T in np.logspace(-3, 0, 5):
            S = (T ** (-1.0 / alpha) + 1.0) ** (-alpha)
            probe(alpha, d, p, s, float(T), float(S))
            probe(alpha, d, p, s, float(T), float(T))
        # mixed scales S <= 1 <= T
        for T in np.logspace(0, 4, 5):
            S = (T ** (-1.0 / alpha) + 1.0) ** (-alpha)
            probe(alpha, d, p, s, float(T), float(S))
        # large scales 1 <= S <= T with T/S up to 1e4
        for S in (1.5, 10.0):
            for ratio in np.logspace(0, 4, 5):
                probe(alpha, d, p, s, float(S * ratio), float(S))
    p2 = exponent_p(2.0, 1.0)
    for T in (0.3, 10.0, 1e3):
        S = (T ** -0.5 + 1.0) ** -2.0  # extreme of the admissible pair window
        probe(2.0, 1, p2, 0.7, float(T), float(S))
    for S in (1.5, 10.0):
        for ratio in (1.0, 30.0, 1e4):
            probe(2.0, 1, p2, 0.7, float(S * ratio), float(S))
    dt = time.monotonic() - t0
    ok = worst_lo > 1.0 / 50.0 and worst_hi < 50.0 and dt < 300.0
    announce(7, "master time integral regimes", ok,
             f"{cases} cases, ratio range [{worst_lo:.3f}, {worst_hi:.3f}]",
             dt, 300.0)
    assert worst_lo > 1.0 / 50.0
    assert worst_hi < 50.0
    assert dt < 300.0


def test_criterion_08_riesz_consistency():
    t0 = time.monotonic()
    s = 0.7
    ratios = []
    for lam in (0.0, 2.0):
        cp = make_coupling(1, 2.0, lam)
        # off-diagonal grids spanning near-diagonal and boundary-split pairs
        for r in np.logspace(-1.3, 0.7, 5):
            for rho in np.logspace(-1.15, 0.8, 5):
                ex = riesz_exact_halfline(lam, s, float(r), float(rho))
                en = riesz_envelope(cp, s, pt(float(r)), pt(float(rho)))
                ratios.append(ex / en)
            ratios.append(riesz_exact_halfline(lam, s, float(r), float(1.05 * r))
                          / riesz_envelope(cp, s, pt(float(r)), pt(float(1.05 * r))))
    spread = max(ratios) / min(ratios)
    dt = time.monotonic() - t0
    ok = spread < 1e2 and dt < 300.0
    announce(8, "Riesz kernel vs envelope", ok,
             f"{len(ratios)} pairs, ratio spread {spread:.1f}", dt, 300.0)
    assert spread < 1e2
    assert dt < 300.0


def test_criterion_09_norm_equivalence_behavior():
    t0 = time.monotonic()
    details = []
    ok = True
    for lam in (1.0, 3.0):
        for s in (1.0, 1.3):
            rep = V.check_equivalence(2.0, lam, s)
            ok = ok and rep.verdict and rep.measured["family_spread"] <= 10.0
            details.append(f"lam={lam:g},s={s:g}: spread="
                           f"{rep.measured['family_spread']:.2f}")
    rep = V.check_equivalence(2.0, -0.24, 1.5)
    ok = ok and rep.verdict and rep.measured["n_monotone_growth"] >= 4
    details.append(f"lam=-0.24,s=1.5: {rep.measured['n_monotone_growth']:.0f} "
                   "monotone halvings")
    ident = max(rep.measured["identity_s1_err"], rep.measured["identity_s2_err"])
    ok = ok and ident <= 1e-10
    dt = time.monotonic() - t0
    announce(9, "norm-equivalence ratio behavior", ok,
             "; ".join(details) + f"; identity dev={ident:.1e}", dt, 600.0)
    assert ok
    assert dt < 600.0


def test_criterion_10_generalized_hardy_necessity_slope():
    t0 = time.monotonic()
    rep = V.check_generalized_hardy(2.0, 0.0, 1.6)
    dt = time.monotonic() - t0
    ok = rep.verdict and rep.measured["slope_err"] <= 0.2 and dt < 300.0
    announce(10, "weighted-norm blow-up slope", ok,
             f"slope={rep.measured['slope']:.3f} vs rate "
             f"{rep.measured['analytic_rate']:.3f}", dt, 300.0)
    assert rep.verdict
    assert rep.measured["slope_err"] <= 0.2
    assert dt < 300.0


def test_criterion_11_difference_kernel_bound():
    t0 = time.monotonic()
    rep = V.check_difference_bound(lams=(0.5, 2.0), n_duhamel=5, seed=0)
    dt = time.monotonic() - t0
    ok = rep.verdict and dt < 600.0
    announce(11, "difference-kernel majorant and Duhamel identity", ok,
             f"C(0.5)={rep.measured['C_lam0.5']:.2f}, "
             f"C(2)={rep.measured['C_lam2']:.2f}, "
             f"duhamel dev={rep.measured['duhamel_max_err']:.3f}", dt, 600.0)
    assert rep.verdict
    assert rep.measured["C_lam0.5"] < 1e3
    assert rep.measured["C_lam2"] < 1e3
    assert rep.measured["duhamel_max_err"] <= 0.05
    assert dt < 600.0


def test_criterion_12_convolution_and_row_integral_bounds():
    t0 = time.monotonic()
    reps = [V.check_lemma_integral(N=1, betas=(0.5, 1.0, 2.0), nsamples=150,
                                   seed=1),
            V.check_lemma_integral(N=2, betas=(0.5, 1.0, 2.0), nsamples=96,
                                   seed=2),
            V.check_schur_prop(alpha=1.2, r_values=(0.0, 0.2, 0.4))]
    dt = time.monotonic() - t0
    ok = all(r.verdict for r in reps) and dt < 300.0
    worst = max(reps[0].measured[f"max_over_median_beta{b:g}"]
                for b in (0.5, 1.0, 2.0))
    sup = max(reps[2].measured[f"sup_row_r{r:g}"] for r in (0.0, 0.2, 0.4))
    announce(12, "convolution lemma and weighted row integrals", ok,
             f"max/median<={worst:.2f}, sup row integral={sup:.1f}", dt, 300.0)
    for r in reps:
        assert r.verdict
    assert dt < 300.0


def test_criterion_13_commutator_scaling():
    # Expected to FAIL on the alpha = 2 radial slope: the second-order
    # commutator is local, so the measured rate is -alpha - 5/2 (= -4.5,
    # reproduced to 0.01) rather than the fractional far-tail rate
    # -alpha - 1/2 the criterion pins.  All other slopes pass.
    t0 = time.monotonic()
    details = []
    failures = []
    for (alpha, lam) in ((1.5, 0.0), (1.5, 1.0), (2.0, 0.0), (2.0, 1.0)):
        rep = V.check_commutator_scaling(alpha, lam, N=2000)
        m = rep.measured
        details.append(
            f"a={alpha:g},lam={lam:g}: r-slope {m['slope_r']:+.3f} "
            f"(rate {m['rate_r']:+.3f}), R-slope {m['slope_R']:+.3f} "
            f"(rate {m['rate_R']:+.3f})")
        if m["slope_r_err"] > 0.15:
            failures.append(f"boundary slope off at alpha={alpha:g}, "
                            f"lam={lam:g} (err {m['slope_r_err']:.3f})")
        if m["slope_R_err"] > 0.15:
            failures.append(f"radial slope off at alpha={alpha:g}, "
                            f"lam={lam:g} (err {m['slope_R_err']:.3f}, "
                            f"measured {m['slope_R']:.2f}, local rate "
                            f"{m['rate_R_local']:.1f})")
    dt = time.monotonic() - t0
    ok = not failures and dt < 900.0
    announce(13, "cutoff-commutator scaling rates", ok,
             "; ".join(details), dt, 900.0)
    assert dt < 900.0
    if failures:
        pytest.fail(
            "criterion 13 partially unattainable: the radial rate "
            "-alpha-1/2 is the fractional nonlocal far-tail mechanism and "
            "has no second-order counterpart (local commutators decay at "
            "the profile's own rate -alpha-5/2): " + "; ".join(failures))
