"""Reproducible experiment runner.

Every experiment writes a CSV table (decimal point, 17 significant digits,
rows sorted by a deterministic key) and prints a one-line summary with its
key constant.  Random sampling uses numpy's default_rng (the PCG64 bit
generator), so a fixed seed reproduces byte-identical output on any
platform.  Exit codes: 0 pass, 1 config error, 2 threshold violation.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .annulus import (
    AnnulusPoint,
    dLA_bruteforce,
    dLA_estimate,
    half_plane_distance,
)
from .curves import Marking, Slope, dehn_twist, enumerate_slopes
from .errors import ConfigError, Degenerate
from .holonomy import FNPoint, curve_length, short_marking
from .hyptrig import (
    EPS0,
    EPS1,
    MARGULIS,
    fermi_distance,
    hexagon_opposite,
    hexagon_residual,
    hyp_distance,
    pentagon_residual,
    pentagon_side,
)
from .metrics import (
    FlatTorus,
    dL,
    dL_gamma,
    dT_gamma,
    divergent_pair,
    flat_torus_dL,
    flat_torus_dT,
    marking_distance,
    theorem1_closed_form,
    thick_quantity,
    wolpert_check,
)

#: experiment name -> (description, extra default parameters)
EXPERIMENTS = {
    "hexagon-selftest": (
        "residuals of the right-angled hexagon/pentagon relations and the "
        "Fermi-coordinate distance against direct half-plane geometry",
        {"samples": 10000, "fermi_samples": 1000, "tol": 1e-9},
    ),
    "annulus-lemma": (
        "annulus-model distance: brute-force winding search against the "
        "two-case closed-form estimate over a core-length/twist grid",
        {"grid": 8, "refine": 2, "drift_tol": 0.10},
    ),
    "half-plane-compare": (
        "growth in the twist gap: annulus estimate (slope 1) against the "
        "hyperbolic half-plane distance (slope 2)",
        {"points": 12, "slope_tol": 0.10},
    ),
    "torus-equality": (
        "equality of the two metrics on the flat torus over a modulus grid",
        {"grid": 10, "cutoff": 200, "tol": 1e-6},
    ),
    "wolpert": (
        "stretch factor bounded by the quasiconformal dilatation on the "
        "flat torus grid",
        {"grid": 10, "cutoff": 200, "tol": 1e-9},
    ),
    "thick-compare": (
        "pairwise gaps among the Lipschitz distance, both short-marking "
        "quantities, and the marking-intersection distance on thick pairs",
        {"pairs": 100, "max_gap": 6.0},
    ),
    "prodreg-error": (
        "Lipschitz distance against the thin-part product-region formula "
        "on random thin pairs, with a deep-thin stability sweep",
        {"pairs": 50, "twist_max": 1e6, "stability_factor": 2.0},
    ),
    "thm1-divergence": (
        "the divergent family: Lipschitz distance near its closed form "
        "while the per-annulus Teichmuller estimate grows linearly",
        {"n_max": 6, "gap_bound": 1.0, "band_bound": 2.0},
    ),
    "marking-distance": (
        "quasi-triangle constant of the marking-intersection distance and "
        "its logarithmic growth along a twist family",
        {"triples": 60, "twist_powers": 12},
    ),
}

_COMMON_DEFAULTS = {"eps0": EPS0, "eps1": EPS1, "seed": 0, "out": ""}

_INT_KEYS = {
    "samples", "fermi_samples", "grid", "refine", "points", "cutoff",
    "pairs", "n_max", "triples", "twist_powers", "seed",
}


@dataclass
class ExperimentConfig:
    """Validated parameters for one experiment run."""

    name: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.name!r}")
        merged = dict(_COMMON_DEFAULTS)
        merged.update(EXPERIMENTS[self.name][1])
        for key, value in self.params.items():
            if key not in merged:
                raise ConfigError(f"unknown key {key!r} for {self.name}")
            merged[key] = value
        eps0, eps1 = merged["eps0"], merged["eps1"]
        if not eps1 < eps0 < MARGULIS:
            raise ConfigError(
                f"need eps1 < eps0 < {MARGULIS}; got eps1={eps1}, eps0={eps0}"
            )
        if not eps0 / eps1 > 2.0:
            raise ConfigError(f"need eps0/eps1 > 2; got {eps0 / eps1}")
        self.params = merged


def _coerce(key, raw):
    raw = raw.strip()
    if key == "out":
        return raw
    try:
        return int(raw) if key in _INT_KEYS else float(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value {raw!r} for key {key!r}") from exc


def validate_config(text, name="thm1-divergence"):
    """Parse line-oriented key=value text into an ExperimentConfig."""
    params = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        try:
            params[key] = _coerce(key, raw)
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from exc
    return ExperimentConfig(name, params)


def _fmt(x):
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(x) for x in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


# ---------------------------------------------------------------------------
# Experiments.  Each returns (header, sorted rows, summary string, ok flag).


def _run_hexagon_selftest(p, rng):
    rows = []
    worst = 0.0
    for i in range(p["samples"]):
        a, a2, w = np.exp(rng.uniform(-3.0, 3.0, size=3))
        try:
            c = hexagon_opposite(a, a2, w)
            res = hexagon_residual(a, a2, w, c)
        except Degenerate:
            continue
        rel = res / max(1.0, math.cosh(c))
        worst = max(worst, rel)
        rows.append(("hexagon", i, a, a2, w, c, rel))
    for i in range(p["samples"]):
        u, a = np.exp(rng.uniform(-2.0, 3.0, size=2))
        try:
            c = pentagon_side(u, a)
            res = pentagon_residual(u, a, c)
        except Degenerate:
            continue
        rel = res / max(1.0, math.cosh(c))
        worst = max(worst, rel)
        rows.append(("pentagon", i, u, a, 0.0, c, rel))
    for i in range(p["fermi_samples"]):
        d1, d2 = rng.uniform(-3.0, 3.0, size=2)
        du = rng.uniform(0.0, 5.0)
        got = fermi_distance(d1, d2, du)
        # place both points explicitly on the half plane about the imaginary axis
        z1 = _fermi_point(d1, 0.0)
        z2 = _fermi_point(d2, du)
        want = hyp_distance(z1, z2)
        err = abs(got - want)
        worst = max(worst, err)
        rows.append(("fermi", i, d1, d2, du, got, err))
    rows.sort(key=lambda r: (r[0], r[1]))
    ok = worst <= p["tol"]
    return (
        ("kind", "index", "p1", "p2", "p3", "value", "residual"),
        rows,
        f"max residual {worst:.3e} (tol {p['tol']:.1e})",
        ok,
    )


def _fermi_point(d, u):
    """Point at signed distance d from the imaginary axis, arc parameter u."""
    phi = 2.0 * math.atan(math.exp(-d))
    return math.exp(u) * complex(math.cos(phi), math.sin(phi))


def _annulus_grid(p, grid, eps0):
    ls = np.exp(np.linspace(math.log(1e-6), math.log(0.05), grid))
    ls = np.minimum(ls, 0.99 * eps0)
    dts = (0.0, 10.0, 1e3, 1e6, 1e8)
    worst = 0.0
    rows = []
    for l1 in ls:
        for l2 in ls:
            for dt in dts:
                r1 = AnnulusPoint(0.0, float(l1), eps0)
                r2 = AnnulusPoint(dt, float(l2), eps0)
                bf = dLA_bruteforce(r1, r2)
                est = dLA_estimate(r1, r2)
                diff = abs(bf.value - est.value)
                worst = max(worst, diff)
                rows.append((float(l1), float(l2), dt, bf.value, est.value,
                             diff, est.detail))
    return worst, rows


def _run_annulus_lemma(p, rng):
    eps0 = p["eps0"]
    grid = int(p["grid"])
    worst, rows = _annulus_grid(p, grid, eps0)
    worst_fine, _ = _annulus_grid(p, grid * int(p["refine"]), eps0)
    drift = abs(worst_fine - worst) / worst if worst > 0.0 else 0.0
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    ok = math.isfinite(worst) and drift < p["drift_tol"]
    return (
        ("l1", "l2", "dt", "bruteforce", "estimate", "diff", "case"),
        rows,
        f"max |brute - estimate| {worst:.6f}, refined {worst_fine:.6f}, "
        f"drift {100 * drift:.2f}%",
        ok,
    )


def _run_half_plane_compare(p, rng):
    eps0 = p["eps0"]
    l = 1e-4
    rows = []
    log_dts = np.linspace(math.log(1e6), math.log(1e10), int(p["points"]))
    for ld in log_dts:
        dt = math.exp(ld)
        r1 = AnnulusPoint(0.0, l, eps0)
        r2 = AnnulusPoint(dt, l, eps0)
        ann = dLA_estimate(r1, r2).value
        hp = half_plane_distance(r1.half_plane_coords(), r2.half_plane_coords())
        rows.append((dt, ann, hp))
    xs = np.array([math.log(r[0]) for r in rows])
    slope_ann = np.polyfit(xs, [r[1] for r in rows], 1)[0]
    slope_hp = np.polyfit(xs, [r[2] for r in rows], 1)[0]
    ok = abs(slope_ann - 1.0) < p["slope_tol"] and abs(slope_hp - 2.0) < 2 * p["slope_tol"]
    rows.sort(key=lambda r: r[0])
    return (
        ("dt", "annulus_estimate", "half_plane"),
        rows,
        f"log-gap slopes: annulus {slope_ann:.4f} (target 1), "
        f"half-plane {slope_hp:.4f} (target 2)",
        ok,
    )


def _modulus_grid(grid):
    res = np.linspace(-0.5, 0.5, grid)
    ims = np.linspace(0.5, 2.0, grid)
    return [complex(re, im) for re in res for im in ims]


def _run_torus_equality(p, rng):
    n = int(p["cutoff"])
    base = FlatTorus(1j)
    rows = []
    worst = 0.0
    for tau in _modulus_grid(int(p["grid"])):
        other = FlatTorus(tau)
        dt = flat_torus_dT(base, other, n).value
        dl = flat_torus_dL(base, other, n).value
        diff = abs(dt - dl)
        worst = max(worst, diff)
        rows.append((tau.real, tau.imag, dt, dl, diff))
    special = abs(flat_torus_dT(FlatTorus(1j), FlatTorus(2j), n).value
                  - 0.5 * math.log(2.0))
    rows.sort(key=lambda r: (r[0], r[1]))
    ok = worst <= p["tol"] and special <= 1e-9
    return (
        ("re", "im", "dT", "dL", "diff"),
        rows,
        f"max |dT - dL| {worst:.3e} (tol {p['tol']:.1e}); "
        f"i-vs-2i error {special:.3e}",
        ok,
    )


def _run_wolpert(p, rng):
    n = int(p["cutoff"])
    base = FlatTorus(1j)
    rows = []
    worst = math.inf
    for tau in _modulus_grid(int(p["grid"])):
        ok_one, margin = wolpert_check(base, FlatTorus(tau), n)
        worst = min(worst, margin)
        rows.append((tau.real, tau.imag, margin))
    rows.sort(key=lambda r: (r[0], r[1]))
    ok = worst >= -p["tol"]
    return (
        ("re", "im", "margin"),
        rows,
        f"min dilatation margin {worst:.6e} (violation below {-p['tol']:.1e})",
        ok,
    )


def _sample_thick(rng):
    """A random FN point with no curve shorter than the Margulis threshold
    among small slopes."""
    while True:
        l = math.exp(rng.uniform(math.log(0.3), math.log(3.0)))
        s = rng.uniform(-3.0, 3.0)
        sigma = FNPoint.torus(l, s)
        if min(curve_length(sigma, c) for c in enumerate_slopes(4)) > 0.2:
            return sigma


def _run_thick_compare(p, rng):
    fam = enumerate_slopes(16)
    rows = []
    worst = 0.0
    for i in range(int(p["pairs"])):
        sigma = _sample_thick(rng)
        tau = _sample_thick(rng)
        d = dL(sigma, tau, fam).value
        q3 = thick_quantity(sigma, tau, 3, fam).value
        q4 = thick_quantity(sigma, tau, 4, fam).value
        md = marking_distance(short_marking(sigma, fam), short_marking(tau, fam))
        vals = (d, q3, q4, md)
        gap = max(vals) - min(vals)
        worst = max(worst, gap)
        rows.append((i, sigma.l, sigma.s, tau.l, tau.s, d, q3, q4, md, gap))
    ok = worst <= p["max_gap"]
    return (
        ("pair", "l1", "s1", "l2", "s2", "dL", "q3", "q4", "marking", "gap"),
        rows,
        f"max pairwise estimator gap {worst:.4f} (bound {p['max_gap']})",
        ok,
    )


def _thin_pair_sweep(rng, count, l_lo, l_hi, twist_max, eps1, eps0):
    gammas = [Slope(1, 0)]
    worst = 0.0
    rows = []
    for i in range(count):
        l1 = math.exp(rng.uniform(math.log(l_lo), math.log(l_hi)))
        l2 = math.exp(rng.uniform(math.log(l_lo), math.log(l_hi)))
        t1 = rng.uniform(-twist_max, twist_max)
        t2 = rng.uniform(-twist_max, twist_max)
        sigma = FNPoint.torus(l1, t1 * l1)
        tau = FNPoint.torus(l2, t2 * l2)
        a = dL(sigma, tau).value
        b = dL_gamma(sigma, tau, gammas, eps1, eps0).value
        diff = abs(a - b)
        worst = max(worst, diff)
        rows.append((i, l1, t1, l2, t2, a, b, diff))
    return worst, rows


def _run_prodreg_error(p, rng):
    count = int(p["pairs"])
    eps1, eps0 = p["eps1"], p["eps0"]
    c_wide, rows = _thin_pair_sweep(
        rng, count, 1e-5, eps1, p["twist_max"], eps1, eps0
    )
    c_deep, deep_rows = _thin_pair_sweep(
        rng, count, 1e-5, 3e-5, p["twist_max"], eps1, eps0
    )
    rows = [("wide",) + r for r in rows] + [("deep",) + r for r in deep_rows]
    rows.sort(key=lambda r: (r[0], r[1]))
    stable = c_deep <= p["stability_factor"] * max(c_wide, 1e-12)
    ok = math.isfinite(c_wide) and stable
    return (
        ("sweep", "pair", "l1", "t1", "l2", "t2", "dL", "dL_gamma", "diff"),
        rows,
        f"C = max |dL - dL_gamma| {c_wide:.4f}; deep-thin C {c_deep:.4f}",
        ok,
    )


def _run_thm1_divergence(p, rng):
    gammas = [Slope(1, 0)]
    rows = []
    gap_worst = 0.0
    band_lo, band_hi = math.inf, -math.inf
    for n in range(1, int(p["n_max"]) + 1):
        big_p, q = float(n * n), float(n)
        l = math.exp(-big_p)
        sigma, tau = divergent_pair(big_p, q, eps1=max(p["eps1"], l * 1.001))
        d = dL(sigma, tau).value
        cf = theorem1_closed_form(big_p, q)
        gap_worst = max(gap_worst, abs(d - cf))
        # for shallow members the collar threshold is relaxed to just
        # contain the core curve, keeping the family uniform
        eps1 = max(p["eps1"], l * 1.001)
        eps0 = max(p["eps0"], l * 2.001)
        dtg = dT_gamma(sigma, tau, gammas, eps1, eps0).value
        band_lo = min(band_lo, dtg - q)
        band_hi = max(band_hi, dtg - q)
        rows.append((n, big_p, q, d, cf, dtg))
    band = band_hi - band_lo
    ok = gap_worst <= p["gap_bound"] and band <= p["band_bound"]
    return (
        ("n", "P", "q", "dL", "closed_form", "dT_gamma"),
        rows,
        f"max |dL - closed form| {gap_worst:.4f} (bound {p['gap_bound']}); "
        f"dT_gamma - q band width {band:.4f} (bound {p['band_bound']})",
        ok,
    )


def _random_marking(rng):
    """Image of the standard marking under a short random mapping class
    (twists preserve the intersection pattern)."""
    pants, dual = Slope(1, 0), Slope(0, 1)
    for _ in range(3):
        along = pants if rng.integers(2) else dual
        k = int(rng.integers(-4, 5))
        if k:
            pants = dehn_twist(pants, along, k)
            dual = dehn_twist(dual, along, k)
    return Marking((pants,), (dual,))


def _run_marking_distance(p, rng):
    rows = []
    worst_c = -math.inf
    for i in range(int(p["triples"])):
        m1, m2, m3 = (_random_marking(rng) for _ in range(3))
        excess = (marking_distance(m1, m3) - marking_distance(m1, m2)
                  - marking_distance(m2, m3))
        worst_c = max(worst_c, excess)
        rows.append(("triple", i, excess, 0.0))
    base = Marking((Slope(1, 0),), (Slope(0, 1),))
    growth_err = 0.0
    for j in range(1, int(p["twist_powers"]) + 1):
        k = 2 ** j
        twisted = Marking(
            (Slope(1, 0),), (dehn_twist(Slope(0, 1), Slope(1, 0), k),)
        )
        md = marking_distance(base, twisted)
        err = abs(md - math.log(k))
        growth_err = max(growth_err, err)
        rows.append(("twist", j, float(k), md))
    rows.sort(key=lambda r: (r[0], r[1]))
    ok = math.isfinite(worst_c) and growth_err <= 2.0
    return (
        ("kind", "index", "value", "distance"),
        rows,
        f"quasi-triangle constant {worst_c:.4f}; "
        f"twist-growth deviation from log {growth_err:.4f}",
        ok,
    )


_RUNNERS = {
    "hexagon-selftest": _run_hexagon_selftest,
    "annulus-lemma": _run_annulus_lemma,
    "half-plane-compare": _run_half_plane_compare,
    "torus-equality": _run_torus_equality,
    "wolpert": _run_wolpert,
    "thick-compare": _run_thick_compare,
    "prodreg-error": _run_prodreg_error,
    "thm1-divergence": _run_thm1_divergence,
    "marking-distance": _run_marking_distance,
}


def run(config: ExperimentConfig):
    """Execute one experiment; returns the process exit code."""
    rng = np.random.default_rng(int(config.params["seed"]))
    header, rows, summary, ok = _RUNNERS[config.name](config.params, rng)
    _write_csv(config.params["out"], header, rows)
    status = "pass" if ok else "VIOLATION"
    print(f"{config.name}: {summary} [{status}]", file=sys.stderr)
    return 0 if ok else 2


def list_experiments():
    lines = []
    for name in sorted(EXPERIMENTS):
        desc, defaults = EXPERIMENTS[name]
        merged = dict(_COMMON_DEFAULTS)
        merged.update(defaults)
        pretty = " ".join(f"{k}={v}" for k, v in sorted(merged.items()) if k != "out")
        lines.append(f"{name}\n    {desc}\n    defaults: {pretty}")
    return "\n".join(lines)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="lipteich",
        description="numerical experiments comparing Lipschitz and "
        "Teichmuller distance estimators",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run one experiment")
    p_run.add_argument("experiment", choices=sorted(EXPERIMENTS))
    p_run.add_argument("--config", help="key=value config file")
    p_run.add_argument("--set", action="append", default=[], metavar="KEY=VALUE")
    p_run.add_argument("--out", help="CSV output path (default: stdout)")
    p_run.add_argument("--seed", type=int, help="PRNG seed (PCG64)")
    sub.add_parser("list", help="list experiments")
    args = parser.parse_args(argv)

    if args.command == "list":
        print(list_experiments())
        return 0

    try:
        text = ""
        if args.config:
            with open(args.config) as fh:
                text = fh.read()
        for item in args.set:
            if "=" not in item:
                raise ConfigError(f"--set expects key=value, got {item!r}")
            text += "\n" + item
        config = validate_config(text, args.experiment)
        if args.out is not None:
            config.params["out"] = args.out
        if args.seed is not None:
            config.params["seed"] = args.seed
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
