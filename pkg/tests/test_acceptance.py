"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import math
import time

import numpy as np

from scalefield import gauge_covariant as gc
from scalefield import gauge_paths as gp
from scalefield import quantum_scaling as qs
from scalefield import scaled_algebra as sa
from scalefield.experiment_cli import ExperimentConfig, run_commerce_demo
from scalefield.experiment_cli.config import EXPERIMENTS
from scalefield.experiment_cli.main import main
from scalefield.fields import LinearScalar, QuadraticScalar, SineScalar
from scalefield.gauge_paths import GaugeFieldSpec, PolylinePath


def fit_order(sizes, errors):
    """Least-squares slope of ``log error`` against ``log size`` over nonzero errors."""
    s = np.asarray(sizes, dtype=float)
    e = np.asarray(errors, dtype=float)
    keep = e > 0
    return float(np.polyfit(np.log(s[keep]), np.log(e[keep]), 1)[0])


def test_criterion_1_axioms(criterion):
    t0 = time.perf_counter()
    errs = sa.law_errors(np.random.default_rng(20240101), 10_000, (0.1, 10.0), (1e-3, 1e3))
    dt = time.perf_counter() - t0
    worst_law = max(errs, key=errs.get)
    ok = errs[worst_law] <= 1e-12 and dt < 5.0 and len(errs) == 16
    criterion(1, ok, f"{len(errs)} laws x 10000 cases, worst {worst_law}={errs[worst_law]:.2e} (tol 1e-12), {dt:.2f} s")
    assert ok


def test_criterion_2_analytic_scaling(criterion):
    t0 = time.perf_counter()
    err = sa.analytic_scaling_errors(np.random.default_rng(7), 1000, max_degree=8)
    dt = time.perf_counter() - t0
    ok = err <= 1e-10 and dt < 2.0
    criterion(2, ok, f"1000 polynomials deg<=8, worst rel error {err:.2e} (tol 1e-10), {dt:.2f} s")
    assert ok


def test_criterion_3_path_algebra(criterion):
    t0 = time.perf_counter()
    sine = GaugeFieldSpec.gradient(SineScalar(0.5, (1.0, 0.7), 0.2))
    quad = GaugeFieldSpec.gradient(QuadraticScalar(((1.0, 0.3), (0.3, 0.5)), (0.2, -0.1)))
    rot = GaugeFieldSpec.rotational(0.05, dim=2)
    const = GaugeFieldSpec.constant((0.05, -0.02))
    rng = np.random.default_rng(3)

    algebra = 0.0
    for spec in (sine, quad, rot, const):
        for _ in range(25):
            x, via, y = rng.uniform(-2, 2, size=(3, 2))
            p1, p2 = PolylinePath([x, via]), PolylinePath([via, y])
            path = p1.then(p2)
            fwd = gp.path_scale(spec, path).value
            algebra = max(algebra, abs(fwd * gp.path_scale(spec, path.reversed()).value - 1))
            parts = gp.path_scale(spec, p1).value * gp.path_scale(spec, p2).value
            algebra = max(algebra, abs(fwd - parts) / parts)

    x, y = np.array([-0.7, -0.7]), np.array([0.9, 0.9])
    exact = float(gp.exact_scale_factor(sine, x, y))
    steps = [8, 16, 32, 64, 128]
    errs = [abs(gp.straight_line_scale(sine, x, y, n).value - exact) for n in steps]
    order = -fit_order(steps, errs)
    pair_min = min(math.log2(a / b) for a, b in zip(errs, errs[1:]))

    region = ([-1.0, -1.0], [1.0, 1.0])
    grads_ok = all(gp.integrability_check(s, region, 0.25, 1e-6, steps=256)[0] for s in (sine, quad))
    rot_flagged = not gp.integrability_check(rot, region, 0.25, 1e-6)[0]

    square = PolylinePath([[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]])
    stokes = abs(gp.loop_residual(rot, square, 256) - abs(math.expm1(2 * 0.05 * 1.0)))
    dt = time.perf_counter() - t0
    ok = algebra <= 1e-12 and min(order, pair_min) >= 1.8 and grads_ok and rot_flagged and stokes <= 1e-6 and dt < 10
    criterion(
        3, ok,
        f"reciprocity/concatenation {algebra:.1e}, quadrature order {order:.3f} (min pair {pair_min:.3f}), "
        f"gradients integrable={grads_ok}, rotational flagged={rot_flagged}, Stokes gap {stokes:.1e}, {dt:.2f} s",
    )
    assert ok


def test_criterion_4_standard_reduction(criterion):
    t0 = time.perf_counter()
    g = qs.Grid((-10.0,), (10.0,), (256,))
    harmonic = qs.HamiltonianParams(potential=QuadraticScalar.isotropic(1.0, 1))
    psi = qs.gaussian_packet(g, [1.5], 1.0, [0.4])
    g2 = qs.Grid.cube(-6.0, 6.0, 48, 2)
    psi2 = qs.gaussian_packet(g2, [0.5, -1.0], 1.0, [0.2, 0.1])
    p2 = qs.HamiltonianParams(potential=QuadraticScalar.isotropic(0.5, 2))

    def identical(psi, spec, params, x0):
        checks = [
            np.array_equal(qs.scaled_packet(psi, spec, x0).amp, psi.amp),
            np.array_equal(qs.position_expectation_scaled(psi, spec, x0), qs.standard_expectation(psi)),
            np.array_equal(
                qs.position_expectation_scaled(psi, spec, x0, normalized=True),
                qs.standard_expectation(psi, normalized=True),
            ),
            np.array_equal(qs.hamiltonian_apply(psi, spec, params).amp, qs.standard_hamiltonian(psi, params).amp),
        ]
        checks += [
            np.array_equal(qs.momentum_apply(psi, spec, params, a).amp, qs.standard_momentum(psi, params, a).amp)
            for a in range(psi.grid.dim)
        ]
        return all(checks)

    specs1 = [GaugeFieldSpec.zero(1), GaugeFieldSpec.constant((0.3,), coupling=0.0),
              GaugeFieldSpec.gradient(SineScalar(0.4, (1.0,)), coupling=0.0)]
    specs2 = [GaugeFieldSpec.zero(2), GaugeFieldSpec.rotational(0.2, dim=2, coupling=0.0),
              GaugeFieldSpec.gradient(QuadraticScalar.isotropic(0.1, 2), coupling=0.0)]
    bit = all(identical(psi, s, harmonic, [-12.0]) for s in specs1)
    bit &= all(identical(psi2, s, p2, [-7.0, 7.0]) for s in specs2)

    mean_err = abs(qs.standard_expectation(psi, normalized=True)[0] - 1.5)
    ground = qs.gaussian_packet(g, [0.0], math.sqrt(0.5))
    energy = qs.operator_expectation(ground, qs.standard_hamiltonian(ground, harmonic)).real
    e_rel = abs(energy - 0.5) / 0.5
    dt = time.perf_counter() - t0
    ok = bit and mean_err <= 1e-10 and e_rel < 0.01 and dt < 5
    criterion(4, ok, f"g_r=0 bit-identical={bit}, |<x>-mu|={mean_err:.1e}, <H>={energy:.6f} "
                     f"({100 * e_rel:.3f}% from 1/2), {dt:.2f} s")
    assert ok


def test_criterion_5_anchor_relation(criterion):
    t0 = time.perf_counter()
    g = qs.Grid.cube(-5.0, 5.0, 32, 3)
    psi = qs.gaussian_packet(g, [0.5, -0.3, 0.2], 1.0)
    fields = [
        GaugeFieldSpec.constant((0.05, -0.03, 0.02)),
        GaugeFieldSpec.gradient(QuadraticScalar.isotropic(0.05, 3)),
        GaugeFieldSpec.gradient(QuadraticScalar(((0.1, 0.02, 0.0), (0.02, 0.05, 0.01), (0.0, 0.01, 0.08)), (0.3, 0.1, -0.2))),
    ]
    V = ([-2.0, -2.0, -2.0], [2.0, 2.0, 2.0])
    pairs = [
        ([-2.0, -2.0, -2.0], [2.0, 2.0, 2.0]),
        ([-2.0, 0.0, 0.0], [2.0, 0.0, 0.0]),
        ([0.5, -2.0, 1.0], [-1.0, 0.3, 2.0]),
        ([2.0, 2.0, -2.0], [-2.0, 1.5, 0.5]),
    ]
    worst = max(qs.anchor_relation_check(psi, A, V, z, w) for A in fields for z, w in pairs)
    dt = time.perf_counter() - t0
    ok = worst <= 1e-10 and dt < 20
    criterion(5, ok, f"3 fields x 4 anchor pairs on 32^3, worst residual {worst:.2e} (tol 1e-10), {dt:.2f} s")
    assert ok


def _sweep(grid, psi, A, divisions):
    std = qs.standard_expectation(psi)
    deltas, errs = [], []
    for k in divisions:
        part = qs.DetectorPartition(grid.extent[0] / k)
        deltas.append(part.delta)
        errs.append(float(np.linalg.norm(qs.detector_expectation(psi, A, part) - std)))
    whole = qs.DetectorPartition(grid.extent[0])
    single = qs.detector_expectation(psi, A, whole)
    # volume-scaled packet over the whole box, anchored at its corner
    vol = qs.volume_scaled_packet(psi, A, (grid.lo, grid.hi), grid.lo, np.asarray(grid.lo) - 1.0)
    weights = (np.conj(psi.amp) * vol.amp).real
    vol_exp = np.array([np.sum(grid.points[..., a] * weights) for a in range(grid.dim)]) * grid.cell_volume
    return deltas, errs, float(np.max(np.abs(single - vol_exp)))


def test_criterion_6_detector_convergence(criterion):
    t0 = time.perf_counter()
    divisions = (8, 16, 32, 64)
    g1 = qs.Grid((-10.0,), (10.0,), (4096,))
    d1, e1, gap1 = _sweep(g1, qs.gaussian_packet(g1, [1.5], 1.0), GaugeFieldSpec.constant((0.05,)), divisions)
    order1 = fit_order(d1, e1)
    mono1 = all(b < a for a, b in zip(e1, e1[1:]))

    g3 = qs.Grid.cube(-10.0, 10.0, 64, 3)
    psi3 = qs.gaussian_packet(g3, [1.5, -1.0, 0.5], 2.0)
    d3, e3, gap3 = _sweep(g3, psi3, GaugeFieldSpec.constant((0.05, 0.05, 0.05)), divisions)
    order3 = fit_order(d3, e3)
    mono3 = all(b < a for a, b in zip(e3, e3[1:]))
    dt = time.perf_counter() - t0
    ok = mono1 and mono3 and order1 >= 0.9 and order3 >= 0.9 and max(gap1, gap3) <= 1e-12 and dt < 30
    criterion(
        6, ok,
        f"1d n=4096 errors {', '.join(f'{e:.3e}' for e in e1)} order {order1:.3f}; "
        f"3d 64^3 errors {', '.join(f'{e:.3e}' for e in e3)} order {order3:.3f}; "
        f"delta=L gap {max(gap1, gap3):.1e}, {dt:.2f} s",
    )
    assert ok


def test_criterion_7_gauge_invariance(criterion):
    t0 = time.perf_counter()

    def ring(n, dim=1):
        return qs.Grid((0.0,) * dim, (2 * math.pi,) * dim, (n,) * dim)

    def sample(grid, n_int):
        s = grid.points.sum(axis=-1)
        first = np.exp(1j * s) * (1 + 0.3 * np.cos(2 * s))
        if n_int == 1:
            return gc.InternalField(grid, first)
        return gc.InternalField(grid, np.stack([first, 0.5 * np.exp(-1j * s) * (1 + 0.2 * np.sin(s))], axis=-1))

    def pots(dim, n_int):
        omega = tuple(GaugeFieldSpec.constant((v,) * dim) for v in (0.2, -0.1, 0.4)) if n_int == 2 else None
        return gc.GaugePotentials(GaugeFieldSpec.constant((0.05,) * dim), GaugeFieldSpec.constant((0.3,) * dim),
                                  omega, 1.3, 0.8, n_int)

    exact = 0.0
    a_same = True
    for dim, n_int in ((1, 1), (1, 2), (2, 1), (2, 2)):
        g = ring(128 if dim == 1 else 32, dim)
        t = gc.U1Transform(SineScalar(0.7, (1.0,) * dim, 0.3))
        f, p = sample(g, n_int), pots(dim, n_int)
        for axis in range(dim):
            exact = max(exact, gc.gauge_invariance_residual(f, p, t, axis, "exact"))
        _, q = gc.u1_transform(f, p, t)
        a_same &= q.A is p.A and q.A == p.A and q.omega is p.omega

    t = gc.U1Transform(SineScalar(0.7, (1.0,), 0.3))
    sizes = [32, 64, 128, 256]
    first = [gc.gauge_invariance_residual(sample(ring(n), 1), pots(1, 1), t, 0, "first_order") for n in sizes]
    order = -fit_order(sizes, first)

    lin_gap = 0.0
    for k in (0.8, -2.5, 7.0):
        _, q = gc.u1_transform(sample(ring(256), 1), pots(1, 1), gc.U1Transform(LinearScalar((k,))))
        scale = 0.3 + abs(k) / 1.3
        lin_gap = max(lin_gap, float(np.max(np.abs(q.xi.values - (0.3 - k / 1.3)))) / scale)
    dt = time.perf_counter() - t0
    ok = a_same and exact <= 1e-12 and order >= 0.9 and lin_gap <= 8 * np.finfo(float).eps and dt < 5
    criterion(7, ok, f"A unchanged={a_same}, exact-link residual {exact:.1e}, first-order order {order:.3f}, "
                     f"linear-phase shift gap {lin_gap:.1e} relative, {dt:.2f} s")
    assert ok


def test_criterion_8_commerce(criterion):
    t0 = time.perf_counter()
    report = run_commerce_demo(ExperimentConfig("commerce-demo"))
    rows = report.tables[0].rows
    couplings = sorted({r[0] for r in rows})
    exact = all(r[3] == (3.25 + 0.5j) for r in rows)
    by_pair = {pair: {r[5] for r in rows if r[1] == pair} for pair in ("equal", "unequal")}
    routes = {r[2] for r in rows}
    dt = time.perf_counter() - t0
    ok = (report.passed and exact and by_pair == {"equal": {True}, "unequal": {False}}
          and couplings == [0.0, 0.1, 1.0] and routes == {"direct", "detour"} and dt < 1)
    criterion(8, ok, f"verdicts {by_pair} over g_r={couplings} and routes {sorted(routes)}, "
                     f"transport exact={exact}, {dt:.3f} s")
    assert ok


def test_criterion_9_determinism(criterion, tmp_path, capsys):
    t0 = time.perf_counter()
    mismatched = []
    for experiment in EXPERIMENTS:
        outputs = []
        for rep in ("a", "b"):
            out = tmp_path / rep / f"{experiment}.csv"
            code = main([experiment, "--out", str(out), "--seed", "11"])
            assert code == 0, experiment
            outputs.append({p.name: p.read_bytes() for p in sorted(out.parent.glob(f"{experiment}*.csv"))})
        if outputs[0] != outputs[1] or not outputs[0]:
            mismatched.append(experiment)
    capsys.readouterr()
    dt = time.perf_counter() - t0
    ok = not mismatched
    criterion(9, ok, f"{len(EXPERIMENTS)} subcommands run twice, byte-identical CSV "
                     f"{'for all' if ok else 'except ' + ', '.join(mismatched)}, {dt:.2f} s")
    assert ok
