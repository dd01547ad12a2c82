"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that the terminal summary prints at the end
of the run (see ``conftest.pytest_terminal_summary``).
"""

import math
import time

import numpy as np
import pytest

from tempeur.bounds import (
    berta_check,
    conditioned_bound,
    m_witness,
    mu_check,
    spin_overlap_c,
)
from tempeur.infotheory import binary_entropy, conditional_entropy
from tempeur.lhsmodel import theorem_sweep
from tempeur.numkernel import expm_skew_hermitian
from tempeur.quantum import (
    BipartiteState,
    DensityMatrix,
    Observable,
    bell_state,
    fourier_pair,
    random_density_matrix,
    random_observable,
    rotor_observables,
    sequential_joint,
)
from tempeur.scancli import ScanConfig, main, run_scan
from tempeur.spin import SpinLabel, spin_operators, wigner_small_d

RESULTS = {}

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
FIG1_SPINS = (1, 2, 3, 4)  # twice_s for s = 1/2, 1, 3/2, 2


def record(n, title, ok, detail):
    RESULTS[n] = f"[{'PASS' if ok else 'FAIL'}] {n}. {title}: {detail}"
    assert ok, RESULTS[n]


def pauli_rotor(theta, phi):
    return tuple(Observable(2 * o.matrix) for o in rotor_observables(1, theta, phi))


def test_1_qubit_closed_forms():
    rng = np.random.default_rng(1)
    rho = DensityMatrix.maximally_mixed(2)
    t0 = time.perf_counter()
    p_err = h_err = 0.0
    for theta, phi in rng.uniform(0, 2 * math.pi, size=(100, 2)):
        x0, x, z0, z = pauli_rotor(theta, phi)
        for angle, first, second in ((theta, x0, x), (phi, z0, z)):
            j = sequential_joint(rho, first, second)
            for a in (-1, 1):
                for b in (-1, 1):
                    closed = 0.25 * (1 + a * b * math.cos(angle))
                    p_err = max(p_err, abs(j.reindexed([a], [b])[0, 0] - closed))
            h_err = max(h_err, abs(conditional_entropy(j) - binary_entropy(math.cos(angle / 2) ** 2)))
    elapsed = time.perf_counter() - t0
    ok = p_err <= 1e-12 and h_err <= 1e-12 and elapsed < 1.0
    record(1, "qubit closed forms", ok, f"max|dP|={p_err:.2e} max|dH|={h_err:.2e} (tol 1e-12) in {elapsed:.2f}s (<1s)")


def test_2_wigner_oracle_equivalence():
    t0 = time.perf_counter()
    worst = 0.0
    for twice_s in range(1, 11):
        _, sy, _ = spin_operators(twice_s)
        for theta in np.linspace(0, 2 * math.pi, 50):
            worst = max(worst, np.abs(wigner_small_d(twice_s, theta).matrix - expm_skew_hermitian(sy, theta)).max())
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-10 and elapsed < 5.0
    record(2, "Wigner sum vs matrix exponential (s<=5, 50 angles)", ok, f"max err {worst:.2e} (<1e-10) in {elapsed:.2f}s (<5s)")


def test_3_maassen_uffink_sweep():
    rng = np.random.default_rng(3)
    t0 = time.perf_counter()
    violations, min_slack, draws = 0, math.inf, 0
    for d in (2, 3, 4, 5):
        for _ in range(2500):
            rho = random_density_matrix(d, rng, n_pure=int(rng.integers(1, d + 1)))
            x, z = random_observable(d, rng), random_observable(d, rng)
            rep = mu_check(rho, x, z)
            violations += rep.slack < -1e-9
            min_slack = min(min_slack, rep.slack)
            draws += 1
    elapsed = time.perf_counter() - t0
    ok = draws == 10_000 and violations == 0 and elapsed < 30.0
    record(3, "Maassen-Uffink sweep", ok, f"{draws} draws, {violations} violations, min slack {min_slack:.3e}, {elapsed:.1f}s (<30s)")


def test_4_berta_bound():
    t0 = time.perf_counter()
    x, z = Observable(SX), Observable(SZ)
    bell = berta_check(bell_state(2), x, z)
    bell_ok = abs(bell.lhs) <= 1e-10 and abs(bell.rhs) <= 1e-10
    rng = np.random.default_rng(4)
    violations, min_slack = 0, math.inf
    for k in range(1000):
        d = 2 if k % 2 == 0 else 3
        rho = BipartiteState((d, d), random_density_matrix(d * d, rng, n_pure=int(rng.integers(1, 5))))
        rep = berta_check(rho, random_observable(d, rng), random_observable(d, rng))
        violations += rep.slack < -1e-9
        min_slack = min(min_slack, rep.slack)
    elapsed = time.perf_counter() - t0
    ok = bell_ok and violations == 0 and elapsed < 60.0
    record(
        4,
        "Berta quantum-memory bound",
        ok,
        f"Bell lhs={bell.lhs:.1e} rhs={bell.rhs:.1e}; 1000 random states, {violations} violations, "
        f"min slack {min_slack:.3e}, {elapsed:.1f}s (<60s)",
    )


def test_5_theorem_certificate():
    parts = []
    ok = True
    for dim in (2, 3):
        x, z = fourier_pair(dim)
        s = theorem_sweep(dim, 1000, x, z, seed=50 + dim)
        ok &= s.violations == 0 and s.min_member_mu_slack >= -1e-9 and s.min_averaging_slack >= -1e-9
        parts.append(
            f"dim {dim}: {s.violations} violations, min slack {s.min_slack:.3e}, "
            f"per-member MU {s.min_member_mu_slack:.3e}, averaging {s.min_averaging_slack:.1e}"
        )
    record(5, "temporal steering inequality for hidden-state models", ok, "; ".join(parts))


def test_6_figure_reproduction():
    t0 = time.perf_counter()
    fractions, origins = [], []
    for twice_s in FIG1_SPINS:
        res = run_scan(ScanConfig(twice_s=twice_s, resolution=101))
        fractions.append(res.negative_fraction)
        origins.append(res.grid[0, 0])
    elapsed = time.perf_counter() - t0
    origin_ok = all(
        o == pytest.approx(2 * math.log2(spin_overlap_c(ts)), abs=1e-12) and o < 0 for ts, o in zip(FIG1_SPINS, origins)
    )
    half_ok = abs(origins[0] + 1) <= 1e-12
    decreasing = all(a > b for a, b in zip(fractions, fractions[1:]))
    ok = origin_ok and half_ok and decreasing and elapsed < 60.0
    record(
        6,
        "spin-s witness scans",
        ok,
        "negative fractions "
        + ", ".join(f"s={SpinLabel(ts)}: {f:.4f}" for ts, f in zip(FIG1_SPINS, fractions))
        + f"; M(0,0) = {', '.join(f'{o:.6f}' for o in origins)}; {elapsed:.2f}s (<60s)",
    )


def test_7_conditioned_bound():
    rho = DensityMatrix.maximally_mixed(2)
    grid = np.linspace(0, 2 * math.pi, 101)
    x_obs = [rotor_observables(1, th, 0.0)[:2] for th in grid]
    z_obs = [rotor_observables(1, 0.0, ph)[2:] for ph in grid]
    grid_viol, grid_min = 0, math.inf
    for x0, x in x_obs:
        for z0, z in z_obs:
            rep = conditioned_bound(rho, x0, x, z0, z)
            grid_viol += not rep.satisfied
            grid_min = min(grid_min, rep.slack)
    rng = np.random.default_rng(7)
    rand_viol, rand_min = 0, math.inf
    for _ in range(1000):
        obs = [random_observable(3, rng) for _ in range(4)]
        rep = conditioned_bound(random_density_matrix(3, rng, n_pure=int(rng.integers(1, 4))), *obs)
        rand_viol += not rep.satisfied
        rand_min = min(rand_min, rep.slack)
    ok = grid_viol == 0 and rand_viol == 0
    record(
        7,
        "conditioned bound floor",
        ok,
        f"s=1/2 grid 101x101: {grid_viol} violations (min slack {grid_min:.2e}); "
        f"1000 qutrit configs: {rand_viol} violations (min slack {rand_min:.2e})",
    )


def test_8_scan_determinism(tmp_path):
    blobs = {}
    for twice_s in (1, 4):
        for threads in (1, 4):
            for rep in range(2):
                out = tmp_path / f"s{twice_s}_t{threads}_{rep}.csv"
                code = main(["scan", "--spin", f"{twice_s}/2", "--threads", str(threads), "--out", str(out)])
                assert code == 0
                blobs.setdefault(twice_s, set()).add(out.read_bytes())
    ok = all(len(v) == 1 for v in blobs.values())
    record(8, "byte-identical scans across thread counts {1, 4}", ok, f"distinct outputs per spin: {[len(v) for v in blobs.values()]}")
