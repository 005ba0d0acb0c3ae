"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines appear in
the terminal even when output capture is on.
"""
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from pslab.channel import convolve_explicit, convolve_via_trace, lemma1_identity_check
from pslab.classical import check_classical_epi, gaussian_grid, random_family
from pslab.exterior import commutator_lift_check, ky_fan_via_lift, top_eigen_sum_check
from pslab.harness import SweepConfig, cmd_sweep
from pslab.hermitian import (
    eigen_descending,
    eigvals_descending,
    random_contraction,
    random_density,
)
from pslab.majorization import check_epi

from conftest import SQ3_4, h

THEOREM1_DIMS = tuple(range(2, 9))
THEOREM1_TRIALS = 1429  # x 7 dims >= 10,000 pairs
THEOREM1_T = (0.1, 0.3, 0.5, 0.7, 0.9)


def announce(capsys, name, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def theorem1_report():
    cfg = SweepConfig(seed=2016, dims=THEOREM1_DIMS, t_grid=THEOREM1_T, trials=THEOREM1_TRIALS,
                      checks=("theorem1", "epi"))
    start = time.perf_counter()
    report = cmd_sweep(cfg)
    return report, time.perf_counter() - start


def test_channel_agreement(capsys):
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    for i in range(1000):
        d = 2 + i % 5
        rho, sigma = random_density(rng, d), random_density(rng, d)
        t = float(rng.uniform())
        worst = max(worst, float(np.max(np.abs(convolve_via_trace(rho, sigma, t) - convolve_explicit(rho, sigma, t)))))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-11 and elapsed < 30
    announce(capsys, "channel agreement", ok, f"1000 triples, max entry diff {worst:.2e}, {elapsed:.1f} s")


def test_theorem1_sweep(capsys, theorem1_report):
    report, elapsed = theorem1_report
    c = report["checks"]["theorem1"]
    n = c["pass"] + c["fail"]
    ok = c["fail"] == 0 and report["worst"]["prefix_gap"] >= -1e-9 and elapsed < 120 and n >= 50000
    announce(capsys, "majorization sweep", ok,
             f"{n} cases, {c['fail']} failures, worst prefix gap {report['worst']['prefix_gap']:.2e}, "
             f"{elapsed:.1f} s (theorem1 + epi + witnesses)")


def test_hlp_witness(capsys, theorem1_report):
    report, _ = theorem1_report
    resid = report["worst"]["witness_residual"]
    ok = report["checks"]["theorem1"]["fail"] == 0 and resid <= 1e-9
    announce(capsys, "HLP witness", ok, f"worst |D lam - kappa| {resid:.2e} over the majorization sweep")


def test_quantum_epi_sweep(capsys, theorem1_report):
    report, _ = theorem1_report
    c = report["checks"]["epi"]
    ok = c["fail"] == 0 and report["worst"]["entropy_gap"] >= -1e-8
    announce(capsys, "quantum EPI sweep", ok,
             f"{c['pass'] + c['fail']} cases, worst gap {report['worst']['entropy_gap']:.2e}, "
             f"worst chain link {report['worst']['chain_gap']:.2e}")


def test_quantum_epi_equal_pairs(capsys):
    cfg = SweepConfig(seed=2017, dims=THEOREM1_DIMS, t_grid=THEOREM1_T, trials=150, checks=("epi",),
                      equal_pair=True)
    report = cmd_sweep(cfg)
    worst = report["worst"]["equal_pair_abs_gap"]
    ok = worst <= 1e-8 and report["checks"]["epi"]["fail"] == 0
    announce(capsys, "quantum EPI equality (rho = sigma)", ok, f"max |gap| {worst:.2e} over 5250 cases")


def _unit_gue(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    hm = (g + g.conj().T) / 2
    return hm / np.max(np.abs(eigvals_descending(hm)))


def test_quantum_epi_near_equality(capsys):
    rng = np.random.default_rng(2016)
    eps = 1e-2
    gaps = []
    for i in range(200):
        d = 2 + i % 7
        rho = random_density(rng, d)
        w, vecs = eigen_descending(_unit_gue(rng, d))
        v = (vecs * np.exp(1j * eps * w)) @ vecs.conj().T  # exp(eps * iH)
        sigma = v @ rho @ v.conj().T
        sigma = (sigma + sigma.conj().T) / 2
        gaps.append(check_epi(rho, sigma, 0.5)[1])
    gaps = np.array(gaps)
    n_bad = int(np.sum(gaps <= 1e-7))
    by_dim = {d: float(gaps[(np.arange(200) % 7) == d - 2].min()) for d in range(2, 9)}
    ok = n_bad == 0
    announce(capsys, "quantum EPI near-equality", ok,
             f"min gap {gaps.min():.2e}, {n_bad}/200 at or below 1e-7; min by dim "
             + ", ".join(f"{d}:{g:.1e}" for d, g in by_dim.items()))


def test_lemma1_identity(capsys):
    rng = np.random.default_rng(303)
    worst = 0.0
    for i in range(1000):
        d = 1 + i % 6
        a, b = random_contraction(rng, d), random_contraction(rng, d)
        worst = max(worst, lemma1_identity_check(a, b, float(rng.uniform())))
    announce(capsys, "contraction identity", worst <= 1e-11, f"max residual {worst:.2e} over 1000 pairs")


def test_exterior_identities(capsys):
    rng = np.random.default_rng(404)
    eig = alg = lift = 0.0
    kf = -math.inf
    for i in range(120):
        d = 1 + i % 6
        rho, sigma = random_density(rng, d), random_density(rng, d)
        a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        b = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        t = float(rng.uniform())
        for k in range(1, d + 1):
            eig = max(eig, top_eigen_sum_check(rho, k), top_eigen_sum_check(random_contraction(rng, d), k))
            alg = max(alg, commutator_lift_check(a, b, k), commutator_lift_check(rho, sigma, k))
            res = ky_fan_via_lift(rho, sigma, t, k)
            kf = max(kf, res.lhs - res.rhs)
            lift = max(lift, res.lift_residual)
    ok = eig <= 1e-8 and alg <= 1e-10 and kf <= 1e-8 and lift <= 1e-10
    announce(capsys, "exterior-power identities", ok,
             f"top-sum {eig:.2e}, commutator {alg:.2e}, Ky Fan excess {kf:.2e}, lift-of-channel {lift:.2e}")


def test_worked_pair(capsys, worked_pair):
    rho, sigma = worked_pair
    out = convolve_explicit(rho, sigma, 0.5)
    spectrum = eigvals_descending(out)
    s_err = float(np.max(np.abs(spectrum - [0.5 + SQ3_4, 0.5 - SQ3_4])))
    gap = check_epi(rho, sigma, 0.5)[1]
    g_err = abs(gap - (h(0.5 + SQ3_4) + h(0.5 - SQ3_4)))
    announce(capsys, "worked 2x2 pair", s_err <= 1e-10 and g_err <= 1e-8,
             f"spectrum error {s_err:.2e}, gap {gap:.7f} (error {g_err:.2e})")


def test_classical_epi(capsys):
    worst = math.inf
    for i in range(10):
        rho, sigma = random_family(2 * i), random_family(2 * i + 1)
        for theta in (math.pi / 8, math.pi / 4, 3 * math.pi / 8):
            worst = min(worst, check_classical_epi(rho, sigma, theta)[1])
    g1, g4 = gaussian_grid(0, 1), gaussian_grid(0, 4)
    gp = check_classical_epi(g1, g4, math.pi / 4)[1]
    gp_err = abs(gp - (0.5 * math.log(2.5) - 0.5 * math.log(2)))
    ge = check_classical_epi(g1, g1, math.pi / 4)[1]
    ok = worst >= -5e-3 and gp_err <= 5e-3 and abs(ge) <= 5e-3
    announce(capsys, "classical EPI", ok,
             f"family worst gap {worst:.4f} (30 cases); Gaussian pair gap {gp:.5f} (error {gp_err:.1e}); "
             f"equal Gaussians {ge:.1e}")


def test_sweep_determinism(capsys, tmp_path):
    texts = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        subprocess.run([sys.executable, "-m", "pslab", "sweep", "--seed", "9", "--dims", "2,3,4",
                        "--trials", "20", "--checks", "theorem1,epi,lemma1,lift,classical", "--out", str(path)],
                       check=True)
        report = json.loads(path.read_text())
        report.pop("timestamp")
        texts.append(json.dumps(report, sort_keys=True))
    announce(capsys, "sweep determinism", texts[0] == texts[1], "two CLI runs, reports identical without timestamp")
