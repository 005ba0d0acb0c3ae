"""Sweep orchestration and report assembly for the command line.

Every trial is an independent work item keyed by ``(dim, trial)`` and seeded
from ``(config.seed, dim, trial)``, so a report depends only on its config.
Failures are counted, never raised; each one carries enough payload
(matrices, t, seed) to be replayed with ``check-pair``.
"""
import datetime
import math
from dataclasses import asdict, dataclass

import numpy as np

from pslab import classical, exterior
from pslab._kernels import BACKEND
from pslab.channel import check_t, lemma1_identity_check, star
from pslab.errors import PslabError, ValidationError
from pslab.hermitian import (
    as_density,
    eigvals_descending,
    matrix_to_json,
    random_contraction,
    random_density,
)
from pslab.majorization import (
    check_epi,
    hlp_witness,
    majorizes,
    shannon_entropy,
    theorem1_equality_detect,
    theorem1_sequences,
)
from pslab.tolerances import (
    TOL_CLS,
    TOL_EPI,
    TOL_LEMMA1,
    TOL_LIFT_ALG,
    TOL_LIFT_EIG,
    TOL_MAJOR,
    scaled,
)

CHECKS = ("theorem1", "epi", "lemma1", "lift", "classical")


@dataclass(frozen=True)
class SweepConfig:
    seed: int
    dims: tuple
    t_grid: tuple
    trials: int
    checks: tuple = ("theorem1", "epi")
    equal_pair: bool = False
    classical_dx: float = 0.01

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "t_grid", tuple(float(t) for t in self.t_grid))
        object.__setattr__(self, "checks", tuple(dict.fromkeys(self.checks)))
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValidationError(f"dims must be positive integers, got {self.dims}")
        if not self.t_grid:
            raise ValidationError("t_grid must not be empty")
        for t in self.t_grid:
            check_t(t)
        if int(self.trials) < 1:
            raise ValidationError(f"trials must be >= 1, got {self.trials}")
        unknown = set(self.checks) - set(CHECKS)
        if unknown or not self.checks:
            raise ValidationError(f"checks must be a non-empty subset of {CHECKS}, got {self.checks}")
        if "lift" in self.checks and max(self.dims) > exterior.MAX_DIM:
            raise ValidationError(f"lift check limited to dims <= {exterior.MAX_DIM}")

    def to_json(self):
        out = asdict(self)
        out["dims"] = list(self.dims)
        out["t_grid"] = list(self.t_grid)
        out["checks"] = list(self.checks)
        return out


def trial_seed(seed, dim, trial):
    return int(np.random.SeedSequence([int(seed), int(dim), int(trial)]).generate_state(1, np.uint64)[0])


def trial_inputs(seed, dim, equal_pair=False):
    """States and contractions for one trial, all drawn from one generator."""
    rng = np.random.default_rng(seed)
    rho = random_density(rng, dim)
    sigma = random_density(rng, dim)
    if equal_pair:
        sigma = rho.copy()
    a = random_contraction(rng, dim)
    b = random_contraction(rng, dim)
    return rho, sigma, a, b


class _Tally:
    def __init__(self, checks):
        self.counts = {c: {"pass": 0, "fail": 0} for c in checks}
        self.worst = {}
        self.failures = []

    def record(self, check, ok, payload=None):
        self.counts[check]["pass" if ok else "fail"] += 1
        if not ok:
            self.failures.append(payload)

    def low(self, key, value):
        self.worst[key] = min(self.worst.get(key, math.inf), float(value))

    def high(self, key, value):
        self.worst[key] = max(self.worst.get(key, -math.inf), float(value))


def _pair_payload(check, dim, t, trial, seed, rho=None, sigma=None, detail=None, **extra):
    out = {"check": check, "dim": dim, "t": t, "trial": trial, "seed": seed}
    if rho is not None:
        out["rho"] = matrix_to_json(rho)
        out["sigma"] = matrix_to_json(sigma)
    out.update(extra)
    out["detail"] = detail or {}
    return out


def _run_theorem1(tally, ctx, lam, kappa):
    verdict = majorizes(lam, kappa)
    tally.low("prefix_gap", verdict.worst_gap)
    ok = verdict.holds
    detail = {"prefix_gaps": [float(g) for g in verdict.prefix_gaps], "equality": verdict.is_equality}
    if ok:
        try:
            w = hlp_witness(kappa, lam).validate()
            resid = float(np.max(np.abs(w.matrix @ lam - kappa)))
        except PslabError as exc:
            resid = math.inf
            detail["witness_error"] = str(exc)
        tally.high("witness_residual", resid)
        ok = resid <= scaled(TOL_MAJOR)
        detail["witness_residual"] = resid
    tally.record("theorem1", ok, None if ok else _pair_payload("theorem1", **ctx, detail=detail))


def _run_epi(tally, ctx, t, lam_r, lam_s, lam, kappa, equal_pair):
    s_out = shannon_entropy(kappa)
    s_mix = shannon_entropy(lam)
    s_in = t * shannon_entropy(lam_r) + (1.0 - t) * shannon_entropy(lam_s)
    gap = s_out - s_in
    tol = scaled(TOL_EPI)
    tally.low("entropy_gap", gap)
    chain = (s_out - s_mix, s_mix - s_in)
    tally.low("chain_gap", min(chain))
    ok = gap >= -tol and min(chain) >= -tol
    if equal_pair:
        tally.high("equal_pair_abs_gap", abs(gap))
        ok = ok and abs(gap) <= tol
    detail = {"entropy_gap": gap, "chain": list(chain)}
    tally.record("epi", ok, None if ok else _pair_payload("epi", **ctx, detail=detail))


def _run_lemma1(tally, ctx, a, b, t):
    resid = lemma1_identity_check(a, b, t)
    tally.high("identity_residual", resid)
    top = float(eigvals_descending(star(a, b, t))[0])
    bound = t * float(eigvals_descending(a)[0]) + (1.0 - t) * float(eigvals_descending(b)[0])
    tally.low("lemma1_bound_gap", bound - top)
    ok = resid <= scaled(TOL_LEMMA1) and top <= bound + scaled(TOL_LIFT_EIG)
    payload = None
    if not ok:
        payload = _pair_payload(
            "lemma1", ctx["dim"], ctx["t"], ctx["trial"], ctx["seed"],
            A=matrix_to_json(a), B=matrix_to_json(b),
            detail={"residual": resid, "bound_gap": bound - top},
        )
    tally.record("lemma1", ok, payload)


def _run_lift(tally, ctx, rho, sigma, t, kappa):
    worst_eig = worst_alg = 0.0
    worst_kf = -math.inf
    for k in range(1, rho.shape[0] + 1):
        worst_eig = max(worst_eig, exterior.top_eigen_sum_check(rho, k))
        worst_alg = max(worst_alg, exterior.commutator_lift_check(rho, sigma, k))
        kf = exterior.ky_fan_via_lift(rho, sigma, t, k)
        worst_alg = max(worst_alg, kf.lift_residual)
        worst_kf = max(worst_kf, kf.lhs - kf.rhs)
        worst_eig = max(worst_eig, abs(kf.lhs - float(np.sum(kappa[:k]))))
    tally.high("lift_eig_residual", worst_eig)
    tally.high("identity_residual", worst_alg)
    tally.high("ky_fan_excess", worst_kf)
    ok = worst_eig <= scaled(TOL_LIFT_EIG) and worst_alg <= scaled(TOL_LIFT_ALG) and worst_kf <= scaled(TOL_LIFT_EIG)
    detail = {"eig_residual": worst_eig, "algebraic_residual": worst_alg, "ky_fan_excess": worst_kf}
    tally.record("lift", ok, None if ok else _pair_payload("lift", **ctx, detail=detail))


def _run_classical(tally, ctx, t, seed, dx):
    rng = np.random.default_rng(seed)
    rho = classical.random_family(int(rng.integers(2**63)), dx=dx)
    sigma = classical.random_family(int(rng.integers(2**63)), dx=dx)
    theta = math.acos(math.sqrt(t))
    detail = {"theta": theta}
    try:
        if 0.0 < theta < math.pi / 2:
            ok, gap = classical.check_classical_epi(rho, sigma, theta)
        else:
            # endpoint: the mixture is one of the inputs, so the gap is identically zero
            ok, gap = True, 0.0
        detail["gap"] = gap
        tally.low("classical_gap", gap)
    except PslabError as exc:
        ok = False
        detail["error"] = str(exc)
    tally.record("classical", ok, None if ok else _pair_payload(
        "classical", ctx["dim"], ctx["t"], ctx["trial"], ctx["seed"], detail=detail))


def cmd_sweep(config, timestamp=True):
    """Run every configured check on every ``(dim, trial, t)`` and aggregate a report dict."""
    tally = _Tally(config.checks)
    for dim in config.dims:
        for trial in range(int(config.trials)):
            seed = trial_seed(config.seed, dim, trial)
            rho, sigma, a, b = trial_inputs(seed, dim, config.equal_pair)
            lam_r = eigvals_descending(rho)
            lam_s = eigvals_descending(sigma)
            for t in config.t_grid:
                ctx = {"dim": dim, "t": t, "trial": trial, "seed": seed, "rho": rho, "sigma": sigma}
                lam = t * lam_r + (1.0 - t) * lam_s
                kappa = eigvals_descending(star(rho, sigma, t))
                if "theorem1" in config.checks:
                    _run_theorem1(tally, ctx, lam, kappa)
                if "epi" in config.checks:
                    _run_epi(tally, ctx, t, lam_r, lam_s, lam, kappa, config.equal_pair)
                if "lemma1" in config.checks:
                    _run_lemma1(tally, ctx, a, b, t)
                if "lift" in config.checks:
                    _run_lift(tally, ctx, rho, sigma, t, kappa)
                if "classical" in config.checks:
                    _run_classical(tally, ctx, t, seed, config.classical_dx)

    failures = sorted(tally.failures, key=lambda f: (f["check"], f["dim"], f["trial"], f["t"]))
    report = {
        "config": config.to_json(),
        "backend": BACKEND,
        "checks": tally.counts,
        "worst": dict(sorted(tally.worst.items())),
        "failures": failures,
        "ok": not failures,
    }
    if timestamp:
        report["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return report


def cmd_check_pair(rho, sigma, t, witness=False, seed=None):
    """Full verdict for one pair: prefix gaps, entropy gap, equality verdicts, optional witness."""
    t = check_t(t)
    rho = as_density(rho, "rho")
    sigma = as_density(sigma, "sigma")
    lam, kappa = theorem1_sequences(rho, sigma, t)
    verdict = majorizes(lam, kappa)
    epi_ok, gap = check_epi(rho, sigma, t)
    report = {
        "t": t,
        "dim": int(rho.shape[0]),
        "prefix_gaps": [float(g) for g in verdict.prefix_gaps],
        "entropy_gap": float(gap),
        "equality": verdict.is_equality,
        "seed": seed,
        "theorem1_holds": verdict.holds,
        "epi_holds": bool(epi_ok),
        "common_ordered_eigenbasis": theorem1_equality_detect(rho, sigma),
        "output_spectrum": [float(x) for x in kappa],
        "majorant": [float(x) for x in lam],
    }
    report["ok"] = verdict.holds and bool(epi_ok)
    if witness and verdict.holds:
        w = hlp_witness(kappa, lam).validate()
        report["witness"] = w.matrix.tolist()
        report["witness_residual"] = float(np.max(np.abs(w.matrix @ lam - kappa)))
    return report


def cmd_classical(rho, sigma, theta):
    """Entropies, EPI gap and moment-transport residuals for two grid densities."""
    out, drift = classical.scaled_convolution_with_drift(rho, sigma, theta)
    c, s = math.cos(theta), math.sin(theta)
    s_rho = classical.differential_entropy(rho)
    s_sigma = classical.differential_entropy(sigma)
    s_out = classical.differential_entropy(out)
    gap = s_out - c * c * s_rho - s * s * s_sigma
    mean_res = out.mean() - (c * rho.mean() + s * sigma.mean())
    var_res = out.variance() - (c * c * rho.variance() + s * s * sigma.variance())
    tol = scaled(TOL_CLS)
    return {
        "theta": float(theta),
        "S_rho": s_rho,
        "S_sigma": s_sigma,
        "S_out": s_out,
        "gap": gap,
        "holds": gap >= -tol,
        "mass_drift": drift,
        "mean_residual": mean_res,
        "var_residual": var_res,
        "ok": gap >= -tol,
    }
