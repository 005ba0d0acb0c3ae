"""Numerical tolerances.

Validation tolerances (``TOL_HERM``, ``TOL_PSD``, ``TOL_TRACE``) are fixed.
Check tolerances, the thresholds a mathematical statement is judged against,
go through :func:`scaled` so that ``PSLAB_TOL_OVERRIDE`` can tighten or loosen
all of them at once for stress testing.
"""
import os

TOL_HERM = 1e-12
TOL_PSD = 1e-10
TOL_TRACE = 1e-10

TOL_MAJOR = 1e-9
TOL_EQ = 1e-9
TOL_WITNESS = 1e-8
TOL_ENTROPY = 1e-9
TOL_EPI = 1e-8
TOL_LEMMA1 = 1e-11
TOL_LIFT_EIG = 1e-8
TOL_LIFT_ALG = 1e-10
TOL_CHANNEL = 1e-11
TOL_COMMUTE = 1e-10
TOL_CLUSTER = 1e-8
TOL_CLS = 5e-3

ENV_OVERRIDE = "PSLAB_TOL_OVERRIDE"


def tolerance_scale():
    raw = os.environ.get(ENV_OVERRIDE)
    if raw is None or raw.strip() == "":
        return 1.0
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{ENV_OVERRIDE} must be a float, got {raw!r}") from None
    if not value > 0.0:
        raise ValueError(f"{ENV_OVERRIDE} must be positive, got {value}")
    return value


def scaled(tol):
    """Return ``tol`` multiplied by the ``PSLAB_TOL_OVERRIDE`` factor."""
    return tol * tolerance_scale()
