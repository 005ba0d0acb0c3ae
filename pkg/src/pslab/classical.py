"""Classical counterpart on the real line: grid densities and the Shannon EPI.

A :class:`GridDensity` stores nodal values ``values[i]`` at
``x_min + i * dx``.  Between nodes the density is the piecewise-linear
interpolant, and it drops to zero one step past either end.  That
interpolant has total mass exactly ``dx * sum(values)``, which is also how
every integral here is evaluated (midpoint rule on cells centred at the nodes).
"""
import json
import math
from dataclasses import dataclass

import numpy as np

from pslab.errors import DomainError, QuadratureError, ResolutionError, ValidationError
from pslab.tolerances import TOL_CLS, scaled

MASS_TOL = 1e-6
MAX_DX = 0.02
DRIFT_TOL = 1e-3
SUPPORT_PAD = 0.10
_CHUNK = 1 << 22


@dataclass(frozen=True, eq=False)
class GridDensity:
    x_min: float
    dx: float
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size == 0:
            raise ValidationError("GridDensity values must be a non-empty 1-D array")
        if not (math.isfinite(self.x_min) and math.isfinite(self.dx) and self.dx > 0):
            raise ValidationError(f"GridDensity needs finite x_min and positive dx, got {self.x_min}, {self.dx}")
        if not np.all(np.isfinite(values)) or np.min(values) < 0:
            raise ValidationError("GridDensity values must be finite and non-negative")
        mass = self.dx * float(np.sum(values))
        if abs(mass - 1.0) > MASS_TOL:
            raise ValidationError(f"GridDensity integrates to {mass!r}, expected 1 within {MASS_TOL:.0e}")
        object.__setattr__(self, "values", values)

    @property
    def x(self):
        return self.x_min + self.dx * np.arange(self.values.size)

    @property
    def x_max(self):
        return self.x_min + self.dx * (self.values.size - 1)

    def __call__(self, pts):
        """Evaluate the piecewise-linear density at arbitrary points."""
        xs = np.concatenate(([self.x_min - self.dx], self.x, [self.x_max + self.dx]))
        vs = np.concatenate(([0.0], self.values, [0.0]))
        return np.interp(pts, xs, vs, left=0.0, right=0.0)

    def support(self):
        """Interval outside which the interpolant vanishes."""
        nz = np.nonzero(self.values > 0)[0]
        return (self.x_min + (nz[0] - 1) * self.dx, self.x_min + (nz[-1] + 1) * self.dx)

    def mean(self):
        return self.dx * float(np.sum(self.x * self.values))

    def variance(self):
        m = self.mean()
        return self.dx * float(np.sum((self.x - m) ** 2 * self.values))

    @classmethod
    def from_function(cls, f, a, b, dx):
        """Sample ``f`` at the midpoints of ``[a, b]`` cut into cells of width about ``dx``,
        then renormalise to unit mass."""
        n = max(1, int(round((b - a) / dx)))
        step = (b - a) / n
        x = a + step * (np.arange(n) + 0.5)
        v = np.clip(np.asarray(f(x), dtype=np.float64), 0.0, None)
        return cls(float(x[0]), step, v / (step * v.sum()))

    def to_json(self):
        return {"x_min": self.x_min, "dx": self.dx, "values": self.values.tolist()}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise ValidationError("GridDensity JSON must be an object with fields 'x_min', 'dx', 'values'")
        for name in ("x_min", "dx", "values"):
            if name not in obj:
                raise ValidationError(f"GridDensity JSON: missing field '{name}'")
        for name in ("x_min", "dx"):
            if isinstance(obj[name], bool) or not isinstance(obj[name], (int, float)):
                raise ValidationError(f"GridDensity JSON: field '{name}' must be a number")
        vals = obj["values"]
        if not isinstance(vals, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in vals
        ):
            raise ValidationError("GridDensity JSON: field 'values' must be a list of numbers")
        return cls(float(obj["x_min"]), float(obj["dx"]), np.asarray(vals, dtype=np.float64))


def load_grid(path):
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: malformed JSON ({exc})") from None
    return GridDensity.from_json(obj)


def save_grid(path, rho):
    with open(path, "w") as fh:
        json.dump(rho.to_json(), fh)


def gaussian_grid(mean=0.0, var=1.0, dx=0.01, width=8.0):
    """N(mean, var) sampled on ``mean +- width * sd``."""
    sd = math.sqrt(var)
    return GridDensity.from_function(
        lambda x: np.exp(-0.5 * (x - mean) ** 2 / var), mean - width * sd, mean + width * sd, dx
    )


def uniform_grid(a=0.0, b=1.0, dx=0.01):
    return GridDensity.from_function(lambda x: np.ones_like(x), a, b, dx)


def mixture_grid(means, variances, weights=None, dx=0.01, width=8.0):
    means = np.asarray(means, dtype=np.float64)
    variances = np.asarray(variances, dtype=np.float64)
    w = np.full(means.size, 1.0 / means.size) if weights is None else np.asarray(weights, dtype=np.float64)
    sds = np.sqrt(variances)
    lo = float(np.min(means - width * sds))
    hi = float(np.max(means + width * sds))

    def f(x):
        x = x[:, None]
        return np.sum(w * np.exp(-0.5 * (x - means) ** 2 / variances) / sds, axis=1)

    return GridDensity.from_function(f, lo, hi, dx)


def _check_theta(theta):
    theta = float(theta)
    if not 0.0 < theta < math.pi / 2:
        raise DomainError(f"mixing angle must lie in (0, pi/2), got {theta}")
    return theta


def scaled_convolution_with_drift(rho, sigma, theta, max_dx=MAX_DX):
    """Density of ``cos(theta) X + sin(theta) Y`` and the pre-normalisation mass drift.

    The output value at ``x`` is the midpoint-rule evaluation of

        integral rho(x cos - y sin) sigma(x sin + y cos) dy

    (the rotation taking ``(X, Y)`` to ``(x, y)``).  The grid spans the image
    of the input supports, padded by 10% each side, with spacing
    ``min(dx_rho, dx_sigma)``.

    Raises
    ------
    ResolutionError
        If either input grid is coarser than ``max_dx``.
    QuadratureError
        If the unnormalised output mass is off by more than 1e-3.
    """
    theta = _check_theta(theta)
    for name, g in (("rho", rho), ("sigma", sigma)):
        if g.dx > max_dx:
            raise ResolutionError(f"{name} grid spacing dx={g.dx} exceeds {max_dx}", dx=g.dx)
    c, s = math.cos(theta), math.sin(theta)
    a_r, b_r = rho.support()
    a_s, b_s = sigma.support()
    dx = min(rho.dx, sigma.dx)

    lo, hi = c * a_r + s * a_s, c * b_r + s * b_s
    pad = SUPPORT_PAD * (hi - lo)
    n_x = int(math.ceil((hi - lo + 2 * pad) / dx)) + 1
    x = lo - pad + dx * np.arange(n_x)

    # y = -s X + c Y ranges over this interval when X, Y sit in their supports
    y_lo, y_hi = -s * b_r + c * a_s, -s * a_r + c * b_s
    n_y = max(1, int(math.ceil((y_hi - y_lo) / dx)))
    dy = (y_hi - y_lo) / n_y
    y = y_lo + dy * (np.arange(n_y) + 0.5)

    out = np.empty(n_x)
    rows = max(1, _CHUNK // n_y)
    for start in range(0, n_x, rows):
        xs = x[start:start + rows, None]
        out[start:start + rows] = dy * np.sum(rho(xs * c - y * s) * sigma(xs * s + y * c), axis=1)

    mass = dx * float(np.sum(out))
    drift = mass - 1.0
    if abs(drift) > DRIFT_TOL:
        raise QuadratureError(f"scaled convolution lost mass: drift {drift:.3e}", drift=drift)
    return GridDensity(float(x[0]), dx, out / mass), drift


def scaled_convolution(rho, sigma, theta, max_dx=MAX_DX):
    return scaled_convolution_with_drift(rho, sigma, theta, max_dx)[0]


def differential_entropy(rho):
    """``-integral rho ln rho`` by the midpoint rule over the grid cells."""
    v = rho.values[rho.values > 0]
    return float(-rho.dx * np.sum(v * np.log(v)))


def gaussian_match(rho, width=8.0):
    """Centred Gaussian grid with the variance of ``rho``, on ``rho``'s grid spacing."""
    var = rho.variance()
    if not var > 0:
        raise DomainError("gaussian_match needs a density with positive variance")
    return gaussian_grid(0.0, var, dx=rho.dx, width=width)


def check_classical_epi(rho, sigma, theta):
    """``(holds, gap)`` with ``gap = S(rho *_theta sigma) - cos^2 S(rho) - sin^2 S(sigma)``."""
    theta = _check_theta(theta)
    out = scaled_convolution(rho, sigma, theta)
    c2 = math.cos(theta) ** 2
    gap = differential_entropy(out) - c2 * differential_entropy(rho) - (1.0 - c2) * differential_entropy(sigma)
    return gap >= -scaled(TOL_CLS), gap


def random_family(seed, dx=0.01):
    """A seeded random density: a Gaussian, a uniform or a two-component mixture."""
    rng = np.random.default_rng(seed)
    kind = int(rng.integers(3))
    if kind == 0:
        return gaussian_grid(rng.uniform(-1, 1), rng.uniform(0.25, 2.0), dx=dx, width=7.0)
    if kind == 1:
        a = rng.uniform(-1, 1)
        return uniform_grid(a, a + rng.uniform(0.5, 3.0), dx=dx)
    m = rng.uniform(0.5, 2.0)
    return mixture_grid([-m, m], rng.uniform(0.2, 1.0, size=2), dx=dx, width=7.0)
