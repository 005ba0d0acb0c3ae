"""Majorization of spectra, entropy functionals and the quantum EPI checks.

Sequences are 1-D float arrays sorted non-increasing.  ``majorizes(lam, kappa)``
asks whether ``kappa`` is majorized by ``lam``: every prefix sum of ``kappa``
is at most the matching prefix sum of ``lam`` and the totals agree.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from pslab.channel import check_t, star
from pslab.errors import DimensionError, DomainError, MajorizationError, ValidationError
from pslab.hermitian import (
    as_density,
    commutator,
    eigen_descending,
    eigvals_descending,
    max_abs,
)
from pslab.tolerances import (
    TOL_CLUSTER,
    TOL_COMMUTE,
    TOL_ENTROPY,
    TOL_EPI,
    TOL_MAJOR,
    TOL_PSD,
    scaled,
)

_TOTAL_TOL = 1e-9
_ORDER_TOL = 1e-12


@dataclass(frozen=True)
class MajorizationVerdict:
    """Outcome of a prefix-sum comparison.

    ``prefix_gaps[k]`` is ``sum(upper[:k+1]) - sum(lower[:k+1])``; the
    relation holds when none of them is below ``-TOL_MAJOR``.
    ``is_equality`` means the two sequences agree elementwise within
    ``TOL_MAJOR``.
    """

    holds: bool
    prefix_gaps: np.ndarray
    is_equality: bool
    upper: np.ndarray = field(repr=False)
    lower: np.ndarray = field(repr=False)

    @property
    def worst_gap(self):
        return float(np.min(self.prefix_gaps))


@dataclass(frozen=True)
class DoublyStochasticWitness:
    """Doubly stochastic ``matrix`` with ``matrix @ upper == lower``.

    ``transforms`` lists the T-transforms ``(j, k, tau)`` composed to build
    it, in application order; each one replaces coordinates ``j, k`` by
    ``tau*x_j + (1-tau)*x_k`` and ``(1-tau)*x_j + tau*x_k``.
    """

    matrix: np.ndarray
    transforms: tuple

    def validate(self, tol=1e-9):
        m = self.matrix
        if np.min(m) < -1e-12:
            raise ValidationError(f"witness has negative entry {np.min(m):.3e}")
        rows = np.max(np.abs(m.sum(axis=1) - 1.0))
        cols = np.max(np.abs(m.sum(axis=0) - 1.0))
        if max(rows, cols) > tol:
            raise ValidationError(f"witness row/column sums off by {max(rows, cols):.3e}")
        return self


def _as_sequence(x, name):
    a = np.asarray(x, dtype=np.float64)
    if a.ndim != 1 or a.size == 0:
        raise ValidationError(f"{name} must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{name} has non-finite entries")
    if np.any(np.diff(a) > _ORDER_TOL):
        raise ValidationError(f"{name} is not non-increasing")
    return a


def h_entropy_atom(x):
    """``-x ln x`` with ``h(0) = 0``; tiny negative roundoff is clipped to 0."""
    x = float(x)
    if x < -TOL_PSD or x > 1.0 + 1e-12:
        raise DomainError(f"h(x) defined for x in [0, 1], got {x!r}")
    if x <= 0.0:
        return 0.0
    return -x * math.log(x)


def shannon_entropy(p):
    """``sum_j h(p_j)`` over a probability vector, with roundoff clipping."""
    p = np.asarray(p, dtype=np.float64)
    lo, hi = float(np.min(p)), float(np.max(p))
    if lo < -TOL_PSD or hi > 1.0 + 1e-12:
        raise DomainError(f"entropy needs entries in [0, 1], got range [{lo!r}, {hi!r}]")
    q = p[p > 0.0]
    return float(-np.sum(q * np.log(q)))


def von_neumann_entropy(rho):
    """``-Tr[rho ln rho]`` from the spectrum of a validated density matrix."""
    return shannon_entropy(eigvals_descending(as_density(rho, "rho")))


def majorizes(lam, kappa):
    """Test ``kappa`` majorized by ``lam``.

    Raises
    ------
    MajorizationError
        If the lengths differ or the totals differ by more than 1e-9; the
        relation is only defined for equal sums.
    """
    lam = _as_sequence(lam, "lambda")
    kappa = _as_sequence(kappa, "kappa")
    if lam.size != kappa.size:
        raise MajorizationError(f"lengths differ: {lam.size} vs {kappa.size}")
    gaps = np.cumsum(lam) - np.cumsum(kappa)
    if abs(gaps[-1]) > _TOTAL_TOL:
        raise MajorizationError(f"totals differ by {gaps[-1]:.3e}")
    tol = scaled(TOL_MAJOR)
    return MajorizationVerdict(
        holds=bool(np.all(gaps >= -tol)),
        prefix_gaps=gaps,
        is_equality=bool(np.max(np.abs(lam - kappa)) <= tol),
        upper=lam,
        lower=kappa,
    )


def hlp_witness(kappa, lam):
    """Construct a doubly stochastic ``D`` with ``D @ lam == kappa``.

    Built as a product of at most ``len(lam) - 1`` T-transforms.  At each
    step ``j`` is the last index where the running image still exceeds
    ``kappa`` and ``k`` the first later index where it falls short; the pair
    is averaged just far enough that one of the two coordinates reaches its
    target.  Ordering and the majorization relation are preserved by every
    step, so the loop ends with an exact match.
    """
    verdict = majorizes(lam, kappa)
    if not verdict.holds:
        bad = int(np.argmax(verdict.prefix_gaps < -scaled(TOL_MAJOR)))
        raise MajorizationError(
            f"kappa is not majorized by lambda: prefix {bad + 1} gap {verdict.prefix_gaps[bad]:.3e}",
            prefix_index=bad,
        )
    lam, kappa = verdict.upper, verdict.lower
    n = lam.size
    eps = 1e-15 * max(1.0, float(np.max(np.abs(lam))))
    d = np.eye(n)
    cur = lam.copy()
    transforms = []
    for _ in range(n - 1):
        diff = cur - kappa
        above = np.nonzero(diff > eps)[0]
        if above.size == 0:
            break
        j = int(above[-1])
        below = np.nonzero(diff[j + 1:] < -eps)[0]
        if below.size == 0:
            break
        k = j + 1 + int(below[0])
        delta = min(diff[j], -diff[k])
        tau = 1.0 - delta / (cur[j] - cur[k])
        t_mat = np.eye(n)
        t_mat[j, j] = t_mat[k, k] = tau
        t_mat[j, k] = t_mat[k, j] = 1.0 - tau
        d = t_mat @ d
        cj, ck = cur[j], cur[k]
        cur[j] = tau * cj + (1.0 - tau) * ck
        cur[k] = (1.0 - tau) * cj + tau * ck
        # snap the coordinate that reached its target
        if delta == diff[j]:
            cur[j] = kappa[j]
        else:
            cur[k] = kappa[k]
        transforms.append((j, k, tau))
    return DoublyStochasticWitness(matrix=d, transforms=tuple(transforms))


def entropy_majorization_check(lam, kappa):
    """Schur concavity of entropy: ``H(kappa) >= H(lam)`` when ``kappa`` is majorized by ``lam``.

    Returns ``(holds, gap)`` with ``gap = H(kappa) - H(lam)``.
    """
    verdict = majorizes(lam, kappa)
    if not verdict.holds:
        raise MajorizationError("entropy comparison needs kappa majorized by lambda")
    if abs(verdict.upper.sum() - 1.0) > _TOTAL_TOL:
        raise MajorizationError("entropy comparison needs probability vectors")
    gap = shannon_entropy(verdict.lower) - shannon_entropy(verdict.upper)
    return gap >= -scaled(TOL_ENTROPY), gap


def theorem1_sequences(rho, sigma, t):
    """``(lam, kappa)``: the t-mix of the sorted input spectra, and the output spectrum."""
    t = check_t(t)
    rho = as_density(rho, "rho")
    sigma = as_density(sigma, "sigma")
    if rho.shape != sigma.shape:
        raise DimensionError(f"rho and sigma have shapes {rho.shape} and {sigma.shape}")
    lam = t * eigvals_descending(rho) + (1.0 - t) * eigvals_descending(sigma)
    kappa = eigvals_descending(star(rho, sigma, t))
    return lam, kappa


def check_theorem1(rho, sigma, t):
    """Majorization of the channel output spectrum by the t-mix of the input spectra."""
    lam, kappa = theorem1_sequences(rho, sigma, t)
    return majorizes(lam, kappa)


def check_epi(rho, sigma, t):
    """``(holds, gap)`` for ``S(rho *_t sigma) >= t S(rho) + (1-t) S(sigma)``."""
    t = check_t(t)
    rho = as_density(rho, "rho")
    sigma = as_density(sigma, "sigma")
    if rho.shape != sigma.shape:
        raise DimensionError(f"rho and sigma have shapes {rho.shape} and {sigma.shape}")
    out = star(rho, sigma, t)
    gap = (
        shannon_entropy(eigvals_descending(out))
        - t * shannon_entropy(eigvals_descending(rho))
        - (1.0 - t) * shannon_entropy(eigvals_descending(sigma))
    )
    return gap >= -scaled(TOL_EPI), gap


def _clusters(w, tol):
    groups = []
    start = 0
    for i in range(1, w.size + 1):
        if i == w.size or w[i - 1] - w[i] > tol:
            groups.append((start, i))
            start = i
    return groups


def theorem1_equality_detect(rho, sigma):
    """Whether one orthonormal basis diagonalizes both states in descending order for each.

    The operators must commute (max entry of the commutator at most
    ``TOL_COMMUTE``).  In the eigenbasis of ``rho`` the eigenvalues are
    grouped into clusters at ``TOL_CLUSTER``; ``sigma`` must be block diagonal
    with respect to the clusters, and its block spectra, concatenated in
    cluster order, must be non-increasing.
    """
    rho = as_density(rho, "rho")
    sigma = as_density(sigma, "sigma")
    if max_abs(commutator(rho, sigma)) > scaled(TOL_COMMUTE):
        return False
    w, v = eigen_descending(rho)
    s = v.conj().T @ sigma @ v
    groups = _clusters(w, TOL_CLUSTER)
    mask = np.zeros(s.shape, dtype=bool)
    for a, b in groups:
        mask[a:b, a:b] = True
    off_block = np.abs(s[~mask])
    if off_block.size and float(np.max(off_block)) > TOL_CLUSTER:
        return False
    joined = np.concatenate([eigvals_descending(s[a:b, a:b]) for a, b in groups])
    return bool(np.all(np.diff(joined) <= scaled(TOL_MAJOR)))


def report_entry(rho, sigma, t, seed=None):
    """Verdict/report JSON record for one ``(rho, sigma, t)`` case."""
    verdict = check_theorem1(rho, sigma, t)
    _, gap = check_epi(rho, sigma, t)
    return {
        "t": float(t),
        "dim": int(np.asarray(rho).shape[0]),
        "prefix_gaps": [float(g) for g in verdict.prefix_gaps],
        "entropy_gap": float(gap),
        "equality": bool(verdict.is_equality),
        "seed": seed,
    }
