"""The partial-swap channel and the contraction-form inequality behind it.

For density matrices on C^d and ``t`` in [0, 1] the channel is

    rho *_t sigma = Tr_2[U_t* (rho (x) sigma) U_t],   U_t = sqrt(t) 1 + i sqrt(1-t) S,

with ``S`` the swap of tensor factors.  It also has the closed form
``t rho + (1-t) sigma + i sqrt(t(1-t)) [rho, sigma]``; both are implemented
and are expected to agree to roundoff.
"""
import math
from dataclasses import dataclass

import numpy as np

from pslab.errors import DimensionError, DomainError
from pslab.hermitian import (
    as_contraction,
    as_density,
    eigen_descending,
    eigvals_descending,
    max_abs,
    partial_trace_second,
    tensor_product,
)
from pslab.tolerances import TOL_EQ, TOL_WITNESS, scaled


def check_t(t):
    """Validate the mixing parameter and return it as a float."""
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"mixing parameter t must lie in [0, 1], got {t}")
    return t


def mixing_angle(t):
    """The angle theta in [0, pi/2] with cos(theta) = sqrt(t)."""
    return math.acos(math.sqrt(check_t(t)))


def swap_operator(d):
    """Permutation matrix of ``u (x) v -> v (x) u`` on C^d (x) C^d."""
    d = int(d)
    if d < 1:
        raise DimensionError(f"dimension must be >= 1, got {d}")
    s = np.zeros((d * d, d * d), dtype=np.complex128)
    i, j = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    s[(j * d + i).ravel(), (i * d + j).ravel()] = 1.0
    return s


def partial_swap_unitary(t, d):
    t = check_t(t)
    return math.sqrt(t) * np.eye(d * d) + 1j * math.sqrt(1.0 - t) * swap_operator(d)


def _same_dim(rho, sigma):
    if rho.shape != sigma.shape:
        raise DimensionError(f"operands have shapes {rho.shape} and {sigma.shape}")


def convolve_via_trace(rho, sigma, t):
    """Channel output computed literally: ``Tr_2[U_t* (rho (x) sigma) U_t]``.

    O(d^6); intended as the independent cross-check of :func:`convolve_explicit`.
    The adjoint sits on the left: that ordering produces ``+i sqrt(t(1-t)) [rho, sigma]``,
    while ``U_t (.) U_t*`` would flip the sign of the commutator term.
    """
    rho = as_density(rho, "rho")
    sigma = as_density(sigma, "sigma")
    _same_dim(rho, sigma)
    d = rho.shape[0]
    u = partial_swap_unitary(t, d)
    out = partial_trace_second(u.conj().T @ tensor_product(rho, sigma) @ u, d)
    return 0.5 * (out + out.conj().T)


def star(a, b, t):
    """``t a + (1-t) b + i sqrt(t(1-t)) [a, b]`` on arbitrary square arrays, unvalidated."""
    c = math.sqrt(t * (1.0 - t))
    out = t * a + (1.0 - t) * b + 1j * c * (a @ b - b @ a)
    return 0.5 * (out + out.conj().T) if c else out


def convolve_explicit(rho, sigma, t):
    """Channel output from the closed form ``t rho + (1-t) sigma + i sqrt(t(1-t)) [rho, sigma]``."""
    t = check_t(t)
    rho = as_density(rho, "rho")
    sigma = as_density(sigma, "sigma")
    _same_dim(rho, sigma)
    return star(rho, sigma, t)


def contraction_star(A, B, t):
    """``A *_t B`` for non-negative contractions ``A`` and ``B``."""
    t = check_t(t)
    a = as_contraction(A, "A")
    b = as_contraction(B, "B")
    _same_dim(a, b)
    return star(a, b, t)


@dataclass(frozen=True)
class Lemma1Decomposition:
    """Shifted operators ``X = l1(A) - A``, ``Y = l1(B) - B`` and ``Z = sqrt(t) X + i sqrt(1-t) Y``.

    ``bound`` is ``t l1(A) + (1-t) l1(B)``, the claimed ceiling for the top
    eigenvalue of ``A *_t B``.
    """

    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray
    bound: float
    t: float


def lemma1_decompose(A, B, t):
    t = check_t(t)
    a = as_contraction(A, "A")
    b = as_contraction(B, "B")
    _same_dim(a, b)
    la = float(eigvals_descending(a)[0])
    lb = float(eigvals_descending(b)[0])
    eye = np.eye(a.shape[0])
    x = la * eye - a
    y = lb * eye - b
    z = math.sqrt(t) * x + 1j * math.sqrt(1.0 - t) * y
    return Lemma1Decomposition(X=x, Y=y, Z=z, bound=t * la + (1.0 - t) * lb, t=t)


def lemma1_identity_check(A, B, t):
    """Residual of ``t(X-X^2) + (1-t)(Y-Y^2) + Z Z* = bound - A *_t B``.

    The identity is algebraic, so the residual is pure roundoff.
    """
    a = as_contraction(A, "A")
    b = as_contraction(B, "B")
    dec = lemma1_decompose(a, b, t)
    t = dec.t
    x, y, z = dec.X, dec.Y, dec.Z
    lhs = t * (x - x @ x) + (1.0 - t) * (y - y @ y) + z @ z.conj().T
    rhs = dec.bound * np.eye(x.shape[0]) - star(a, b, t)
    return max_abs(lhs - rhs)


def lemma1_equality_witness(A, B, t):
    """Common top eigenvector of ``A`` and ``B`` when the top-eigenvalue bound is saturated.

    Returns a unit vector, or ``None`` when the gap exceeds ``TOL_EQ`` or the
    candidate (top eigenvector of ``A *_t B``) fails the residual check.
    """
    t = check_t(t)
    if t in (0.0, 1.0):
        raise DomainError("equality analysis requires t strictly between 0 and 1")
    a = as_contraction(A, "A")
    b = as_contraction(B, "B")
    _same_dim(a, b)
    la = float(eigvals_descending(a)[0])
    lb = float(eigvals_descending(b)[0])
    w, v = eigen_descending(star(a, b, t))
    if w[0] < t * la + (1.0 - t) * lb - scaled(TOL_EQ):
        return None
    phi = v[:, 0]
    tol = scaled(TOL_WITNESS)
    if np.linalg.norm(a @ phi - la * phi) > tol or np.linalg.norm(b @ phi - lb * phi) > tol:
        return None
    return phi
