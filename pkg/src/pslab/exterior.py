"""Derivation lift of an operator to the k-th exterior power.

``lift_operator(A, k)`` is the matrix of

    A^[k](v_1 ^ ... ^ v_k) = sum_s v_1 ^ ... ^ A v_s ^ ... ^ v_k

in the basis ``e_I`` indexed by the strictly increasing k-subsets ``I`` of
``{0, ..., d-1}`` in lexicographic order.  Its top eigenvalue is the sum of
the k largest eigenvalues of ``A``, and it intertwines commutators, which
turns the top-eigenvalue bound for ``*_t`` into the full majorization chain.
"""
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import NamedTuple

import numpy as np

from pslab.channel import check_t, star
from pslab.errors import DimensionError, ValidationError
from pslab.hermitian import (
    as_density,
    as_hermitian,
    as_square,
    commutator,
    eigvals_descending,
    max_abs,
)
from pslab.tolerances import TOL_PSD

MAX_DIM = 10


@lru_cache(maxsize=None)
def exterior_basis(d, k):
    """The C(d, k) increasing k-subsets of range(d), lexicographic."""
    _check_grade(d, k)
    return tuple(combinations(range(d), k))


@lru_cache(maxsize=None)
def _lift_pattern(d, k):
    # (row, col, a, b, sign) for every single-slot replacement b -> a taking e_J to +-e_I
    basis = exterior_basis(d, k)
    index = {subset: n for n, subset in enumerate(basis)}
    rows, cols, src, dst, signs = [], [], [], [], []
    for col, J in enumerate(basis):
        members = set(J)
        for pos_b, b in enumerate(J):
            rest = [j for j in J if j != b]
            for a in range(d):
                if a != b and a in members:
                    continue
                I = tuple(sorted(rest + [a]))
                pos_a = I.index(a)
                rows.append(index[I])
                cols.append(col)
                src.append(a)
                dst.append(b)
                signs.append(-1.0 if (pos_a + pos_b) % 2 else 1.0)
    return (np.array(rows), np.array(cols), np.array(src), np.array(dst), np.array(signs))


def _check_grade(d, k):
    if d > MAX_DIM:
        raise DimensionError(f"exterior lifts limited to d <= {MAX_DIM}, got {d}")
    if not 1 <= k <= d:
        raise DimensionError(f"grade k must satisfy 1 <= k <= {d}, got {k}")


def lift_operator(A, k):
    """Matrix of the derivation lift of ``A`` on the k-th exterior power.

    Diagonal entries are ``sum_{i in I} A[i, i]``; when ``I`` and ``J`` differ
    in one element (``a`` in ``I``, ``b`` in ``J``) the entry is
    ``(-1)**(pos_I(a) + pos_J(b)) * A[a, b]``; all others vanish.
    """
    a = as_square(A, "A")
    d = a.shape[0]
    k = int(k)
    _check_grade(d, k)
    rows, cols, src, dst, signs = _lift_pattern(d, k)
    n = comb(d, k)
    out = np.zeros((n, n), dtype=np.complex128)
    np.add.at(out, (rows, cols), signs * a[src, dst])
    return out


def top_eigen_sum_check(A, k):
    """``|l1(A^[k]) - sum of the k largest eigenvalues of A|`` for non-negative ``A``."""
    a = as_hermitian(A, "A")
    w = eigvals_descending(a)
    if w[-1] < -TOL_PSD:
        raise ValidationError(f"A must be non-negative, smallest eigenvalue {w[-1]:.3e}")
    top = eigvals_descending(lift_operator(a, k))[0]
    return float(abs(top - np.sum(w[:k])))


def commutator_lift_check(A, B, k):
    """Max entry of ``[A^[k], B^[k]] - [A, B]^[k]``."""
    a = as_square(A, "A")
    b = as_square(B, "B")
    if a.shape != b.shape:
        raise DimensionError(f"operands have shapes {a.shape} and {b.shape}")
    la, lb = lift_operator(a, k), lift_operator(b, k)
    return max_abs(commutator(la, lb) - lift_operator(commutator(a, b), k))


class KyFanResult(NamedTuple):
    lhs: float
    rhs: float
    direct: float
    lift_residual: float


def ky_fan_via_lift(rho, sigma, t, k):
    """Top-k eigenvalue bound for the channel, evaluated on the k-th exterior power.

    Returns
    -------
    KyFanResult
        ``lhs`` is the top eigenvalue of the lifted output, ``rhs`` the
        t-mix of the lifted inputs' top eigenvalues, ``direct`` the sum of the
        k largest output eigenvalues (should equal ``lhs``) and
        ``lift_residual`` the max entry of ``lift(rho *_t sigma) -
        lift(rho) *_t lift(sigma)``.
    """
    t = check_t(t)
    rho = as_density(rho, "rho")
    sigma = as_density(sigma, "sigma")
    if rho.shape != sigma.shape:
        raise DimensionError(f"rho and sigma have shapes {rho.shape} and {sigma.shape}")
    out = star(rho, sigma, t)
    l_rho, l_sigma, l_out = lift_operator(rho, k), lift_operator(sigma, k), lift_operator(out, k)
    lhs = float(eigvals_descending(l_out)[0])
    rhs = t * float(eigvals_descending(l_rho)[0]) + (1.0 - t) * float(eigvals_descending(l_sigma)[0])
    direct = float(np.sum(eigvals_descending(out)[:k]))
    residual = max_abs(l_out - star(l_rho, l_sigma, t))
    return KyFanResult(lhs, rhs, direct, residual)
