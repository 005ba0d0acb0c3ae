"""Dense complex-matrix foundation.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  The helpers in
this module validate them against the invariants of the operator types used
throughout the package (Hermitian operators, density matrices, contractions)
and provide the eigendecomposition, tensor product, partial trace and
commutator everything else is built on.
"""
import json
import math

import numpy as np

from pslab._kernels import jacobi_eigh
from pslab.errors import ConvergenceError, DimensionError, ValidationError
from pslab.tolerances import TOL_HERM, TOL_PSD, TOL_TRACE

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
# eigenvalues closer than this (relative to the spectral scale) are treated
# as one degenerate block when fixing eigenvector order
_DEGENERACY_TOL = 1e-12
_TIEBREAK_DECIMALS = 8


def as_matrix(M, name="matrix"):
    """Return ``M`` as a finite 2-D complex128 array."""
    a = np.asarray(M, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{name} has non-finite entries")
    return a


def as_square(M, name="matrix"):
    a = as_matrix(M, name)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    return a


def hermitian_defect(H):
    """Largest entrywise modulus of ``H - H*``."""
    a = np.asarray(H)
    return float(np.max(np.abs(a - a.conj().T)))


def as_hermitian(H, name="operator", tol=TOL_HERM):
    """Validate ``H`` as Hermitian within ``tol`` per entry.

    The returned array is exactly Hermitian (the input's Hermitian part).
    """
    a = as_square(H, name)
    defect = hermitian_defect(a)
    if defect > tol:
        raise ValidationError(f"{name} is not Hermitian: max |H - H*| = {defect:.3e} > {tol:.1e}")
    return 0.5 * (a + a.conj().T)


def as_density(rho, name="density matrix"):
    """Validate ``rho`` as a density matrix and return it as an exactly Hermitian array."""
    a = as_hermitian(rho, name)
    tr = float(np.trace(a).real)
    if abs(tr - 1.0) > TOL_TRACE:
        raise ValidationError(f"{name} has trace {tr!r}, expected 1 within {TOL_TRACE:.0e}")
    w = eigvals_descending(a)
    if w[-1] < -TOL_PSD:
        raise ValidationError(
            f"{name} is not positive semidefinite: smallest eigenvalue {w[-1]:.3e} < -{TOL_PSD:.0e}"
        )
    return a


def as_contraction(A, name="operator"):
    """Validate ``A`` as a non-negative contraction, 0 <= A <= 1."""
    a = as_hermitian(A, name)
    w = eigvals_descending(a)
    if w[-1] < -TOL_PSD or w[0] > 1.0 + TOL_PSD:
        raise ValidationError(
            f"{name} is not a non-negative contraction: spectrum in [{w[-1]:.3e}, {w[0]:.3e}]"
        )
    return a


def _canonical_phase(V):
    # first entry of largest modulus made real-positive, per column
    n = V.shape[1]
    idx = np.argmax(np.abs(V), axis=0)
    pivots = V[idx, np.arange(n)]
    mags = np.abs(pivots)
    phases = np.where(mags > 0, pivots / np.where(mags > 0, mags, 1.0), 1.0)
    return V / phases


def _tiebreak_key(vec):
    r = np.round(vec, _TIEBREAK_DECIMALS) + 0.0  # +0.0 folds -0.0 into 0.0
    return tuple(-x for pair in zip(r.real, r.imag) for x in pair)


def eigen_descending(H):
    """Eigendecomposition of a Hermitian operator, eigenvalues non-increasing.

    Parameters
    ----------
    H : array_like
        Hermitian matrix (validated to ``TOL_HERM`` per entry).

    Returns
    -------
    w : ndarray of float
        Eigenvalues, sorted non-increasing, repeated by multiplicity.
    V : ndarray of complex
        Unitary matrix whose columns are the matching eigenvectors.  Each
        column is phased so its first largest-modulus entry is real positive;
        inside a degenerate block columns are ordered lexicographically
        (descending) on their entries rounded to 8 decimals.

    Raises
    ------
    ValidationError
        If ``H`` is not Hermitian.
    ConvergenceError
        If the Jacobi sweeps do not reach the off-diagonal target.
    """
    a = as_hermitian(H)
    w, V, _, off = jacobi_eigh(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    fro = float(np.linalg.norm(a))
    if off > JACOBI_TOL * fro:
        raise ConvergenceError(
            f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps: "
            f"off-diagonal norm {off:.3e} > {JACOBI_TOL * fro:.3e}",
            residual=off,
        )

    order = np.argsort(-w, kind="stable")
    w = w[order]
    V = _canonical_phase(V[:, order])

    n = w.size
    scale = max(1.0, float(np.max(np.abs(w)))) if n else 1.0
    start = 0
    for i in range(1, n + 1):
        if i == n or w[i - 1] - w[i] > _DEGENERACY_TOL * scale:
            if i - start > 1:
                block = list(range(start, i))
                block.sort(key=lambda j: _tiebreak_key(V[:, j]))
                V[:, start:i] = V[:, block]
            start = i
    return w, V


def eigvals_descending(H):
    """Spectrum of a Hermitian matrix, sorted non-increasing."""
    a = as_hermitian(H)
    w, _, _, off = jacobi_eigh(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    fro = float(np.linalg.norm(a))
    if off > JACOBI_TOL * fro:
        raise ConvergenceError(f"Jacobi did not converge: off-diagonal norm {off:.3e}", residual=off)
    return np.sort(w)[::-1]


def tensor_product(A, B):
    """Kronecker product; block ``(i, j)`` of the result is ``A[i, j] * B``."""
    return np.kron(as_matrix(A, "A"), as_matrix(B, "B"))


def partial_trace_second(M, sub_dim):
    """Trace out the second factor of an operator on C^d (x) C^d.

    ``result[i, j] = sum_k M[i*d + k, j*d + k]``.
    """
    a = as_square(M)
    d = int(sub_dim)
    if d < 1 or a.shape[0] != d * d:
        raise DimensionError(f"side {a.shape[0]} is not sub_dim**2 = {d}**2")
    return np.einsum("ikjk->ij", a.reshape(d, d, d, d))


def commutator(A, B):
    a = as_square(A, "A")
    b = as_square(B, "B")
    if a.shape != b.shape:
        raise DimensionError(f"commutator of shapes {a.shape} and {b.shape}")
    return a @ b - b @ a


def max_abs(M):
    return float(np.max(np.abs(M))) if np.size(M) else 0.0


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _check_dim(d):
    d = int(d)
    if d < 1:
        raise DimensionError(f"dimension must be >= 1, got {d}")
    return d


def _complex_gaussian(rng, d):
    return (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2.0)


def random_density(seed, d):
    """Hilbert-Schmidt random density matrix ``G G* / Tr(G G*)``.

    ``seed`` is an integer (or a ``numpy.random.Generator``); the same integer
    seed and ``d`` always give a bit-identical matrix.
    """
    d = _check_dim(d)
    g = _complex_gaussian(_rng(seed), d)
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return m / np.trace(m).real


def random_unitary(seed, d):
    """Haar-random unitary via QR of a complex Gaussian matrix."""
    d = _check_dim(d)
    q, r = np.linalg.qr(_complex_gaussian(_rng(seed), d))
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_contraction(seed, d):
    """Random non-negative contraction ``U diag(u) U*`` with ``u`` uniform on [0, 1]."""
    d = _check_dim(d)
    rng = _rng(seed)
    u = random_unitary(rng, d)
    vals = rng.uniform(0.0, 1.0, size=d)
    m = (u * vals) @ u.conj().T
    return 0.5 * (m + m.conj().T)


def random_hermitian(seed, d):
    d = _check_dim(d)
    g = _complex_gaussian(_rng(seed), d)
    return 0.5 * (g + g.conj().T)


# -- matrix JSON -----------------------------------------------------------

def matrix_to_json(M):
    """Encode a square matrix as ``{"dim", "re", "im"}``.

    Floats are written with ``repr`` which round-trips float64 exactly.
    """
    a = as_square(M)
    return {"dim": int(a.shape[0]), "re": a.real.tolist(), "im": a.imag.tolist()}


def matrix_from_json(obj):
    """Decode and validate the matrix JSON object produced by :func:`matrix_to_json`."""
    if not isinstance(obj, dict):
        raise ValidationError("matrix JSON must be an object with fields 'dim', 're', 'im'")
    for field in ("dim", "re", "im"):
        if field not in obj:
            raise ValidationError(f"matrix JSON: missing field '{field}'")
    dim = obj["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ValidationError(f"matrix JSON: field 'dim' must be a positive integer, got {dim!r}")
    parts = {}
    for field in ("re", "im"):
        rows = obj[field]
        if not isinstance(rows, list) or len(rows) != dim:
            raise ValidationError(f"matrix JSON: field '{field}' must have {dim} rows")
        for r in rows:
            if not isinstance(r, list) or len(r) != dim:
                raise ValidationError(f"matrix JSON: field '{field}' must have rows of length {dim}")
            for x in r:
                if isinstance(x, bool) or not isinstance(x, (int, float)):
                    raise ValidationError(f"matrix JSON: field '{field}' has non-numeric entry {x!r}")
        arr = np.asarray(rows, dtype=np.float64)
        if not np.all(np.isfinite(arr)):
            raise ValidationError(f"matrix JSON: field '{field}' has non-finite entries")
        parts[field] = arr
    return parts["re"] + 1j * parts["im"]


def load_matrix(path):
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: malformed JSON ({exc})") from None
    return matrix_from_json(obj)


def save_matrix(path, M):
    with open(path, "w") as fh:
        json.dump(matrix_to_json(M), fh)
