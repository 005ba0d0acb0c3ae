import os
import subprocess
import sys

import numpy as np
import pytest

from pslab import _jacobi_py, _kernels, hermitian
from pslab.errors import ConvergenceError
from pslab.hermitian import random_hermitian

try:
    from pslab import _jacobi_ext
except ImportError:  # extension not built
    _jacobi_ext = None

needs_ext = pytest.mark.skipif(_jacobi_ext is None, reason="compiled kernel not built")


@pytest.mark.parametrize("d", [1, 2, 5, 8, 20])
def test_python_kernel_diagonalises(d):
    h = random_hermitian(d, d)
    w, v, sweeps, off = _jacobi_py.jacobi_eigh(h, 1e-13, 100)
    assert off <= 1e-13 * np.linalg.norm(h)
    assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - h)) <= 1e-12 * max(1, d)
    np.testing.assert_allclose(np.sort(w), np.linalg.eigvalsh(h), atol=1e-12)


@needs_ext
@pytest.mark.parametrize("d", [1, 2, 3, 6, 8, 20])
def test_kernels_agree(d):
    h = random_hermitian(100 + d, d)
    w_c, v_c, s_c, _ = _jacobi_ext.jacobi_eigh(h, 1e-13, 100)
    w_p, v_p, s_p, _ = _jacobi_py.jacobi_eigh(h, 1e-13, 100)
    assert s_c == s_p
    np.testing.assert_allclose(w_c, w_p, atol=1e-13)
    np.testing.assert_allclose(v_c, v_p, atol=1e-12)


@needs_ext
def test_compiled_backend_selected_by_default():
    assert _kernels.BACKEND == "cython"


def test_pure_python_switch():
    env = dict(os.environ, PSLAB_PURE_PYTHON="1")
    code = (
        "from pslab import BACKEND, eigen_descending; import numpy as np;"
        "print(BACKEND, eigen_descending(np.diag([1.0, 3.0]))[0].tolist())"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split()[0] == "python"
    assert "[3.0, 1.0]" in out.stdout


def test_zero_matrix():
    w, v = hermitian.eigen_descending(np.zeros((3, 3)))
    np.testing.assert_array_equal(w, 0.0)
    np.testing.assert_array_equal(v, np.eye(3))


def test_convergence_error_names_residual(monkeypatch):
    monkeypatch.setattr(hermitian, "JACOBI_MAX_SWEEPS", 0)
    with pytest.raises(ConvergenceError, match="off-diagonal norm") as info:
        hermitian.eigen_descending(random_hermitian(0, 4))
    assert info.value.residual > 0
