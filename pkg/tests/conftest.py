import math

import numpy as np
import pytest

SQ3_4 = math.sqrt(3.0) / 4.0


def closed_form_2x2(m):
    """Eigenvalues of a 2x2 Hermitian matrix from its trace and determinant."""
    tr = (m[0, 0] + m[1, 1]).real
    det = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real
    disc = math.sqrt(tr * tr / 4.0 - det)
    return np.array([tr / 2.0 + disc, tr / 2.0 - disc])


def h(x):
    return 0.0 if x == 0 else -x * math.log(x)


@pytest.fixture
def worked_pair():
    """rho = |0><0|, sigma = |+><+|, the pair used as a hand-checkable example throughout."""
    rho = np.diag([1.0, 0.0]).astype(complex)
    sigma = 0.5 * np.array([[1.0, 1.0], [1.0, 1.0]], dtype=complex)
    return rho, sigma


@pytest.fixture
def worked_output():
    # t = 1/2 channel output, evaluated by hand
    return np.array([[0.75, 0.25 + 0.25j], [0.25 - 0.25j, 0.25]])
