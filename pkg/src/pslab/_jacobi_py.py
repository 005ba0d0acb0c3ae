"""Pure-Python cyclic complex Jacobi eigensolver.

Same algorithm and return contract as the compiled ``_jacobi_ext`` kernel;
row and column updates are vectorised with numpy.
"""
import math

import numpy as np

# below this a pivot's phase cannot be formed without overflow
_TINY = 1e-300


def _off_norm(a):
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def jacobi_eigh(a_in, tol_rel, max_sweeps):
    a = np.array(a_in, dtype=np.complex128, order="C", copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    thresh = tol_rel * float(np.linalg.norm(a))
    sweep = 0
    off = _off_norm(a)
    while off > thresh and sweep < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < _TINY:
                    continue
                e = apq / mag
                ec = e.conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * ec * col_q
                a[:, q] = s * e * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * e * row_q
                a[q, :] = s * ec * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * ec * vq
                v[:, q] = s * e * vp + c * vq
        sweep += 1
        off = _off_norm(a)
    return np.real(np.diag(a)).copy(), v, sweep, off
