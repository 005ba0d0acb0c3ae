# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Cyclic complex Jacobi eigensolver for Hermitian matrices (compiled kernel)."""
import numpy as np

from libc.math cimport sqrt, fabs


cdef inline double cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef double off_norm(double complex[:, ::1] a, Py_ssize_t n) nogil:
    cdef Py_ssize_t i, j
    cdef double s = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                s += cabs2(a[i, j])
    return sqrt(s)


def jacobi_eigh(a_in, double tol_rel, int max_sweeps):
    """Diagonalise the Hermitian matrix ``a_in``.

    Returns ``(w, v, sweeps, off)`` with eigenvalues ``w`` in solver order,
    eigenvectors as the columns of ``v``, the number of sweeps performed and
    the final off-diagonal Frobenius norm.  Convergence is declared when
    ``off <= tol_rel * ||a_in||_F``; the caller decides what to do otherwise.
    """
    cdef double complex[:, ::1] a = np.array(a_in, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a.shape[0]
    v_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] v = v_arr
    cdef Py_ssize_t i, j, p, q, k
    cdef double fro = 0.0
    cdef double off, thresh, mag, theta, t, c, s, app, aqq
    cdef double complex e, ec, akp, akq, apk, aqk
    cdef int sweep = 0

    for i in range(n):
        for j in range(n):
            fro += cabs2(a[i, j])
    fro = sqrt(fro)
    thresh = tol_rel * fro

    with nogil:
        off = off_norm(a, n)
        while off > thresh and sweep < max_sweeps:
            for p in range(n - 1):
                for q in range(p + 1, n):
                    mag = sqrt(cabs2(a[p, q]))
                    if mag < 1e-300:
                        continue
                    e = a[p, q] / mag
                    ec = e.conjugate()
                    app = a[p, p].real
                    aqq = a[q, q].real
                    theta = (aqq - app) / (2.0 * mag)
                    if fabs(theta) > 1e150:
                        t = 0.5 / theta
                    else:
                        t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(n):
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * ec * akq
                        a[k, q] = s * e * akp + c * akq
                    for k in range(n):
                        apk = a[p, k]
                        aqk = a[q, k]
                        a[p, k] = c * apk - s * e * aqk
                        a[q, k] = s * ec * apk + c * aqk
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    a[p, p] = app - t * mag
                    a[q, q] = aqq + t * mag
                    for k in range(n):
                        akp = v[k, p]
                        akq = v[k, q]
                        v[k, p] = c * akp - s * ec * akq
                        v[k, q] = s * e * akp + c * akq
            sweep += 1
            off = off_norm(a, n)

    w = np.empty(n, dtype=np.float64)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v_arr, sweep, off
