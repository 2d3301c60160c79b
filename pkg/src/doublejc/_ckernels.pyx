# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; mirrors ``_pykernels`` one for one."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, sqrt, fabs, hypot

cnp.import_array()

cdef int JACOBI_MAX_SWEEPS = 60

# (row, col) of c1..c5, d1..d4 in the 3x3 two-qutrit matrix
cdef int[9] ROWS = [0, 1, 0, 1, 2, 0, 2, 1, 2]
cdef int[9] COLS = [0, 0, 1, 1, 2, 2, 0, 2, 1]


cdef inline double complex cexpi(double x) nogil:
    return cos(x) + 1j * sin(x)


cdef inline double sinc_t(double rabi, double t) nogil:
    cdef double x = rabi * t
    if x == 0.0:
        return t
    return sin(x) / rabi


cdef void unitary(double nu, double omega, double g, double t,
                  double complex[:, ::1] u) nogil:
    cdef double delta = omega - nu
    cdef double rabi = hypot(g, 0.5 * delta)
    cdef double complex phase = cexpi(-nu * t)
    cdef double c = cos(rabi * t)
    cdef double st = sinc_t(rabi, t)
    u[0, 0] = phase * (c - 0.5j * delta * st)
    u[1, 1] = phase * (c + 0.5j * delta * st)
    u[0, 1] = -1j * g * phase * st
    u[1, 0] = u[0, 1]
    u[0, 2] = 0
    u[1, 2] = 0
    u[2, 0] = 0
    u[2, 1] = 0
    u[2, 2] = cexpi(0.5 * delta * t)


def trajectory(coeffs, params, times):
    cdef const double complex[::1] cf = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef const double[::1] ts = np.ascontiguousarray(times, dtype=np.float64)
    cdef double nua = params[0], oma = params[1], ga = params[2]
    cdef double nub = params[3], omb = params[4], gb = params[5]
    cdef Py_ssize_t nt = ts.shape[0], k, i, j, l, r
    out_arr = np.empty((nt, 9), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef double complex[:, ::1] m = np.zeros((3, 3), dtype=np.complex128)
    cdef double complex[:, ::1] ua = np.empty((3, 3), dtype=np.complex128)
    cdef double complex[:, ::1] ub = np.empty((3, 3), dtype=np.complex128)
    cdef double complex[:, ::1] tmp = np.empty((3, 3), dtype=np.complex128)
    cdef double complex acc
    for r in range(9):
        m[ROWS[r], COLS[r]] = cf[r]
    with nogil:
        for k in range(nt):
            unitary(nua, oma, ga, ts[k], ua)
            unitary(nub, omb, gb, ts[k], ub)
            # tmp = ua @ m
            for i in range(3):
                for l in range(3):
                    acc = 0
                    for j in range(3):
                        acc = acc + ua[i, j] * m[j, l]
                    tmp[i, l] = acc
            # out = tmp @ ub.T at the nine slots
            for r in range(9):
                i = ROWS[r]
                l = COLS[r]
                acc = 0
                for j in range(3):
                    acc = acc + tmp[i, j] * ub[l, j]
                out[k, r] = acc
    return out_arr


def wedge_batch(psi):
    cdef const double complex[:, :, ::1] p = np.ascontiguousarray(psi, dtype=np.complex128)
    cdef Py_ssize_t nk = p.shape[0], nm = p.shape[1], nn = p.shape[2]
    cdef Py_ssize_t k, m, l, n
    cdef double complex ov
    cdef double total, nmm
    out_arr = np.empty(nk, dtype=np.float64)
    cdef double[::1] out = out_arr
    norms_arr = np.empty(nm, dtype=np.float64)
    cdef double[::1] norms = norms_arr
    with nogil:
        for k in range(nk):
            for m in range(nm):
                nmm = 0
                for n in range(nn):
                    nmm = nmm + p[k, m, n].real * p[k, m, n].real + p[k, m, n].imag * p[k, m, n].imag
                norms[m] = nmm
            total = 0
            # symmetric in (m, l) and zero on the diagonal: sum m < l once
            for m in range(nm):
                for l in range(m + 1, nm):
                    ov = 0
                    for n in range(nn):
                        ov = ov + p[k, m, n].conjugate() * p[k, l, n]
                    total = total + norms[m] * norms[l] - (ov.real * ov.real + ov.imag * ov.imag)
            out[k] = total
    return out_arr


def jacobi_eigh(a, double tol=1e-15, int max_sweeps=60):
    a_arr = np.array(a, dtype=np.complex128, order="C")
    cdef double complex[:, ::1] h = a_arr
    cdef Py_ssize_t n = h.shape[0], p, q, i
    v_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] v = v_arr
    cdef double scale = max(float(np.abs(a_arr).max()), 1e-300)
    cdef double off, r, tau, t, c, s, xr, xi
    cdef double complex z, e, ec, xp, xq
    cdef int sweep
    with nogil:
        for sweep in range(max_sweeps):
            off = 0
            for p in range(n):
                for q in range(n):
                    if p != q:
                        xr = h[p, q].real / scale
                        xi = h[p, q].imag / scale
                        off = off + xr * xr + xi * xi
            if sqrt(off) <= tol:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    z = h[p, q]
                    # hypot: squaring tiny entries underflows and e loses unit modulus
                    r = hypot(z.real, z.imag)
                    if r <= 1e-300:
                        continue
                    e = z / r
                    ec = e.conjugate()
                    tau = (h[q, q].real - h[p, p].real) / (2 * r)
                    if fabs(tau) > 1e150:
                        t = 0.5 / tau
                    else:
                        t = (1.0 if tau >= 0 else -1.0) / (fabs(tau) + sqrt(1 + tau * tau))
                    c = 1 / sqrt(1 + t * t)
                    s = t * c
                    for i in range(n):
                        xp = h[i, p]
                        xq = h[i, q]
                        h[i, p] = c * xp - s * ec * xq
                        h[i, q] = s * xp + c * ec * xq
                    for i in range(n):
                        xp = h[p, i]
                        xq = h[q, i]
                        h[p, i] = c * xp - s * e * xq
                        h[q, i] = s * xp + c * e * xq
                    h[p, q] = 0
                    h[q, p] = 0
                    for i in range(n):
                        xp = v[i, p]
                        xq = v[i, q]
                        v[i, p] = c * xp - s * ec * xq
                        v[i, q] = s * xp + c * ec * xq
    w = np.real(np.diagonal(a_arr)).copy()
    order = np.argsort(w)
    return w[order], v_arr[:, order]
