"""Pure numpy implementations of the hot kernels.

Used when the compiled ``_ckernels`` extension is unavailable or when
``DOUBLEJC_BACKEND=python`` is set.  Signatures and results match the
Cython versions to rounding.
"""
import numpy as np

JACOBI_MAX_SWEEPS = 60


def _sinc_t(rabi, t):
    # t * sin(rabi t) / (rabi t), finite as rabi -> 0
    return t * np.sinc(rabi * t / np.pi)


def subsystem_amplitudes(nu, omega, g, t):
    """Return (f, g_amp, f_bar, h) for one pair at times ``t``."""
    t = np.asarray(t, dtype=float)
    delta = omega - nu
    rabi = np.hypot(g, delta / 2)
    phase = np.exp(-1j * nu * t)
    c = np.cos(rabi * t)
    st = _sinc_t(rabi, t)
    f = phase * (c - 0.5j * delta * st)
    f_bar = phase * (c + 0.5j * delta * st)
    g_amp = -1j * g * phase * st
    h = np.exp(0.5j * delta * t)
    return f, g_amp, f_bar, h


def subsystem_unitaries(nu, omega, g, t):
    """Stack of 3x3 unitaries over (|up,0>, |down,1>, |down,0>), shape (T, 3, 3)."""
    f, ga, fb, h = subsystem_amplitudes(nu, omega, g, np.atleast_1d(t))
    u = np.zeros(f.shape + (3, 3), dtype=complex)
    u[:, 0, 0] = f
    u[:, 0, 1] = ga
    u[:, 1, 0] = ga
    u[:, 1, 1] = fb
    u[:, 2, 2] = h
    return u


_ROWS = np.array([0, 1, 0, 1, 2, 0, 2, 1, 2])
_COLS = np.array([0, 0, 1, 1, 2, 2, 0, 2, 1])


def trajectory(coeffs, params, times):
    """Closed-form coefficients c1..d4 at each time, shape (T, 9).

    ``params`` is (nu_a, omega_a, g_a, nu_b, omega_b, g_b).
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    times = np.asarray(times, dtype=float)
    m = np.zeros((3, 3), dtype=complex)
    m[_ROWS, _COLS] = coeffs
    ua = subsystem_unitaries(*params[:3], times)
    ub = subsystem_unitaries(*params[3:], times)
    out = np.einsum("tij,jk,tlk->til", ua, m, ub)
    return out[:, _ROWS, _COLS]


def wedge_batch(psi):
    """Wedge measure for a batch of (M, N) amplitude matrices.

    Row m of each matrix is the projected vector <m|psi>.  Returns
    1/2 sum_{m,l} (<m|m><l|l> - |<m|l>|^2) per batch entry.
    """
    psi = np.asarray(psi, dtype=complex)
    gram = psi @ np.conj(np.swapaxes(psi, -1, -2))
    diag = np.real(np.diagonal(gram, axis1=-2, axis2=-1))
    area2 = diag[..., :, None] * diag[..., None, :] - np.abs(gram) ** 2
    return 0.5 * area2.sum(axis=(-2, -1))


def jacobi_eigh(a, tol=1e-15, max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigen-decomposition of a small Hermitian matrix by cyclic Jacobi.

    Returns ascending eigenvalues and the matching eigenvectors as columns.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(np.abs(a).max(), 1e-300)
    for _ in range(max_sweeps):
        # normalised before squaring so tiny matrices do not underflow to zero
        off = np.sqrt(np.sum(np.abs(a[~np.eye(n, dtype=bool)] / scale) ** 2))
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                z = a[p, q]
                r = abs(z)
                if r <= 1e-300:
                    continue
                e = z / r
                tau = (a[q, q].real - a[p, p].real) / (2 * r)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1 + tau * tau))
                c = 1 / np.sqrt(1 + t * t)
                s = t * c
                # plane rotation V = [[c, s], [-s conj(e), c conj(e)]]
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * np.conj(e) * cq
                a[:, q] = s * cp + c * np.conj(e) * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * e * rq
                a[q, :] = s * rp + c * e * rq
                a[p, q] = a[q, p] = 0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(e) * vq
                v[:, q] = s * vp + c * np.conj(e) * vq
    w = np.real(np.diagonal(a)).copy()
    order = np.argsort(w)
    return w[order], v[:, order]
