# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementation of the hot numerical kernels.

Scalar C loops over flat float64 buffers; API mirrors ``_kernels_py``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt, fabs, M_PI

cnp.import_array()

BACKEND = "compiled"

cdef double SQ2OPI = 0.79788456080286535587989
cdef double INV_SQRT_PI = 0.56418958354775628695

cdef double DR1 = 5.78318596294678452118e0
cdef double DR2 = 3.04712623436620863991e1
cdef double[4] RP0 = [-4.79443220978201773821e9, 1.95617491946556577543e12,
                      -2.49248344360967716204e14, 9.70862251047306323952e15]
cdef double[8] RQ0 = [4.99563147152651017219e2, 1.73785401676374683123e5,
                      4.84409658339962045305e7, 1.11855537045356834862e10,
                      2.11277520115489217587e12, 3.10518229857422583814e14,
                      3.18121955943204943306e16, 1.71086294081043136091e18]
cdef double[7] PP0 = [7.96936729297347051624e-4, 8.28352392107440799803e-2,
                      1.23953371646414299388e0, 5.44725003058768775090e0,
                      8.74716500199817011941e0, 5.30324038235394892183e0,
                      9.99999999999999997821e-1]
cdef double[7] PQ0 = [9.24408810558863637013e-4, 8.56288474354474431428e-2,
                      1.25352743901058953537e0, 5.47097740330417105182e0,
                      8.76190883237069594232e0, 5.30605288235394617618e0,
                      1.00000000000000000218e0]
cdef double[8] QP0 = [-1.13663838898469149931e-2, -1.28252718670509318512e0,
                      -1.95539544257735972385e1, -9.32060152123768231369e1,
                      -1.77681167980488050595e2, -1.47077505154951170175e2,
                      -5.14105326766599330220e1, -6.05014350600728481186e0]
cdef double[7] QQ0 = [6.43178256118178023184e1, 8.56430025976980587198e2,
                      3.88240183605401609683e3, 7.24046774195652478189e3,
                      5.93072701187316984827e3, 2.06209331660327847417e3,
                      2.42005740240291393179e2]

cdef double Z1 = 1.46819706421238932572e1
cdef double Z2 = 4.92184563216946036703e1
cdef double[4] RP1 = [-8.99971225705559398224e8, 4.52228297998194034323e11,
                      -7.27494245221818276015e13, 3.68295732863852883286e15]
cdef double[8] RQ1 = [6.20836478118054335476e2, 2.56987256757748830383e5,
                      8.35146791431949253037e7, 2.21511595479792499675e10,
                      4.74914122079991414898e12, 7.84369607876235854894e14,
                      8.95222336184627338078e16, 5.32278620332680085395e18]
cdef double[7] PP1 = [7.62125616208173112003e-4, 7.31397056940917570436e-2,
                      1.12719608129684925192e0, 5.11207951146807644818e0,
                      8.42404590141772420927e0, 5.21451598682361504063e0,
                      1.00000000000000000254e0]
cdef double[7] PQ1 = [5.71323128072548699714e-4, 6.88455908754495404082e-2,
                      1.10514232634061696926e0, 5.07386386128601488557e0,
                      8.39985554327604159757e0, 5.20982848682361821619e0,
                      9.99999999999999997461e-1]
cdef double[8] QP1 = [5.10862594750176621635e-2, 4.98213872951233449420e0,
                      7.58238284132545283818e1, 3.66779609360150777800e2,
                      7.10856304998926107277e2, 5.97489612400613639965e2,
                      2.11688757100572135698e2, 2.52070205858023719784e1]
cdef double[7] QQ1 = [7.42373277035675149943e1, 1.05644886038262816351e3,
                      4.98641058337653607651e3, 9.56231892404756170795e3,
                      7.99704160447350683650e3, 2.82619278517639096600e3,
                      3.36093607810698293419e2]


cdef inline double polevl(double x, double* coef, int n) nogil:
    cdef double ans = coef[0]
    cdef int i
    for i in range(1, n):
        ans = ans * x + coef[i]
    return ans


cdef inline double p1evl(double x, double* coef, int n) nogil:
    cdef double ans = x + coef[0]
    cdef int i
    for i in range(1, n):
        ans = ans * x + coef[i]
    return ans


cdef inline double j0_scalar(double x) nogil:
    cdef double z, p, w, q, xn
    if x < 0.0:
        x = -x
    if x < 1e-5:
        return 1.0 - x * x / 4.0
    if x <= 5.0:
        z = x * x
        p = (z - DR1) * (z - DR2)
        return p * polevl(z, RP0, 4) / p1evl(z, RQ0, 8)
    w = 5.0 / x
    z = w * w
    p = polevl(z, PP0, 7) / polevl(z, PQ0, 7)
    q = polevl(z, QP0, 8) / p1evl(z, QQ0, 7)
    # carrier cos(x - pi/4) expanded so libm's reduction carries the phase
    xn = cos(x)
    z = sin(x)
    return INV_SQRT_PI * (p * (xn + z) - w * q * (z - xn)) / sqrt(x)


cdef inline double j1_scalar(double x) nogil:
    cdef double z, p, w, q, xn, sign = 1.0
    if x < 0.0:
        x = -x
        sign = -1.0
    if x <= 5.0:
        z = x * x
        w = polevl(z, RP1, 4) / p1evl(z, RQ1, 8)
        return sign * w * x * (z - Z1) * (z - Z2)
    w = 5.0 / x
    z = w * w
    p = polevl(z, PP1, 7) / polevl(z, PQ1, 7)
    q = polevl(z, QP1, 8) / p1evl(z, QQ1, 7)
    # carrier at phase x - 3 pi/4, expanded as for j0
    xn = cos(x)
    z = sin(x)
    return sign * INV_SQRT_PI * (p * (z - xn) + w * q * (z + xn)) / sqrt(x)


def j0(x):
    """Bessel function J0 elementwise on a float64 array."""
    shape = np.shape(x)
    arr = np.ascontiguousarray(x, dtype=np.float64)
    flat = arr.ravel()
    out = np.empty_like(flat)
    cdef double[::1] xin = flat
    cdef double[::1] yout = out
    cdef Py_ssize_t i, n = flat.shape[0]
    with nogil:
        for i in range(n):
            yout[i] = j0_scalar(xin[i])
    return out.reshape(shape)


def j1(x):
    """Bessel function J1 elementwise on a float64 array (odd in x)."""
    shape = np.shape(x)
    arr = np.ascontiguousarray(x, dtype=np.float64)
    flat = arr.ravel()
    out = np.empty_like(flat)
    cdef double[::1] xin = flat
    cdef double[::1] yout = out
    cdef Py_ssize_t i, n = flat.shape[0]
    with nogil:
        for i in range(n):
            yout[i] = j1_scalar(xin[i])
    return out.reshape(shape)


cdef inline void pq_scalar(double s, double v, double* p, double* q) nogil:
    # principal sqrt of s - iv written as p - iq, p >= 0; the v == 0, s < 0
    # stripe (branch disk) resolved as the v -> +0 layer (q > 0)
    cdef double m, pp, qa
    if v == 0.0:
        if s >= 0.0:
            p[0] = sqrt(s)
            q[0] = 0.0
        else:
            p[0] = 0.0
            q[0] = sqrt(-s)
        return
    m = sqrt(s * s + v * v)
    if s >= 0.0:
        # m + s is cancellation-free here
        pp = sqrt(0.5 * (m + s))
        p[0] = pp
        q[0] = v / (2.0 * pp)
    else:
        # compute the dominant imaginary part first to avoid cancellation
        qa = sqrt(0.5 * (m - s))
        p[0] = fabs(v) / (2.0 * qa)
        q[0] = qa if v > 0.0 else -qa


def pq_split(s, v):
    """Principal square root p - iq of w = s - iv, with p >= 0."""
    sa = np.asarray(s, dtype=np.float64)
    va = np.asarray(v, dtype=np.float64)
    sb, vb = np.broadcast_arrays(sa, va)
    shape = sb.shape
    sf = np.ascontiguousarray(sb).ravel()
    vf = np.ascontiguousarray(vb).ravel()
    pout = np.empty_like(sf)
    qout = np.empty_like(sf)
    cdef double[::1] sm = sf
    cdef double[::1] vm = vf
    cdef double[::1] pm = pout
    cdef double[::1] qm = qout
    cdef Py_ssize_t i, n = sf.shape[0]
    cdef double pv, qv
    with nogil:
        for i in range(n):
            pq_scalar(sm[i], vm[i], &pv, &qv)
            pm[i] = pv
            qm[i] = qv
    return pout.reshape(shape), qout.reshape(shape)


def impulse_beam_abs(rho, xi, double a, double u, double t):
    """|retarded propagator| of a unit impulse source on the (rho, xi) grid."""
    ra = np.asarray(rho, dtype=np.float64)
    xa = np.asarray(xi, dtype=np.float64)
    rb, xb = np.broadcast_arrays(ra, xa)
    shape = rb.shape
    rf = np.ascontiguousarray(rb).ravel()
    xf = np.ascontiguousarray(xb).ravel()
    out = np.empty_like(rf)
    cdef double[::1] rm = rf
    cdef double[::1] xm = xf
    cdef double[::1] om = out
    cdef Py_ssize_t i, n = rf.shape[0]
    cdef double s, v, p, q, dre, dim
    cdef double twopi2_8 = 8.0 * M_PI * M_PI
    with nogil:
        for i in range(n):
            s = rm[i] * rm[i] + xm[i] * xm[i] - a * a
            v = 2.0 * a * xm[i]
            pq_scalar(s, v, &p, &q)
            dre = t - p
            dim = q - u
            om[i] = 1.0 / (twopi2_8 * sqrt(p * p + q * q)
                           * sqrt(dre * dre + dim * dim))
    return out.reshape(shape)
