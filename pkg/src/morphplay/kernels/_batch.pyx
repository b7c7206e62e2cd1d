# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch point-transform kernels.

Single-pass rotate-about-pivot and translate over (n, 3) float64 buffers;
avoids the temporaries the vectorized numpy fallback allocates.
"""

import numpy as np


def rotate_points(points, rotation, pivot):
    pts = np.ascontiguousarray(points, dtype=np.float64)
    rot = np.ascontiguousarray(rotation, dtype=np.float64)
    piv = np.ascontiguousarray(pivot, dtype=np.float64)
    out = np.empty_like(pts)
    _rotate(pts, rot, piv, out)
    return out


def translate_points(points, delta):
    pts = np.ascontiguousarray(points, dtype=np.float64)
    d = np.ascontiguousarray(delta, dtype=np.float64)
    out = np.empty_like(pts)
    _translate(pts, d, out)
    return out


cdef void _rotate(double[:, ::1] pts, double[:, ::1] rot, double[::1] piv,
                  double[:, ::1] out) noexcept nogil:
    cdef Py_ssize_t i, n = pts.shape[0]
    cdef double dx, dy, dz
    cdef double r00 = rot[0, 0], r01 = rot[0, 1], r02 = rot[0, 2]
    cdef double r10 = rot[1, 0], r11 = rot[1, 1], r12 = rot[1, 2]
    cdef double r20 = rot[2, 0], r21 = rot[2, 1], r22 = rot[2, 2]
    cdef double px = piv[0], py = piv[1], pz = piv[2]
    for i in range(n):
        dx = pts[i, 0] - px
        dy = pts[i, 1] - py
        dz = pts[i, 2] - pz
        out[i, 0] = r00 * dx + r01 * dy + r02 * dz + px
        out[i, 1] = r10 * dx + r11 * dy + r12 * dz + py
        out[i, 2] = r20 * dx + r21 * dy + r22 * dz + pz


cdef void _translate(double[:, ::1] pts, double[::1] d,
                     double[:, ::1] out) noexcept nogil:
    cdef Py_ssize_t i, n = pts.shape[0]
    cdef double tx = d[0], ty = d[1], tz = d[2]
    for i in range(n):
        out[i, 0] = pts[i, 0] + tx
        out[i, 1] = pts[i, 1] + ty
        out[i, 2] = pts[i, 2] + tz
