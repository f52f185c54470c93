# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled truncated-Taylor product.

Coefficient arrays are laid out as (ncoef, npts), C-contiguous.  The product
table (I, J, K) lists every pair of multi-indices whose sum stays within the
truncation order; entry t contributes a[I[t]] * b[J[t]] to out[K[t]].
"""

import numpy as np
cimport numpy as cnp

ctypedef fused scalar_t:
    double
    double complex


def jet_mul(const scalar_t[:, ::1] a, const scalar_t[:, ::1] b,
            const cnp.intp_t[::1] I, const cnp.intp_t[::1] J,
            const cnp.intp_t[::1] K, scalar_t[:, ::1] out):
    cdef Py_ssize_t T = I.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    cdef Py_ssize_t t, p, i, j, k
    cdef scalar_t *pa
    cdef scalar_t *pb
    cdef scalar_t *po
    cdef double *ra
    cdef double *rb
    cdef double *ro
    cdef double ar, ai, br, bi
    with nogil:
        out[:, :] = 0
        for t in range(T):
            i = I[t]
            j = J[t]
            k = K[t]
            pa = &a[i, 0]
            pb = &b[j, 0]
            po = &out[k, 0]
            if scalar_t is double:
                for p in range(n):
                    po[p] = po[p] + pa[p] * pb[p]
            else:
                # interleaved (re, im); avoids the NaN-checking complex multiply
                ra = <double *> pa
                rb = <double *> pb
                ro = <double *> po
                for p in range(n):
                    ar = ra[2 * p]
                    ai = ra[2 * p + 1]
                    br = rb[2 * p]
                    bi = rb[2 * p + 1]
                    ro[2 * p] += ar * br - ai * bi
                    ro[2 * p + 1] += ar * bi + ai * br
