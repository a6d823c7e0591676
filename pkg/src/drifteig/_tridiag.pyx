# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled tridiagonal pencil kernels.

Spectrum slicing for symmetric tridiagonal pencils: the number of negative
pivots in the LDL^T factorization of A - sigma*B equals the number of pencil
eigenvalues of (A, M) below sigma for any SPD M congruent to the identity
(Sylvester's law), which is all the eigenvalue machinery upstream needs.

Pivots smaller in magnitude than a scale-based floor are replaced by the
negative floor (the LAPACK _stebz convention), so the count is always
defined; callers that care re-probe at an ulp-shifted sigma when the
substitution flag comes back set.
"""

from libc.math cimport fabs


cdef double _pivot_floor(const double[::1] ae, const double[::1] be,
                         double sigma) noexcept nogil:
    cdef Py_ssize_t i, n = ae.shape[0]
    cdef double w, mx = 1.0
    for i in range(n):
        w = fabs(ae[i] - sigma * be[i])
        if w > mx:
            mx = w
    return 1e-290 * mx * mx


cdef int _count(const double[::1] ad, const double[::1] ae,
                const double[::1] bd, const double[::1] be,
                double sigma, int* substituted) noexcept nogil:
    cdef Py_ssize_t i, n = ad.shape[0]
    cdef int count = 0
    cdef double floor = _pivot_floor(ae, be, sigma)
    cdef double off
    cdef double d = ad[0] - sigma * bd[0]
    substituted[0] = 0
    if fabs(d) < floor:
        d = -floor
        substituted[0] = 1
    if d < 0.0:
        count += 1
    for i in range(1, n):
        off = ae[i - 1] - sigma * be[i - 1]
        d = ad[i] - sigma * bd[i] - off * off / d
        if fabs(d) < floor:
            d = -floor
            substituted[0] = 1
        if d < 0.0:
            count += 1
    return count


def pencil_inertia(const double[::1] ad, const double[::1] ae,
                   const double[::1] bd, const double[::1] be,
                   double sigma):
    """Count eigenvalues of the symmetric matrix A - sigma*B below zero.

    ``ad``/``ae`` are the diagonal and superdiagonal of A, ``bd``/``be``
    those of B.  Returns ``(count, substituted)`` where ``substituted``
    reports that a pivot hit the underflow floor.
    """
    cdef int subst = 0
    cdef int count
    with nogil:
        count = _count(ad, ae, bd, be, sigma, &subst)
    return count, bool(subst)


def smallest_pencil_eigenvalue(const double[::1] ad, const double[::1] ae,
                               const double[::1] md, const double[::1] me,
                               double lo, double hi,
                               double atol, double rtol, int max_iter):
    """Smallest eigenvalue of the pencil (A, M), M SPD tridiagonal.

    Bisection on the pivot count of A - sigma*M over [lo, hi]; the caller
    guarantees count(lo) == 0 and count(hi) >= 1 (Gershgorin bracket).
    """
    cdef double mid, probe, width
    cdef int count, it
    cdef int subst = 0
    with nogil:
        for it in range(max_iter):
            width = hi - lo
            mid = lo + 0.5 * width
            if width <= atol + rtol * fabs(mid):
                break
            probe = mid
            count = _count(ad, ae, md, me, probe, &subst)
            if subst:
                # pivot breakdown at the probe: retry at an ulp-scale shift
                probe = mid + 1e-3 * width + 1e-13 * fabs(mid)
                count = _count(ad, ae, md, me, probe, &subst)
            if count >= 1:
                hi = probe
            else:
                lo = probe
    return lo + 0.5 * (hi - lo)
