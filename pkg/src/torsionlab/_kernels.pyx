# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled inner loops; a line-for-line transcription of _kernels_py.py.

Entries stay generic Python objects (exact rationals, cyclotomic numbers),
so the win comes from typed loop indices and list indexing, not from C
arithmetic. Both backends must stay behaviorally identical; tests compare
them on random inputs.
"""


def convolve(list a, list b):
    """Dense product of coefficient lists: len(a) + len(b) - 1 entries."""
    cdef Py_ssize_t na = len(a)
    cdef Py_ssize_t nb = len(b)
    cdef Py_ssize_t i, j
    cdef list out = [None] * (na + nb - 1)
    cdef object ai, cur
    for i in range(na):
        ai = a[i]
        for j in range(nb):
            cur = out[i + j]
            if cur is None:
                out[i + j] = ai * b[j]
            else:
                out[i + j] = cur + ai * b[j]
    return out


def reduce_tail(list coeffs, Py_ssize_t deg, tuple rows):
    """Fold coefficients of x^deg and above back into the power basis.

    rows[j] holds the coordinates of x^(deg+j); len(coeffs) >= deg.
    Returns exactly deg coordinates.
    """
    cdef list out = list(coeffs[:deg])
    cdef Py_ssize_t j, k
    cdef object c, cur
    cdef tuple row
    for j in range(deg, len(coeffs)):
        c = coeffs[j]
        row = rows[j - deg]
        for k in range(deg):
            cur = out[k]
            if cur is None:
                out[k] = c * row[k]
            else:
                out[k] = cur + c * row[k]
    return out


def poly_divmod(list num, list den):
    """Long division over a field; lists are little-endian, den[-1] != 0.

    Returns (quotient, remainder) with len(remainder) < len(den); either may
    be an empty list meaning zero.
    """
    cdef Py_ssize_t nd = len(den)
    cdef list rem = list(num)
    if len(rem) < nd:
        return [], rem
    cdef object lead = den[nd - 1]
    cdef list quot = [None] * (len(rem) - nd + 1)
    cdef Py_ssize_t i, j
    cdef object c, q
    for i in range(len(rem) - nd, -1, -1):
        c = rem[i + nd - 1]
        q = c / lead
        quot[i] = q
        for j in range(nd):
            rem[i + j] = rem[i + j] - q * den[j]
    return quot, rem[: nd - 1]


def mat_mul(list a, list b):
    """Product of two dense matrices given as lists of row lists."""
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t mid = len(b)
    cdef Py_ssize_t m = len(b[0]) if mid else 0
    cdef list out = []
    cdef Py_ssize_t i, j, k
    cdef list arow, row, brow
    cdef object aik, cur
    for i in range(n):
        arow = a[i]
        row = [None] * m
        for k in range(mid):
            aik = arow[k]
            brow = b[k]
            for j in range(m):
                cur = row[j]
                if cur is None:
                    row[j] = aik * brow[j]
                else:
                    row[j] = cur + aik * brow[j]
        out.append(row)
    return out
