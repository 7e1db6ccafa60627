"""Pure-Python inner loops.

These four functions carry almost all of the arithmetic volume of the
package: coefficient convolution (scalar and polynomial multiplication),
power-basis tail reduction (cyclotomic multiplication), polynomial long
division (gcd chains, Smith reduction) and small dense matrix products.
torsionlab._kernels is a line-for-line Cython transcription; the dispatcher
in torsionlab.kernels picks whichever is importable. Elements are opaque
objects supporting +, -, * and (for division) /, so both rational
coordinates and cyclotomic coefficients run through the same code.
"""


def convolve(a, b):
    """Dense product of coefficient lists: len(a) + len(b) - 1 entries."""
    na = len(a)
    nb = len(b)
    out = [None] * (na + nb - 1)
    for i in range(na):
        ai = a[i]
        for j in range(nb):
            cur = out[i + j]
            if cur is None:
                out[i + j] = ai * b[j]
            else:
                out[i + j] = cur + ai * b[j]
    return out


def reduce_tail(coeffs, deg, rows):
    """Fold coefficients of x^deg and above back into the power basis.

    rows[j] holds the coordinates of x^(deg+j); len(coeffs) >= deg.
    Returns exactly deg coordinates.
    """
    out = list(coeffs[:deg])
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


def poly_divmod(num, den):
    """Long division over a field; lists are little-endian, den[-1] != 0.

    Returns (quotient, remainder) with len(remainder) < len(den); either may
    be an empty list meaning zero.
    """
    nd = len(den)
    rem = list(num)
    if len(rem) < nd:
        return [], rem
    lead = den[nd - 1]
    quot = [None] * (len(rem) - nd + 1)
    for i in range(len(rem) - nd, -1, -1):
        c = rem[i + nd - 1]
        q = c / lead
        quot[i] = q
        for j in range(nd):
            rem[i + j] = rem[i + j] - q * den[j]
    return quot, rem[: nd - 1]


def mat_mul(a, b):
    """Product of two dense matrices given as lists of row lists."""
    n = len(a)
    mid = len(b)
    m = len(b[0]) if mid else 0
    out = []
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
