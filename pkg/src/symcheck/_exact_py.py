"""Pure-Python exact kernels over Z[i].

``rref_int`` is fraction-free Gauss-Jordan elimination.  Rows arrive as
separate real/imaginary integer lists (denominators already cleared by the
caller, which is harmless since row scaling preserves the row space).  The
result is the reduced row-echelon form: one ``(re, im, den)`` triple per
nonzero row, entries ``(re[j] + i*im[j]) / den`` with pivot 1.
"""

from math import gcd


def _div_exact(xa, xb, da, db, n):
    """(xa + xb i) / (da + db i) where n = da^2 + db^2; the quotient must lie in Z[i]."""
    qa, ra = divmod(xa * da + xb * db, n)
    qb, rb = divmod(xb * da - xa * db, n)
    if ra or rb:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return qa, qb


def rref_int(re_rows, im_rows, ncols):
    """Return ``(pivots, rows)``; mutates its inputs.

    Integer-preserving Gauss-Jordan: every update divides by the previous
    pivot, which keeps all entries equal to minors of the input and so
    bounds their size polynomially.
    """
    nrows = len(re_rows)
    r = 0
    pivots = []
    da, db, dn = 1, 0, 1  # previous pivot and its norm
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        best_norm = 0
        for i in range(r, nrows):
            a = re_rows[i][c]
            b = im_rows[i][c]
            if a or b:
                n = a * a + b * b
                if best < 0 or n < best_norm:
                    best, best_norm = i, n
        if best < 0:
            continue
        if best != r:
            re_rows[r], re_rows[best] = re_rows[best], re_rows[r]
            im_rows[r], im_rows[best] = im_rows[best], im_rows[r]
        pra = re_rows[r]
        prb = im_rows[r]
        pa = pra[c]
        pb = prb[c]
        for i in range(nrows):
            if i == r:
                continue
            ra = re_rows[i]
            rb = im_rows[i]
            qa = ra[c]
            qb = rb[c]
            # row_i <- (pivot * row_i - q * row_r) / previous pivot
            for j in range(0 if i < r else c, ncols):
                xa = ra[j]
                xb = rb[j]
                ya = pra[j]
                yb = prb[j]
                ta = pa * xa - pb * xb - (qa * ya - qb * yb)
                tb = pa * xb + pb * xa - (qa * yb + qb * ya)
                if dn == 1 and db == 0:
                    ra[j] = ta if da == 1 else -ta
                    rb[j] = tb if da == 1 else -tb
                elif ta or tb:
                    ra[j], rb[j] = _div_exact(ta, tb, da, db, dn)
                else:
                    ra[j] = rb[j] = 0
        da, db, dn = pa, pb, best_norm
        pivots.append(c)
        r += 1

    out = []
    for k, c in enumerate(pivots):
        ra = re_rows[k]
        rb = im_rows[k]
        pa = ra[c]
        pb = rb[c]
        den = pa * pa + pb * pb
        # multiply by conj(pivot) so the pivot becomes the real number den
        na = [0] * ncols
        nb = [0] * ncols
        for j in range(c, ncols):
            xa = ra[j]
            xb = rb[j]
            na[j] = xa * pa + xb * pb
            nb[j] = xb * pa - xa * pb
        g = gcd(den, *na, *nb)
        if g > 1:
            den //= g
            na = [x // g for x in na]
            nb = [x // g for x in nb]
        out.append((na, nb, den))
    return pivots, out


def matmul_int(ar, ai, br, bi):
    """Product of Gaussian-integer matrices given as real/imaginary int tables."""
    n = len(ar)
    m = len(br)
    p = len(br[0]) if m else 0
    cr = []
    ci = []
    bcols_r = [[br[k][j] for k in range(m)] for j in range(p)]
    bcols_i = [[bi[k][j] for k in range(m)] for j in range(p)]
    for i in range(n):
        rr = ar[i]
        ri = ai[i]
        out_r = [0] * p
        out_i = [0] * p
        for j in range(p):
            colr = bcols_r[j]
            coli = bcols_i[j]
            sr = 0
            si = 0
            for k in range(m):
                xr = rr[k]
                xi = ri[k]
                if not xr and not xi:
                    continue
                yr = colr[k]
                yi = coli[k]
                sr += xr * yr - xi * yi
                si += xr * yi + xi * yr
            out_r[j] = sr
            out_i[j] = si
        cr.append(out_r)
        ci.append(out_i)
    return cr, ci
