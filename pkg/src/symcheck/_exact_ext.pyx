# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the kernels in ``_exact_py``; same inputs, same outputs."""

from math import gcd


cdef tuple _div_exact(object xa, object xb, object da, object db, object n):
    qa, ra = divmod(xa * da + xb * db, n)
    qb, rb = divmod(xb * da - xa * db, n)
    if ra or rb:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return qa, qb


def rref_int(list re_rows, list im_rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(re_rows)
    cdef Py_ssize_t r = 0, c, i, j, best, k
    cdef list pivots = []
    cdef list ra, rb, pra, prb, na, nb, out
    cdef object a, b, n, best_norm, pa, pb, qa, qb, xa, xb, ya, yb, ta, tb, den, g
    cdef object da = 1, db = 0, dn = 1
    cdef bint unit_real

    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        best_norm = 0
        for i in range(r, nrows):
            a = (<list>re_rows[i])[c]
            b = (<list>im_rows[i])[c]
            if a or b:
                n = a * a + b * b
                if best < 0 or n < best_norm:
                    best = i
                    best_norm = n
        if best < 0:
            continue
        if best != r:
            re_rows[r], re_rows[best] = re_rows[best], re_rows[r]
            im_rows[r], im_rows[best] = im_rows[best], im_rows[r]
        pra = <list>re_rows[r]
        prb = <list>im_rows[r]
        pa = pra[c]
        pb = prb[c]
        unit_real = dn == 1 and db == 0
        for i in range(nrows):
            if i == r:
                continue
            ra = <list>re_rows[i]
            rb = <list>im_rows[i]
            qa = ra[c]
            qb = rb[c]
            for j in range(0 if i < r else c, ncols):
                xa = ra[j]
                xb = rb[j]
                ya = pra[j]
                yb = prb[j]
                ta = pa * xa - pb * xb - (qa * ya - qb * yb)
                tb = pa * xb + pb * xa - (qa * yb + qb * ya)
                if unit_real:
                    ra[j] = ta if da == 1 else -ta
                    rb[j] = tb if da == 1 else -tb
                elif ta or tb:
                    ra[j], rb[j] = _div_exact(ta, tb, da, db, dn)
                else:
                    ra[j] = 0
                    rb[j] = 0
        da = pa
        db = pb
        dn = best_norm
        pivots.append(c)
        r += 1

    out = []
    for k in range(len(pivots)):
        c = pivots[k]
        ra = <list>re_rows[k]
        rb = <list>im_rows[k]
        pa = ra[c]
        pb = rb[c]
        den = pa * pa + pb * pb
        na = [0] * ncols
        nb = [0] * ncols
        for j in range(c, ncols):
            xa = ra[j]
            xb = rb[j]
            na[j] = xa * pa + xb * pb
            nb[j] = xb * pa - xa * pb
        g = gcd(den, *na, *nb)
        if g > 1:
            den = den // g
            na = [x // g for x in na]
            nb = [x // g for x in nb]
        out.append((na, nb, den))
    return pivots, out


def matmul_int(list ar, list ai, list br, list bi):
    cdef Py_ssize_t n = len(ar)
    cdef Py_ssize_t m = len(br)
    cdef Py_ssize_t p = len(<list>br[0]) if m else 0
    cdef Py_ssize_t i, j, k
    cdef list cr = [], ci = [], rr, ri, colr, coli, out_r, out_i
    cdef object sr, si, xr, xi, yr, yi
    cdef list bcols_r = [[(<list>br[k])[j] for k in range(m)] for j in range(p)]
    cdef list bcols_i = [[(<list>bi[k])[j] for k in range(m)] for j in range(p)]
    for i in range(n):
        rr = <list>ar[i]
        ri = <list>ai[i]
        out_r = [0] * p
        out_i = [0] * p
        for j in range(p):
            colr = <list>bcols_r[j]
            coli = <list>bcols_i[j]
            sr = 0
            si = 0
            for k in range(m):
                xr = rr[k]
                xi = ri[k]
                if not xr and not xi:
                    continue
                yr = colr[k]
                yi = coli[k]
                sr = sr + (xr * yr - xi * yi)
                si = si + (xr * yi + xi * yr)
            out_r[j] = sr
            out_i[j] = si
        cr.append(out_r)
        ci.append(out_i)
    return cr, ci
