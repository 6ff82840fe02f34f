# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled inner loops; same contracts as ``_kernels_py``."""

from libc.stdlib cimport malloc, free


def forward_differences(values):
    cdef list w = list(values)
    cdef Py_ssize_t n = len(w), i, j
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            w[i] = w[i] - w[i - 1]
    return w


def newton_values(coeffs, Py_ssize_t count):
    cdef list w = list(coeffs[:count])
    if len(w) < count:
        w.extend([0] * (count - len(w)))
    cdef Py_ssize_t n = len(w), i, j
    for j in range(n - 1, 0, -1):
        for i in range(j, n):
            w[i] = w[i] + w[i - 1]
    return w


def binomial_row(a, Py_ssize_t d):
    cdef list row = [1] * (d + 1)
    cdef Py_ssize_t k
    acc = 1
    for k in range(1, d + 1):
        acc = acc * (a - k + 1) // k
        row[k] = acc
    return row


def eval_binomial(coeffs, a):
    cdef Py_ssize_t k, n = len(coeffs)
    cdef bint nonneg = a >= 0
    total = 0
    acc = 1
    for k in range(n):
        if k:
            acc = acc * (a - k + 1) // k
            if nonneg and acc == 0:
                break
        c = coeffs[k]
        if c:
            total += c * acc
    return total


cdef void _axis_apply(list w, tuple shape, Py_ssize_t axis, bint inverse):
    cdef Py_ssize_t length = shape[axis]
    if length < 2:
        return
    cdef Py_ssize_t stride = 1, s, block, total, base, off, i, j, p
    for s in shape[axis + 1:]:
        stride *= s
    block = stride * length
    total = len(w)
    for base in range(0, total, block):
        for off in range(base, base + stride):
            if inverse:
                for j in range(length - 1, 0, -1):
                    for i in range(j, length):
                        p = off + i * stride
                        w[p] = w[p] + w[p - stride]
            else:
                for j in range(1, length):
                    for i in range(length - 1, j - 1, -1):
                        p = off + i * stride
                        w[p] = w[p] - w[p - stride]


def grid_forward_differences(flat, shape):
    cdef list w = list(flat)
    cdef tuple sh = tuple(shape)
    cdef Py_ssize_t axis
    for axis in range(len(sh)):
        _axis_apply(w, sh, axis, False)
    return w


def grid_newton_values(flat, shape):
    cdef list w = list(flat)
    cdef tuple sh = tuple(shape)
    cdef Py_ssize_t axis
    for axis in range(len(sh)):
        _axis_apply(w, sh, axis, True)
    return w


def binomial_to_monomial(coeffs):
    cdef Py_ssize_t d = len(coeffs) - 1, n, i, k
    if d < 0:
        return [], 1
    den = 1
    for k in range(2, d + 1):
        den *= k
    cdef list out = [0] * (d + 1)
    cdef list falling = [1]
    cdef list nxt
    scale = den
    for n in range(d + 1):
        if n:
            nxt = [0] * (n + 1)
            for i in range(n):
                a = falling[i]
                nxt[i + 1] += a
                nxt[i] -= (n - 1) * a
            falling = nxt
            scale //= n
        c = coeffs[n]
        if c:
            mult = c * scale
            for i in range(n + 1):
                out[i] += mult * falling[i]
    return out, den


def poly_eval_mod(flat_exps, Py_ssize_t nvars, coefs, point, m):
    if m >= 2 ** 31:
        return _poly_eval_mod_obj(flat_exps, nvars, coefs, point, m)
    cdef long long mm = m
    cdef Py_ssize_t nterms = len(coefs), t, v, e, maxe = 0
    for e in flat_exps:
        if e > maxe:
            maxe = e
    cdef long long *pw = <long long *> malloc(nvars * (maxe + 1) * sizeof(long long))
    cdef long long x, term, total = 0
    try:
        for v in range(nvars):
            x = point[v] % m
            pw[v * (maxe + 1)] = 1 % mm
            for e in range(1, maxe + 1):
                pw[v * (maxe + 1) + e] = pw[v * (maxe + 1) + e - 1] * x % mm
        for t in range(nterms):
            term = coefs[t] % m
            for v in range(nvars):
                e = flat_exps[t * nvars + v]
                if e:
                    term = term * pw[v * (maxe + 1) + e] % mm
            total = (total + term) % mm
    finally:
        free(pw)
    return total


def _poly_eval_mod_obj(flat_exps, Py_ssize_t nvars, coefs, point, m):
    pt = [x % m for x in point]
    total = 0
    cdef Py_ssize_t t, v
    for t in range(len(coefs)):
        term = coefs[t] % m
        for v in range(nvars):
            e = flat_exps[t * nvars + v]
            if e:
                term = term * pow(pt[v], e, m) % m
        total += term
    return total % m


def binomial_tuples_mod(start, stop, Py_ssize_t d, m):
    cdef list out = []
    cdef Py_ssize_t n
    cdef long long mm
    cdef long long *row
    if m >= 2 ** 62:
        pyrow = [x % m for x in binomial_row(start, d)]
        for _ in range(start, stop):
            out.append(tuple(pyrow[1:]))
            for n in range(d, 0, -1):
                pyrow[n] = (pyrow[n] + pyrow[n - 1]) % m
        return out
    mm = m
    init = binomial_row(start, d)
    row = <long long *> malloc((d + 1) * sizeof(long long))
    try:
        for n in range(d + 1):
            row[n] = init[n] % m
        for _ in range(start, stop):
            out.append(tuple([row[n] for n in range(1, d + 1)]))
            for n in range(d, 0, -1):
                row[n] = (row[n] + row[n - 1]) % mm
    finally:
        free(row)
    return out
