"""Pure-Python inner loops. ``_kernels.pyx`` mirrors this module function for function."""


def forward_differences(values):
    """Return ``[(Δ^n v)(0) for n in range(len(values))]``.

    Works for any element type with subtraction (ints, Fractions).
    """
    w = list(values)
    n = len(w)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            w[i] = w[i] - w[i - 1]
    return w


def newton_values(coeffs, count):
    """Values of ``sum c_n C(x, n)`` at ``x = 0 .. count-1``; inverse of forward_differences."""
    w = list(coeffs[:count])
    if len(w) < count:
        w.extend([0] * (count - len(w)))
    n = len(w)
    for j in range(n - 1, 0, -1):
        for i in range(j, n):
            w[i] = w[i] + w[i - 1]
    return w


def binomial_row(a, d):
    """``[C(a, 0), ..., C(a, d)]`` for any integer ``a`` (negative allowed)."""
    row = [1] * (d + 1)
    acc = 1
    for k in range(1, d + 1):
        acc = acc * (a - k + 1) // k
        row[k] = acc
    return row


def eval_binomial(coeffs, a):
    """Evaluate ``sum coeffs[n] * C(a, n)`` exactly with integer arithmetic."""
    total = 0
    acc = 1
    for k, c in enumerate(coeffs):
        if k:
            acc = acc * (a - k + 1) // k
            if acc == 0 and a >= 0:
                break
        if c:
            total += c * acc
    return total


def _axis_apply(w, shape, axis, inverse):
    length = shape[axis]
    if length < 2:
        return
    stride = 1
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
    """Multivariate forward differences on a C-ordered grid of values."""
    w = list(flat)
    for axis in range(len(shape)):
        _axis_apply(w, shape, axis, False)
    return w


def grid_newton_values(flat, shape):
    """Inverse of grid_forward_differences on the same grid shape."""
    w = list(flat)
    for axis in range(len(shape)):
        _axis_apply(w, shape, axis, True)
    return w


def binomial_to_monomial(coeffs):
    """Expand ``sum c_n C(X, n)`` into monomials.

    Returns ``(numerators, denominator)`` with ``denominator = d!`` so that the
    monomial coefficient of ``X^i`` is ``numerators[i] / denominator``.
    """
    d = len(coeffs) - 1
    if d < 0:
        return [], 1
    den = 1
    for k in range(2, d + 1):
        den *= k
    out = [0] * (d + 1)
    falling = [1]  # X(X-1)...(X-n+1)
    scale = den  # d!/n!
    for n, c in enumerate(coeffs):
        if n:
            nxt = [0] * (n + 1)
            for i, a in enumerate(falling):
                nxt[i + 1] += a
                nxt[i] -= (n - 1) * a
            falling = nxt
            scale //= n
        if c:
            m = c * scale
            for i, a in enumerate(falling):
                out[i] += m * a
    return out, den


def poly_eval_mod(flat_exps, nvars, coefs, point, m):
    """Evaluate an integer polynomial (flattened exponent rows) at ``point`` modulo ``m``."""
    pt = [x % m for x in point]
    total = 0
    for t, c in enumerate(coefs):
        term = c % m
        base = t * nvars
        for v in range(nvars):
            e = flat_exps[base + v]
            if e:
                term = term * pow(pt[v], e, m) % m
        total += term
    return total % m


def binomial_tuples_mod(start, stop, d, m):
    """``(C(a,1), ..., C(a,d)) mod m`` for ``a`` in ``range(start, stop)``.

    Walks Pascal's rule upward from ``start`` so no division is needed mod ``m``.
    """
    row = [x % m for x in binomial_row(start, d)]
    out = []
    for _ in range(start, stop):
        out.append(tuple(row[1:]))
        for n in range(d, 0, -1):
            row[n] = (row[n] + row[n - 1]) % m
    return out
