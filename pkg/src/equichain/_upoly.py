"""Dense univariate polynomials in t with integer coefficients.

A polynomial is a tuple of coefficients in ascending degree with no trailing
zeros; the zero polynomial is the empty tuple.
"""

from math import comb

ZERO = ()
ONE = (1,)


def norm(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for k, c in enumerate(q):
        out[k] += c
    return norm(out)


def neg(p):
    return tuple(-c for c in p)


def sub(p, q):
    return add(p, neg(q))


def scale(p, k):
    if k == 0:
        return ZERO
    return tuple(k * c for c in p)


def mul(p, q):
    if not p or not q:
        return ZERO
    out = [0] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        if x:
            for b, y in enumerate(q):
                out[a + b] += x * y
    return norm(out)


def shift(p, k):
    """Multiply by t^k."""
    if not p:
        return ZERO
    return (0,) * k + tuple(p)


def monomial(k, c=1):
    return shift((c,), k) if c else ZERO


def one_minus_t_pow(k):
    return tuple((-1) ** j * comb(k, j) for j in range(k + 1))


def power(p, k):
    out = ONE
    for _ in range(k):
        out = mul(out, p)
    return out


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def div_one_minus_t(p):
    """Exact quotient p / (1 - t); raises ValueError if p(1) != 0."""
    if not p:
        return ZERO
    # p = (1 - t) q  =>  q_k = sum_{j <= k} p_j
    out = []
    acc = 0
    for c in p[:-1]:
        acc += c
        out.append(acc)
    if acc + p[-1] != 0:
        raise ValueError("polynomial not divisible by (1 - t)")
    return norm(out)


def mul_one_minus_t_pow(p, k):
    for _ in range(k):
        p = sub(p, shift(p, 1))
    return p


def valuation_one_minus_t(p):
    """Largest k with (1 - t)^k | p, and the cofactor. Zero gives (0, ZERO)."""
    if not p:
        return 0, ZERO
    k = 0
    while evaluate(p, 1) == 0:
        p = div_one_minus_t(p)
        k += 1
    return k, p


def degree(p):
    return len(p) - 1


def to_str(p, var="t"):
    if not p:
        return "0"
    parts = []
    for k, c in enumerate(p):
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            mon = var if k == 1 else f"{var}^{k}"
            body = mon if abs(c) == 1 else f"{abs(c)}*{mon}"
        parts.append(("-" if c < 0 else "+", body))
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f" {sg} {b}" for sg, b in parts[1:])
