"""Asymptotic profile of a chain from its equivariant Hilbert series.

For n >> 0 one has dim K[X_n]/I_n = A*n + B and deg I_n ~ limit * M^n * n^L.
The symbolic route decomposes H into partial fractions in s over Q(t); the
factors with the largest (1-t)-exponent A carry the leading pole order, and
among them the groups with equal f_j(1) = M_l decide the degree growth.  Every
symbolic profile is checked against exact per-width values from the series
coefficients of H.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm

from . import _upoly as up
from ._ratfunc import (
    ONE as R_ONE,
)
from ._ratfunc import (
    ZERO as R_ZERO,
)
from ._ratfunc import (
    RatFunc,
    clear_denominators,
    qmul,
)
from ._ratfunc import (
    one_minus_t_pow as q_one_minus_t_pow,
)
from .birational import (
    sp_add,
    sp_at_one,
    sp_mul,
    sp_norm,
    sp_pow,
    sp_scale,
    sp_valuation_one_minus_t,
)
from .errors import CrossCheckMismatch, DuplicateFactorError

DEFAULT_WINDOW = (2, 12)


@dataclass
class AsymptoticProfile:
    A: int
    B: int
    M: int
    L: int
    limit: Fraction
    onset: int
    diagnostics: list = field(default_factory=list, compare=False, repr=False)

    def as_tuple(self):
        return (self.A, self.B, self.M, self.L, self.limit)

    def to_json(self):
        lim = self.limit
        return {
            "A": self.A,
            "B": self.B,
            "M": self.M,
            "L": self.L,
            "limit": f"{lim.numerator}/{lim.denominator}",
            "onset": self.onset,
        }


@dataclass
class PartialFractionData:
    """H = poly_part(s) + (1-t)^gamma / r(t) * sum_{j,k} r_{j,k}(t) / (1 - f_j s/(1-t)^{c_j})^k."""

    groups: dict  # (c_j, f_j) -> tuple of integer t-polynomials r_{j,1..b_j}
    r: tuple
    gamma: int
    poly_part: list  # RatFunc coefficients of s^0, s^1, ...


@dataclass
class GroupTerm:
    M: int
    delta: int
    N: int
    b: int
    poly: tuple  # coefficients of the polynomial H(y), ascending, Fractions
    L: int
    limit: Fraction

    def value(self, n):
        """Exact q_n(1) / (1-t)^delta part of this group: M^{n-N} * H(n)."""
        acc = Fraction(0)
        for coef in reversed(self.poly):
            acc = acc * n + coef
        return acc * Fraction(self.M) ** (n - self.N)


@dataclass
class DominantTerm:
    A: int
    M: int
    L: int
    limit_core: Fraction
    delta: int
    terms: list


# -- polynomials in s (or y) over Q(t) ---------------------------------------


def _rp_norm(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _rp_add(p, q):
    n = max(len(p), len(q))
    return _rp_norm([(p[k] if k < len(p) else R_ZERO) + (q[k] if k < len(q) else R_ZERO) for k in range(n)])


def _rp_mul(p, q, trunc=None):
    if not p or not q:
        return []
    size = len(p) + len(q) - 1
    if trunc is not None:
        size = min(size, trunc)
    out = [R_ZERO] * size
    for a, x in enumerate(p):
        if x.is_zero() or a >= size:
            continue
        for b, y in enumerate(q):
            if a + b >= size:
                break
            if not y.is_zero():
                out[a + b] = out[a + b] + x * y
    return _rp_norm(out)


def _rp_scale(p, x):
    return _rp_norm([c * x for c in p])


def _rp_pow(p, k, trunc=None):
    out = [R_ONE]
    for _ in range(k):
        out = _rp_mul(out, p, trunc)
    return out


def _rp_divmod(p, q):
    p = list(p)
    if len(p) < len(q):
        return [], _rp_norm(p)
    out = [R_ZERO] * (len(p) - len(q) + 1)
    lead_inv = q[-1].inverse()
    for k in range(len(p) - len(q), -1, -1):
        coef = p[k + len(q) - 1] * lead_inv
        out[k] = coef
        if not coef.is_zero():
            for m, y in enumerate(q):
                p[k + m] = p[k + m] - coef * y
    return _rp_norm(out), _rp_norm(p[: len(q) - 1])


def _series_div(num, den, order):
    """num/den as a power series truncated to ``order`` terms; den[0] must be nonzero."""
    inv0 = den[0].inverse()
    out = []
    for n in range(order):
        acc = num[n] if n < len(num) else R_ZERO
        for k in range(1, min(n, len(den) - 1) + 1):
            acc = acc - den[k] * out[n - k]
        out.append(acc * inv0)
    return out


def _tpoly(p):
    return RatFunc(tuple(Fraction(x) for x in p))


# -- partial fractions ---------------------------------------------------------


def partial_fractions(H):
    """Partial fractions of H in s over Q(t), cleared to integer numerators."""
    keys = [key for key, _ in H.factors]
    mult = dict(H.factors)
    u = {key: _tpoly(key[1]) / _tpoly(up.one_minus_t_pow(key[0])) for key in keys}
    if len(set(u.values())) != len(keys):
        raise DuplicateFactorError("two denominator factors describe the same pole")
    total = H.a + sum(cj * b for (cj, _), b in H.factors)
    C_inv = _tpoly(up.one_minus_t_pow(total)).inverse()
    g = _rp_norm([_tpoly(c) * C_inv for c in H.num])

    rho = {}
    for key in keys:
        b = mult[key]
        inv_u = u[key].inverse()
        base = [inv_u, -inv_u]  # s = (1 - y)/u_j
        num = []
        power = [R_ONE]
        for m, gm in enumerate(g):
            if m:
                power = _rp_mul(power, base, b)
            num = _rp_add(num, _rp_scale(power, gm))
        den = [R_ONE]
        for other in keys:
            if other == key:
                continue
            v = u[other] * inv_u
            den = _rp_mul(den, _rp_pow([R_ONE - v, v], mult[other], b), b)
        phi = _series_div(num, den, b)
        rho[key] = [phi[b - k] for k in range(1, b + 1)]

    # polynomial part, with the exact reassembly check
    one_minus = {key: [R_ONE, -u[key]] for key in keys}
    full = [R_ONE]
    for key in keys:
        full = _rp_mul(full, _rp_pow(one_minus[key], mult[key]))
    rest = g
    for key in keys:
        others = [R_ONE]
        for other in keys:
            if other != key:
                others = _rp_mul(others, _rp_pow(one_minus[other], mult[other]))
        for k, coef in enumerate(rho[key], start=1):
            if not coef.is_zero():
                term = _rp_mul(_rp_pow(one_minus[key], mult[key] - k), others)
                rest = _rp_add(rest, _rp_scale(term, -coef))
    poly_part, rem = _rp_divmod(rest, full)
    if rem:
        raise CrossCheckMismatch("partial fractions do not reassemble to the input")

    nonzero = [x for coefs in rho.values() for x in coefs if not x.is_zero()]
    if not nonzero:
        return PartialFractionData({key: tuple(() for _ in rho[key]) for key in keys}, (1,), 0, poly_part)
    gamma = min(x.valuation() for x in nonzero)
    shifted = {}
    r = (Fraction(1),)
    for key in keys:
        row = []
        for x in rho[key]:
            if x.is_zero():
                row.append(x)
                continue
            y = x / RatFunc(q_one_minus_t_pow(gamma)) if gamma >= 0 else x * RatFunc(q_one_minus_t_pow(-gamma))
            row.append(y)
            r = _qlcm(r, y.den)
        shifted[key] = row
    numer = {key: [qmul(x.num, _qquot(r, x.den)) if not x.is_zero() else () for x in row] for key, row in shifted.items()}
    scale = lcm(clear_denominators(r), *(clear_denominators(p) for row in numer.values() for p in row))
    r_int = tuple(int(x * scale) for x in r)
    groups = {key: tuple(up.norm(int(x * scale) for x in p) for p in row) for key, row in numer.items()}
    return PartialFractionData(groups, r_int, gamma, poly_part)


def _qlcm(p, q):
    from ._ratfunc import qdivmod, qgcd

    return qdivmod(qmul(p, q), qgcd(p, q))[0]


def _qquot(p, q):
    from ._ratfunc import qdivmod

    quo, rem = qdivmod(p, q)
    assert not rem
    return quo


def pf_coefficient(data, n):
    """Coefficient of s^n of the decomposition, as a RatFunc (for reassembly tests)."""
    acc = data.poly_part[n] if n < len(data.poly_part) else R_ZERO
    pre = RatFunc(q_one_minus_t_pow(max(data.gamma, 0))) / RatFunc(tuple(Fraction(x) for x in data.r))
    if data.gamma < 0:
        pre = pre / RatFunc(q_one_minus_t_pow(-data.gamma))
    for (cj, f), row in data.groups.items():
        u = _tpoly(f) / _tpoly(up.one_minus_t_pow(cj))
        un = R_ONE
        for _ in range(n):
            un = un * u
        for k, p in enumerate(row, start=1):
            if p:
                acc = acc + pre * _tpoly(p) * RatFunc.const(_binom(n + k - 1, k - 1)) * un
    return acc


def _binom(n, k):
    from math import comb

    return comb(n, k)


# -- dominant growth -----------------------------------------------------------


def _binom_poly(b, j):
    """binom(y + b - 1 - j, b - 1) as a polynomial in y."""
    out = (Fraction(1),)
    for m in range(1, b):
        out = qmul(out, (Fraction(m - j), Fraction(1)))
    return tuple(x / factorial(b - 1) for x in out)


def group_asymptotics(members):
    """Growth of the s^n coefficients of sum_j sum_k r_{j,k}(t) / (1 - f_j(t) s)^k.

    All f_j share the value M = f_j(1) > 0. Returns a GroupTerm with the
    (1-t)-valuation delta of those coefficients for n >> 0 and the polynomial
    H with coefficient(1) / (1-t)^delta = M^{n-N} H(n).
    """
    Ms = {up.evaluate(f, 1) for f, _ in members}
    if len(Ms) != 1:
        raise ValueError("group members must share f(1)")
    M = Ms.pop()
    lin = {id(f): sp_norm([(1,), up.neg(f)]) for f, _ in members}
    b = sum(len(rs) for _, rs in members)
    h = ()
    for idx, (f, rs) in enumerate(members):
        others = ((1,),)
        for jdx, (g, ss) in enumerate(members):
            if jdx != idx:
                others = sp_mul(others, sp_pow(lin[id(g)], len(ss)))
        for k, rk in enumerate(rs, start=1):
            if rk:
                term = sp_mul(sp_pow(lin[id(f)], len(rs) - k), others)
                h = sp_add(h, sp_scale(term, rk))
    if not h:
        return None
    delta, htil = sp_valuation_one_minus_t(h)
    h1 = list(sp_at_one(htil))
    while h1 and h1[-1] == 0:
        h1.pop()
    N = len(h1) - 1
    poly = ()
    for j, hj in enumerate(h1):
        if hj:
            bp = tuple(x * hj * Fraction(M) ** (N - j) for x in _binom_poly(b, j))
            poly = _qadd(poly, bp)
    L = len(poly) - 1
    return GroupTerm(M, delta, N, b, poly, L, poly[L] / Fraction(M) ** N)


def _qadd(p, q):
    from ._ratfunc import qadd

    return qadd(p, q)


def dominant_limit(data):
    """Governing (M, L, limit_core) together with delta and the contributing groups.

    Returns None when no factor has a nonzero principal part.
    """
    active = [key for key, row in data.groups.items() if any(row)]
    if not active:
        return None
    A = max(cj for cj, _ in active)
    by_m = {}
    for key in active:
        if key[0] == A:
            by_m.setdefault(up.evaluate(key[1], 1), []).append((key[1], data.groups[key]))
    terms = [t for t in (group_asymptotics(ms) for _, ms in sorted(by_m.items())) if t is not None]
    delta = min(t.delta for t in terms)
    tied = [t for t in terms if t.delta == delta]
    gov = max(tied, key=lambda t: t.M)
    return DominantTerm(A, gov.M, gov.L, gov.limit, delta, tied)


# -- profiles -------------------------------------------------------------------


def per_width_values(H, lo, hi):
    """Exact (n, dim, deg) from the series coefficients, n in lo..hi."""
    out = []
    for n, coef in enumerate(H.series(hi)):
        if n >= lo:
            out.append((n, coef.dim, coef.degree))
    return out


def _zero_profile(H, lo, hi):
    table = per_width_values(H, lo, hi)
    onset = _onset(table, lambda n, dim, deg: dim == 0 and deg == 0)
    if onset is None:
        raise CrossCheckMismatch(
            "series coefficients do not vanish although H has no pole in s",
            symbolic="(0, 0, 0, 0, 0)",
            per_width=table,
        )
    return AsymptoticProfile(0, 0, 0, 0, Fraction(0), onset, table)


def _onset(table, ok):
    onset = None
    for n, dim, deg in reversed(table):
        if not ok(n, dim, deg):
            break
        onset = n
    return onset


def _symbolic_profile(H, lo, hi):
    if not H.factors:
        return _zero_profile(H, lo, hi)
    data = partial_fractions(H)
    dom = dominant_limit(data)
    if dom is None:
        return _zero_profile(H, lo, hi)
    r1 = up.evaluate(data.r, 1)
    A, B, M, L = dom.A, -(data.gamma + dom.delta), dom.M, dom.L
    limit = dom.limit_core / r1
    table = per_width_values(H, lo, hi)

    def ok(n, dim, deg):
        expected = sum(t.value(n) for t in dom.terms) / r1
        return dim == A * n + B and deg == expected

    onset = _onset(table, ok)
    if onset is None or limit <= 0:
        raise CrossCheckMismatch(
            "symbolic profile disagrees with per-width values",
            symbolic={"A": A, "B": B, "M": M, "L": L, "limit": str(limit)},
            per_width=table,
        )
    return AsymptoticProfile(A, B, M, L, limit, onset, table)


def asymptotic_profile(H, window=None):
    """(A, B, M, L, limit) with dim = A n + B and deg ~ limit * M^n * n^L.

    ``window`` is the width range (lo, hi) for the per-width cross-check. On a
    mismatch, denominator factors that divide the numerator are cancelled and
    the extraction is retried once.
    """
    lo, hi = window or DEFAULT_WINDOW
    if lo > hi:
        raise ValueError("empty window")
    try:
        return _symbolic_profile(H, lo, hi)
    except CrossCheckMismatch:
        reduced = H.reduce_factors()
        if reduced.structurally_equal(H):
            raise
        return _symbolic_profile(reduced, lo, hi)


def special_path_profile(H, window=None):
    """Closed-form profile, or None when the nonvanishing hypothesis fails.

    Writes the numerator as sum_j (1-t)^{e_j} g_j(t) s^j with g_j(1) != 0 and
    reads A, B, M, L and the limit off the exponents and the values at t = 1.
    """
    if not H.factors:
        return None
    A = max(cj for (cj, _), _ in H.factors)
    sum_c = sum(cj * b for (cj, _), b in H.factors)
    parts = {}
    for j, gj in enumerate(H.num):
        if gj:
            e, rest = up.valuation_one_minus_t(gj)
            parts[j] = (e, up.evaluate(rest, 1))
    low = min(A * j + e for j, (e, _) in parts.items())
    B = H.a + sum_c - low
    values = sorted((up.evaluate(f, 1) for (cj, f), b in H.factors if cj == A for _ in range(b)), reverse=True)
    M = values[0]
    l = values.count(M) - 1
    bt = len(values)
    D = 1
    for v in values[l + 1 :]:
        D *= M - v
    star = sum(Fraction(g1) / Fraction(M) ** j for j, (e, g1) in parts.items() if A * j + e == low)
    if star == 0:
        return None
    limit = Fraction(M) ** (bt - 1 - l) / (factorial(l) * D) * star
    if limit <= 0:
        return None
    lo, hi = window or DEFAULT_WINDOW
    table = per_width_values(H, lo, hi)
    onset = _onset(table, lambda n, dim, deg: dim == A * n + B)
    if onset is None:
        raise CrossCheckMismatch(
            "closed-form dimension disagrees with per-width values",
            symbolic={"A": A, "B": B},
            per_width=table,
        )
    return AsymptoticProfile(A, B, M, l, limit, onset, table)


def degree_ratio(deg, n, M, L):
    return Fraction(deg) / (Fraction(M) ** n * n**L)


# -- appendix estimates ---------------------------------------------------------


def composition_sum(a, n):
    """Exact sum over n_1 + ... + n_k = n of prod a_i^{n_i}."""
    series = [Fraction(1)] + [Fraction(0)] * n
    for x in a:
        x = Fraction(x)
        for m in range(1, n + 1):
            series[m] += x * series[m - 1]
    return series[n]


def sum_estimate_limit(a):
    """Limit of composition_sum(a, n) / (a_1^n n^l), l + 1 = multiplicity of the largest a_i."""
    a = sorted((Fraction(x) for x in a), reverse=True)
    top = a[0]
    l = a.count(top) - 1
    D = Fraction(1)
    for x in a[l + 1 :]:
        D *= top - x
    return top ** (len(a) - 1 - l) / (factorial(l) * D)
