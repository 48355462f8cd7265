"""Bivariate rational functions with factored denominators

    g(s, t) / [ (1-t)^a * prod_j ((1-t)^{c_j} - s f_j(t))^{b_j} ]

The numerator is stored as a tuple of t-polynomials indexed by the power of s.
Denominators are never multiplied out except where a computation needs it,
and no factorization beyond merging identical factors is attempted.
"""

from . import _upoly as up
from .errors import InvariantViolation
from .hilbert import UniRational

# -- polynomials in s with coefficients in Z[t] ------------------------------


def sp_norm(p):
    p = [up.norm(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def sp_add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for k, c in enumerate(q):
        out[k] = up.add(out[k], c)
    return sp_norm(out)


def sp_neg(p):
    return tuple(up.neg(c) for c in p)


def sp_sub(p, q):
    return sp_add(p, sp_neg(q))


def sp_mul(p, q):
    if not p or not q:
        return ()
    out = [up.ZERO] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        if x:
            for b, y in enumerate(q):
                if y:
                    out[a + b] = up.add(out[a + b], up.mul(x, y))
    return sp_norm(out)


def sp_scale(p, tpoly):
    return sp_norm(up.mul(c, tpoly) for c in p)


def sp_shift(p, k):
    return sp_norm((up.ZERO,) * k + tuple(p)) if p else ()


def sp_pow(p, k):
    out = (up.ONE,)
    for _ in range(k):
        out = sp_mul(out, p)
    return out


def sp_at_one(p):
    return tuple(up.evaluate(c, 1) for c in p)


def sp_valuation_one_minus_t(p):
    """Largest k with (1-t)^k dividing every coefficient, and the cofactor."""
    if not p:
        return 0, ()
    k = min(up.valuation_one_minus_t(c)[0] for c in p if c)
    out = list(p)
    for _ in range(k):
        out = [up.div_one_minus_t(c) for c in out]
    return k, sp_norm(out)


def factor_poly(cj, f):
    """(1-t)^{c_j} - s f(t) as an s-polynomial."""
    return sp_norm([up.one_minus_t_pow(cj), up.neg(f)])


def sp_divide_factor(p, cj, f):
    """Exact quotient p / ((1-t)^{c_j} - s f), or None if it does not divide."""
    if not p:
        return ()
    alpha_pow = cj
    q = []
    prev = up.ZERO
    for k in range(len(p)):
        top = up.add(p[k], up.mul(f, prev))
        if k == len(p) - 1:
            return sp_norm(q) if not top else None
        try:
            for _ in range(alpha_pow):
                top = up.div_one_minus_t(top)
        except ValueError:
            return None
        q.append(top)
        prev = top
    return sp_norm(q)


def _sp_to_str(p):
    terms = []
    for k, c in enumerate(p):
        if not c:
            continue
        body = up.to_str(c)
        if k == 0:
            terms.append(body)
            continue
        sp = "s" if k == 1 else f"s^{k}"
        if c == up.ONE:
            terms.append(sp)
        elif c == (-1,):
            terms.append("-" + sp)
        else:
            terms.append(f"({body})*{sp}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def _one_minus_t_str(k):
    return "1" if k == 0 else ("(1-t)" if k == 1 else f"(1-t)^{k}")


class BiRational:
    """Immutable bivariate rational function in the canonical denominator shape."""

    __slots__ = ("_series", "a", "factors", "num")

    def __init__(self, num=(), a=0, factors=()):
        num = sp_norm(num)
        merged = {}
        for (cj, f), b in (factors.items() if isinstance(factors, dict) else factors):
            f = up.norm(f)
            if b == 0:
                continue
            if b < 0 or cj < 0:
                raise ValueError("factor multiplicities and exponents must be non-negative")
            if up.evaluate(f, 1) <= 0:
                raise InvariantViolation(f"denominator factor with f(1) = {up.evaluate(f, 1)} <= 0")
            merged[(cj, f)] = merged.get((cj, f), 0) + b
        if not num:
            a, merged = 0, {}
        elif a > 0:
            k, _rest = sp_valuation_one_minus_t(num)
            k = min(k, a)
            if k:
                num = num if k == 0 else _strip(num, k)
                a -= k
        self.num = num
        self.a = a
        self.factors = tuple(sorted(merged.items()))
        self._series = []

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls(((1,),))

    @classmethod
    def from_uni(cls, h, s_power=0):
        """h(t) * s^k for a UniRational h."""
        if h.is_zero():
            return cls()
        if h.pole >= 0:
            return cls(sp_shift((h.num,), s_power), h.pole)
        return cls(sp_shift((up.mul_one_minus_t_pow(h.num, -h.pole),), s_power), 0)

    @classmethod
    def from_t(cls, tpoly, a=0, s_power=0):
        return cls(sp_shift((up.norm(tpoly),), s_power), a)

    # -- structure ------------------------------------------------------------

    def is_zero(self):
        return not self.num

    @property
    def factor_count(self):
        """Number of non-(1-t) denominator factors, with multiplicity."""
        return sum(b for _, b in self.factors)

    @property
    def max_cj(self):
        return max((cj for (cj, _), _ in self.factors), default=None)

    def numerator_at_one(self):
        return sp_norm((v,) for v in sp_at_one(self.num))

    def numerator_degree_at_one(self):
        vals = sp_at_one(self.num)
        nz = [k for k, v in enumerate(vals) if v]
        return max(nz) if nz else None

    def denominator(self):
        den = (up.one_minus_t_pow(self.a),)
        for (cj, f), b in self.factors:
            den = sp_mul(den, sp_pow(factor_poly(cj, f), b))
        return den

    def _den_with(self, a, factors):
        """Extra denominator pieces needed to move from self's denominator to (a, factors)."""
        mine = dict(self.factors)
        extra = (up.one_minus_t_pow(a - self.a),)
        for key, b in factors.items():
            missing = b - mine.get(key, 0)
            if missing:
                extra = sp_mul(extra, sp_pow(factor_poly(*key), missing))
        return extra

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, BiRational):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a = max(self.a, other.a)
        factors = dict(self.factors)
        for key, b in other.factors:
            factors[key] = max(factors.get(key, 0), b)
        num = sp_add(
            sp_mul(self.num, self._den_with(a, factors)),
            sp_mul(other.num, other._den_with(a, factors)),
        )
        return BiRational(num, a, factors)

    def __neg__(self):
        return BiRational(sp_neg(self.num), self.a, self.factors)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BiRational):
            return NotImplemented
        factors = dict(self.factors)
        for key, b in other.factors:
            factors[key] = factors.get(key, 0) + b
        return BiRational(sp_mul(self.num, other.num), self.a + other.a, factors)

    def scale_poly(self, p):
        """Multiply by a polynomial p(s, t) given as an s-polynomial of t-polynomials."""
        return BiRational(sp_mul(self.num, sp_norm(p)), self.a, self.factors)

    def times_s(self, k=1):
        return BiRational(sp_shift(self.num, k), self.a, self.factors)

    def __eq__(self, other):
        if not isinstance(other, BiRational):
            return NotImplemented
        a = min(self.a, other.a)
        mine, theirs = dict(self.factors), dict(other.factors)
        common = {k: min(b, theirs.get(k, 0)) for k, b in mine.items()}
        left_den = (up.one_minus_t_pow(self.a - a),)
        right_den = (up.one_minus_t_pow(other.a - a),)
        for key, b in mine.items():
            left_den = sp_mul(left_den, sp_pow(factor_poly(*key), b - common.get(key, 0)))
        for key, b in theirs.items():
            right_den = sp_mul(right_den, sp_pow(factor_poly(*key), b - common.get(key, 0)))
        return sp_mul(self.num, right_den) == sp_mul(other.num, left_den)

    __hash__ = None

    def structurally_equal(self, other):
        return (self.num, self.a, self.factors) == (other.num, other.a, other.factors)

    def reduce_factors(self):
        """Cancel denominator factors that divide the numerator exactly."""
        num = self.num
        factors = dict(self.factors)
        changed = True
        while changed:
            changed = False
            for (cj, f), b in list(factors.items()):
                if b == 0:
                    continue
                q = sp_divide_factor(num, cj, f)
                if q is not None:
                    num = q
                    factors[(cj, f)] = b - 1
                    changed = True
        return BiRational(num, self.a, factors)

    # -- series ---------------------------------------------------------------

    def series(self, N):
        """UniRational coefficients of s^0..s^N."""
        cache = self._series
        if len(cache) > N:
            return cache[: N + 1]
        den = self.denominator()
        e0 = self.a + sum(cj * b for (cj, _), b in self.factors)
        rest = [UniRational(d, 0) for d in den[1:]]
        for n in range(len(cache), N + 1):
            acc = UniRational(self.num[n] if n < len(self.num) else up.ZERO, 0)
            for k, dk in enumerate(rest, start=1):
                if k > n:
                    break
                if not dk.is_zero():
                    acc = acc - dk * cache[n - k]
            cache.append(UniRational(acc.num, acc.pole + e0))
        return cache[: N + 1]

    # -- output ---------------------------------------------------------------

    def to_json(self):
        return {
            "num": [[si, ti, c] for si, tp in enumerate(self.num) for ti, c in enumerate(tp) if c],
            "a": self.a,
            "factors": [{"c_j": cj, "f": list(f), "b": b} for (cj, f), b in self.factors],
        }

    @classmethod
    def from_json(cls, obj):
        rows = {}
        for si, ti, c in obj["num"]:
            rows.setdefault(si, {})[ti] = rows.get(si, {}).get(ti, 0) + c
        deg = max(rows, default=-1)
        num = [
            up.norm([rows.get(k, {}).get(j, 0) for j in range(max(rows.get(k, {0: 0}), default=0) + 1)])
            for k in range(deg + 1)
        ]
        factors = [((fobj["c_j"], tuple(fobj["f"])), fobj["b"]) for fobj in obj.get("factors", [])]
        return cls(num, obj.get("a", 0), factors)

    def __str__(self):
        if self.is_zero():
            return "0"
        k, rest = sp_valuation_one_minus_t(self.num)
        body = _sp_to_str(rest)
        if k:
            numer = _one_minus_t_str(k) if rest == ((1,),) else f"{_one_minus_t_str(k)}*({body})"
        else:
            numer = body if " " not in body else f"({body})"
        dens = []
        if self.a:
            dens.append(_one_minus_t_str(self.a))
        for (cj, f), b in self.factors:
            if f == up.ONE:
                ftxt = "s"
            elif len(f) == 1:
                ftxt = f"{f[0]}*s"
            else:
                ftxt = f"s*({up.to_str(f)})"
            piece = f"({_one_minus_t_str(cj)} - {ftxt})"
            dens.append(piece + (f"^{b}" if b > 1 else ""))
        if not dens:
            return numer
        return f"{numer} / ({' * '.join(dens)})" if len(dens) > 1 else f"{numer} / {dens[0]}"

    def __repr__(self):
        return f"BiRational({self})"


def _strip(num, k):
    out = list(num)
    for _ in range(k):
        out = [up.div_one_minus_t(c) for c in out]
    return sp_norm(out)


def add(x, y):
    return x + y


def mul(x, y):
    return x * y


def scale_poly(x, p):
    return x.scale_poly(p)


def series_coeff(H, n):
    """Coefficient of s^n as a reduced UniRational."""
    return H.series(n)[n]


def solve_linear(known, multiplier):
    """known / multiplier for a multiplier 1 - s*ftilde(t)/(1-t)^k with no s-free part beyond 1.

    The cleared multiplier (1-t)^{c_j} - s f(t), with the (1-t)-content of
    ftilde stripped into c_j, becomes a denominator factor.
    """
    if multiplier.factors:
        raise ValueError("multiplier must have a pure (1-t)^k denominator")
    num = multiplier.num
    if len(num) > 2 or not num or num[0] != up.one_minus_t_pow(multiplier.a):
        raise ValueError("multiplier must have the form 1 - s*f(t)/(1-t)^k")
    if len(num) == 1:
        return known
    return divide_by_one_minus(known, up.neg(num[1]), multiplier.a)


def divide_by_one_minus(known, ftilde, k):
    """known / (1 - s * ftilde(t) / (1-t)^k)."""
    ftilde = up.norm(ftilde)
    if not ftilde:
        return known
    v, f = up.valuation_one_minus_t(ftilde)
    if v > k:
        raise InvariantViolation("multiplier content exceeds its (1-t) power")
    cj = k - v
    if up.evaluate(f, 1) <= 0:
        raise InvariantViolation(f"stripped multiplier has f(1) = {up.evaluate(f, 1)} <= 0")
    factors = dict(known.factors)
    factors[(cj, f)] = factors.get((cj, f), 0) + 1
    return BiRational(sp_scale(known.num, up.one_minus_t_pow(cj)), known.a, factors)


def geometric_zero_chain(c):
    """(1-t)^c / ((1-t)^c - s)."""
    return BiRational(((up.one_minus_t_pow(c)),), 0, [((c, up.ONE), 1)])


def free_prefix(c, r):
    """sum_{n=0}^{r} s^n / (1-t)^{cn}."""
    if r < 0:
        return BiRational()
    num = [up.one_minus_t_pow(c * (r - n)) for n in range(r + 1)]
    return BiRational(num, c * r)
