"""Exact Hilbert series of K[X_n]/J for monomial ideals J (the per-width oracle).

The series is computed as the K-polynomial of J divided by (1-t)^{cn}, where the
K-polynomial comes from the pivot recursion

    K(J) = K(J + <x>) + t * K(J : x)

with variable-disjoint splitting and a closed form once every generator is a
pure power. Monomials are packed into Python ints with one bit field per
variable and a guard bit, so divisibility is a single subtraction.
"""

import sys
from collections import Counter

from . import _upoly as up


class UniRational:
    """``num(t) / (1 - t)^pole`` with integer coefficients, reduced at t = 1."""

    __slots__ = ("num", "pole")

    def __init__(self, num, pole=0):
        num = up.norm(num)
        if num:
            k, num = up.valuation_one_minus_t(num)
            pole -= k
        else:
            pole = 0
        self.num = num
        self.pole = pole

    def __eq__(self, other):
        return isinstance(other, UniRational) and (self.num, self.pole) == (other.num, other.pole)

    def __hash__(self):
        return hash((self.num, self.pole))

    def __repr__(self):
        return f"UniRational({up.to_str(self.num)} / (1-t)^{self.pole})"

    def is_zero(self):
        return not self.num

    @property
    def dim(self):
        return self.pole if self.num else 0

    @property
    def degree(self):
        return up.evaluate(self.num, 1)

    def __add__(self, other):
        a = max(self.pole, other.pole)
        return UniRational(
            up.add(
                up.mul_one_minus_t_pow(self.num, a - self.pole),
                up.mul_one_minus_t_pow(other.num, a - other.pole),
            ),
            a,
        )

    def __neg__(self):
        return UniRational(up.neg(self.num), self.pole)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return UniRational(up.mul(self.num, other.num), self.pole + other.pole)

    def to_json(self):
        return {"num": list(self.num), "pole": self.pole}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["num"]), obj["pole"])

    def __str__(self):
        if not self.num:
            return "0"
        den = "" if self.pole == 0 else (" / (1-t)" + (f"^{self.pole}" if self.pole != 1 else ""))
        if self.pole < 0:
            return f"({up.to_str(self.num)}) * (1-t)^{-self.pole}"
        return f"({up.to_str(self.num)}){den}"


def series_prefix(h, D):
    """Power-series coefficients h(0..D)."""
    coeffs = list(h.num[: D + 1]) + [0] * max(0, D + 1 - len(h.num))
    if h.pole < 0:
        poly = up.mul_one_minus_t_pow(h.num, -h.pole)
        return list(poly[: D + 1]) + [0] * max(0, D + 1 - len(poly))
    for _ in range(h.pole):
        acc = 0
        for j in range(D + 1):
            acc += coeffs[j]
            coeffs[j] = acc
    return coeffs


class _Packing:
    def __init__(self, c, width, maxexp):
        self.c = c
        self.width = width
        self.bits = max(2, (maxexp + 1).bit_length() + 1)
        self.field = (1 << (self.bits - 1)) - 1
        self.nvars = c * width
        self.guard = sum(1 << (v * self.bits + self.bits - 1) for v in range(self.nvars))

    def pack(self, m):
        out = 0
        for (r, j), e in m.items:
            out |= e << (((r - 1) * self.width + (j - 1)) * self.bits)
        return out

    def fields(self, g):
        """Nonzero (var, exp) pairs of a packed monomial."""
        out = []
        b, f = self.bits, self.field
        v = 0
        while g:
            e = g & f
            if e:
                out.append((v, e))
            g >>= b
            v += 1
        return out


class _KPoly:
    def __init__(self, pk, strategy):
        self.pk = pk
        self.strategy = strategy
        self.memo = {}

    def divides(self, u, w):
        g = self.pk.guard
        return ((w | g) - u) & g == g

    def minimalize(self, gens):
        gens = sorted(set(gens), key=lambda g: (sum(e for _, e in self.pk.fields(g)), g))
        kept = []
        for g in gens:
            for k in kept:
                if self.divides(k, g):
                    break
            else:
                kept.append(g)
        return kept

    def components(self, info):
        comps = []  # [varmask, [gens]]
        for g, fl in info:
            mask = 0
            for v, _ in fl:
                mask |= 1 << v
            merged_mask, merged = mask, [g]
            rest = []
            for cm, cg in comps:
                if cm & merged_mask:
                    merged_mask |= cm
                    merged.extend(cg)
                else:
                    rest.append((cm, cg))
            rest.append((merged_mask, merged))
            comps = rest
        return comps

    def kpoly(self, gens):
        key = frozenset(gens)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        out = self._compute(gens)
        self.memo[key] = out
        return out

    def _compute(self, gens):
        if not gens:
            return up.ONE
        if 0 in gens:
            return up.ZERO
        pk = self.pk
        info = [(g, pk.fields(g)) for g in gens]
        mixed = [fl for _, fl in info if len(fl) > 1]
        if not mixed:
            out = up.ONE
            for _, fl in info:
                out = up.mul(out, up.sub(up.ONE, up.monomial(fl[0][1])))
            return out
        comps = self.components(info)
        if len(comps) > 1:
            out = up.ONE
            for _, cg in comps:
                out = up.mul(out, self.kpoly(cg))
            return out
        v = self.pick_pivot(mixed)
        shift = v * pk.bits
        unit = 1 << shift
        plus = [g for g in gens if not (g >> shift) & pk.field] + [unit]
        quot = self.minimalize(g - unit if (g >> shift) & pk.field else g for g in gens)
        return up.add(self.kpoly(plus), up.shift(self.kpoly(quot), 1))

    def pick_pivot(self, mixed):
        counts = Counter(v for fl in mixed for v, _ in fl)
        if self.strategy == "first":
            return min(counts)
        return max(counts, key=lambda v: (counts[v], -v))


def hilbert_quotient(J, strategy="frequent"):
    """Reduced Hilbert series of K[X_width]/J.

    ``strategy`` picks the pivot variable: ``"frequent"`` (most frequent in
    mixed generators) or ``"first"`` (lowest variable index); the result does
    not depend on it.
    """
    nvars = J.c * J.width
    if J.is_zero():
        return UniRational(up.ONE, nvars)
    if J.is_unit():
        return UniRational(up.ZERO, 0)
    maxexp = max(e for g in J.gens for _, e in g.items)
    pk = _Packing(J.c, J.width, maxexp)
    engine = _KPoly(pk, strategy)
    limit = sys.getrecursionlimit()
    if limit < 20000:
        sys.setrecursionlimit(20000)
    kp = engine.kpoly([pk.pack(g) for g in J.gens])
    return UniRational(kp, nvars)


def dim_and_degree(J):
    h = hilbert_quotient(J)
    return (h.dim, h.degree)


def free_series(nvars):
    return UniRational(up.ONE, nvars)
