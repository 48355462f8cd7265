"""Monomials on the c x oo variable grid and the monoids Inc^i acting on them.

The variable ``x[r,j]`` sits in row ``r`` (1..c) and column ``j`` (1, 2, ...).
An element of Inc^i acts by relocating columns, ``pi . x[r,j] = x[r,pi(j)]``.
"""

import re
from itertools import combinations

from .errors import ArgumentOrderError, DomainError, ParseError


class Monomial:
    """Immutable monomial with sparse storage ``((row, col), exp)``, sorted by (row, col)."""

    __slots__ = ("_hash", "items")

    def __init__(self, entries=()):
        if isinstance(entries, dict):
            entries = entries.items()
        acc = {}
        for (row, col), e in entries:
            if row < 1 or col < 1:
                raise ValueError(f"bad variable position ({row}, {col})")
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                acc[(row, col)] = acc.get((row, col), 0) + e
        self.items = tuple(sorted(acc.items()))
        self._hash = hash(self.items)

    @classmethod
    def _raw(cls, items):
        m = cls.__new__(cls)
        m.items = items
        m._hash = hash(items)
        return m

    @classmethod
    def var(cls, row, col, e=1):
        return cls._raw((((row, col), e),)) if e else cls._raw(())

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.items == other.items

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial({self})"

    def __str__(self):
        return format_monomial(self)

    def __bool__(self):
        return True

    def as_dict(self):
        return dict(self.items)

    def exponent(self, row, col):
        for pos, e in self.items:
            if pos == (row, col):
                return e
        return 0

    @property
    def degree(self):
        return sum(e for _, e in self.items)

    def is_one(self):
        return not self.items

    def columns(self):
        return sorted({col for (_, col), _ in self.items})

    @property
    def max_column(self):
        return max((col for (_, col), _ in self.items), default=0)

    @property
    def max_row(self):
        return max((row for (row, _), _ in self.items), default=0)

    def column_vector(self, col, rows):
        vec = [0] * rows
        for (row, j), e in self.items:
            if j == col:
                vec[row - 1] = e
        return tuple(vec)

    def __mul__(self, other):
        acc = dict(self.items)
        for pos, e in other.items:
            acc[pos] = acc.get(pos, 0) + e
        return Monomial._raw(tuple(sorted(acc.items())))

    def divides(self, other):
        if len(self.items) > len(other.items):
            return False
        od = dict(other.items)
        return all(od.get(pos, 0) >= e for pos, e in self.items)

    def __truediv__(self, other):
        """Exact quotient; raises ValueError if ``other`` does not divide."""
        acc = dict(self.items)
        for pos, e in other.items:
            left = acc.get(pos, 0) - e
            if left < 0:
                raise ValueError(f"{other} does not divide {self}")
            if left:
                acc[pos] = left
            else:
                del acc[pos]
        return Monomial._raw(tuple(sorted(acc.items())))

    def gcd(self, other):
        od = dict(other.items)
        return Monomial._raw(tuple((pos, min(e, od[pos])) for pos, e in self.items if pos in od))

    def lcm(self, other):
        acc = dict(self.items)
        for pos, e in other.items:
            acc[pos] = max(acc.get(pos, 0), e)
        return Monomial._raw(tuple(sorted(acc.items())))

    def colon(self, other):
        """self / gcd(self, other)."""
        od = dict(other.items)
        return Monomial._raw(
            tuple((pos, e - od.get(pos, 0)) for pos, e in self.items if e > od.get(pos, 0))
        )

    def lex_key(self):
        """Key for the grid lex order (x[r,j] < x[r',j'] iff (r, j) < (r', j'))."""
        return tuple(reversed(self.items))

    def sort_key(self):
        return (self.degree, self.items)


ONE = Monomial()

_TOKEN = re.compile(r"\s*x\[\s*(\d+)\s*,\s*(\d+)\s*\](?:\s*\^\s*(\d+))?\s*")


def format_monomial(m):
    if m.is_one():
        return "1"
    return "*".join(f"x[{r},{j}]" + (f"^{e}" if e != 1 else "") for (r, j), e in m.items)


def parse_monomial(text):
    text = text.strip()
    if text == "1":
        return ONE
    entries = []
    for tok in re.split(r"[*·]", text):
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise ParseError(f"cannot parse monomial token {tok!r} in {text!r}")
        r, j, e = int(m.group(1)), int(m.group(2)), int(m.group(3) or 1)
        entries.append(((r, j), e))
    return Monomial(entries)


class IncMap:
    """Restriction of some pi in Inc^i to [i + len(images)].

    Positions 1..i are fixed; position i+k maps to ``images[k-1]``.
    """

    __slots__ = ("i", "images")

    def __init__(self, i, images=()):
        images = tuple(images)
        if i < 0:
            raise ValueError("prefix length must be non-negative")
        prev = i
        for v in images:
            if v <= prev:
                raise ValueError(f"images must be strictly increasing and > {i}: {images}")
            prev = v
        self.i = i
        self.images = images

    @property
    def width(self):
        """Largest position covered by the map."""
        return self.i + len(self.images)

    def __call__(self, j):
        if 1 <= j <= self.i:
            return j
        k = j - self.i
        if 1 <= k <= len(self.images):
            return self.images[k - 1]
        raise DomainError(f"position {j} outside the domain [1..{self.width}] of {self}")

    def as_tuple(self, m=None):
        m = self.width if m is None else m
        return tuple(self(j) for j in range(1, m + 1))

    def __eq__(self, other):
        return isinstance(other, IncMap) and self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return "IncMap(" + ", ".join(f"{j}->{self(j)}" for j in range(1, self.width + 1)) + ")"

    def to_json(self):
        return {"i": self.i, "images": list(self.images)}


def identity(width):
    return IncMap(width)


def apply_inc_map(pi, u):
    """Image of a monomial under the standard action."""
    if u.max_column > pi.width:
        raise DomainError(f"monomial {u} has support beyond the domain of {pi}")
    return Monomial._raw(tuple(sorted(((r, pi(j)), e) for (r, j), e in u.items)))


def shift(i, width):
    """The i-shift sigma_i restricted to [width]."""
    if i >= width:
        return IncMap(i)
    return IncMap(i, range(i + 2, width + 2))


def enumerate_inc_maps(i, m, n):
    """All restrictions to [m] of elements of Inc^i with pi(m) <= n."""
    if m > n or i > m:
        raise ArgumentOrderError(f"need i <= m <= n, got i={i}, m={m}, n={n}")
    return [IncMap(i, imgs) for imgs in combinations(range(i + 1, n + 1), m - i)]


def one_step_maps(i, m):
    """Inc^i_{m,m+1} as the shifts sigma_j, i <= j <= m (sigma_m is the identity)."""
    return [shift(j, m) for j in range(min(i, m), m + 1)]


def inc_divides(i, u, v, rows=None):
    """Return pi in Inc^i with pi(u) | v, or None.

    Greedy earliest fit over the support columns of u. Besides dominance of the
    column vectors, the target of column j must leave room for the positions
    between consecutive support columns, i.e. pi(j) - pi(j') >= j - j'.
    """
    if u.is_one():
        return IncMap(i)
    rows = rows or max(u.max_row, v.max_row)
    ucols = u.columns()
    vmax = v.max_column
    vvecs = {col: v.column_vector(col, rows) for col in v.columns()}
    targets = {}
    prev_src, prev_tgt = 0, 0
    for j in ucols:
        need = u.column_vector(j, rows)
        if j <= i:
            cand = [j]
        else:
            cand = range(max(j, prev_tgt + (j - prev_src)), vmax + 1)
        hit = None
        for tgt in cand:
            have = vvecs.get(tgt)
            if have is not None and all(a <= b for a, b in zip(need, have)):
                hit = tgt
                break
        if hit is None:
            return None
        targets[j] = hit
        prev_src, prev_tgt = j, hit
    # fill positions i+1..max column, packing non-support positions right after the last target
    images = []
    last_src, last_tgt = i, i
    for j in range(i + 1, u.max_column + 1):
        if j in targets:
            last_src, last_tgt = j, targets[j]
            images.append(targets[j])
        else:
            images.append(last_tgt + (j - last_src))
    return IncMap(i, images)


def all_inc_maps_up_to(i, p, q):
    """Every increasing [p] -> [q] fixing [min(i, p)], as IncMaps (brute force)."""
    fixed = min(i, p)
    if p > q:
        return []
    return [IncMap(fixed, imgs) for imgs in combinations(range(fixed + 1, q + 1), p - fixed)]


def inc_divides_bruteforce(i, u, v):
    """Exhaustive reference for inc_divides."""
    if u.is_one():
        return IncMap(i)
    p = u.max_column
    q = max(v.max_column, p)
    for pi in all_inc_maps_up_to(i, p, q):
        if apply_inc_map(pi, u).divides(v):
            return pi
    return None
