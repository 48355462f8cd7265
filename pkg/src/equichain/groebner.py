"""Polynomials on the grid, lex Groebner bases, and the passage to monomial chains.

The term order is lex with the variables ordered row-major, x[r,j] < x[r',j']
iff r < r' or (r = r' and j < j'). Shifting columns preserves it, so initial
ideals of an Inc^i-invariant chain again form an Inc^i-invariant chain.
"""

import re
from fractions import Fraction
from itertools import combinations

from .chains import ChainSpec, StabilityCertificate, one_step_closure
from .errors import ParseError, WidthError, WindowExhausted
from .grid import (
    ONE,
    IncMap,
    Monomial,
    apply_inc_map,
    enumerate_inc_maps,
    format_monomial,
    inc_divides,
    parse_monomial,
)
from .ideals import MonomialIdeal


class GridPolynomial:
    """Sparse polynomial with exact rational coefficients in K[X_width]."""

    __slots__ = ("_lm", "terms", "width")

    def __init__(self, terms, width=None):
        if isinstance(terms, dict):
            terms = terms.items()
        acc = {}
        for m, coef in terms:
            coef = Fraction(coef)
            if coef:
                acc[m] = acc.get(m, 0) + coef
                if not acc[m]:
                    del acc[m]
        self.terms = acc
        need = max((m.max_column for m in acc), default=0)
        if width is None:
            width = need
        elif need > width:
            raise WidthError(f"polynomial uses column {need} beyond width {width}")
        self.width = width
        self._lm = max(acc, key=Monomial.lex_key) if acc else None

    @classmethod
    def monomial(cls, m, coef=1, width=None):
        return cls({m: coef}, width)

    def is_zero(self):
        return not self.terms

    @property
    def lm(self):
        return self._lm

    @property
    def lc(self):
        return self.terms[self._lm]

    def monic(self):
        lc = self.lc
        return GridPolynomial({m: c / lc for m, c in self.terms.items()}, self.width)

    def __eq__(self, other):
        return isinstance(other, GridPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + c
        return GridPolynomial(acc, max(self.width, other.width))

    def __neg__(self):
        return GridPolynomial({m: -c for m, c in self.terms.items()}, self.width)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coef, mono=ONE):
        return GridPolynomial({m * mono: c * coef for m, c in self.terms.items()}, max(self.width, mono.max_column))

    def __mul__(self, other):
        acc = {}
        for m, c in self.terms.items():
            for n, d in other.terms.items():
                k = m * n
                acc[k] = acc.get(k, 0) + c * d
        return GridPolynomial(acc, max(self.width, other.width))

    def apply(self, pi, width=None):
        return GridPolynomial({apply_inc_map(pi, m): c for m, c in self.terms.items()}, width)

    def widen(self, width):
        return GridPolynomial(self.terms, width)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mc[0].lex_key(), reverse=True)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"GridPolynomial({self})"


# -- text form -------------------------------------------------------------------

_COEF = re.compile(r"\(?\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*\)?")


def format_polynomial(f):
    if f.is_zero():
        return "0"
    out = []
    for m, c in f.sorted_terms():
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if m.is_one():
            body = str(a)
        elif a == 1:
            body = format_monomial(m)
        else:
            body = f"{a}*{format_monomial(m)}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def _split_terms(text):
    terms, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch in "+-" and depth == 0 and k > start:
            prev = text[:k].rstrip()
            if prev and prev[-1] not in "*·^/":
                terms.append(text[start:k])
                start = k
    terms.append(text[start:])
    return [t.strip() for t in terms if t.strip()]


def parse_polynomial(text, width=None):
    """Parse ``±(p/q)*x[r,j]^e*...`` terms joined by + and -."""
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    terms = {}
    for term in _split_terms(text):
        sign = 1
        body = term
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:].strip()
        coef = Fraction(sign)
        factors = []
        for tok in re.split(r"\s*[*·]\s*(?![^(]*\))", body):
            tok = tok.strip()
            if tok.startswith("x"):
                factors.append(parse_monomial(tok))
                continue
            m = _COEF.fullmatch(tok)
            if not m:
                raise ParseError(f"cannot parse term {term!r} in {text!r}")
            coef *= Fraction(int(m.group(1)), int(m.group(2) or 1))
        mono = ONE
        for f in factors:
            mono = mono * f
        terms[mono] = terms.get(mono, 0) + coef
    return GridPolynomial(terms, width)


# -- Buchberger -----------------------------------------------------------------


def normal_form(f, basis):
    """Full reduction of f modulo ``basis`` (a list of monic polynomials)."""
    work = dict(f.terms)
    rest = {}
    while work:
        m = max(work, key=Monomial.lex_key)
        c = work.pop(m)
        for g in basis:
            if g.lm.divides(m):
                q = m / g.lm
                for gm, gc in g.terms.items():
                    if gm == g.lm:
                        continue
                    k = gm * q
                    v = work.get(k, 0) - c * gc
                    if v:
                        work[k] = v
                    else:
                        work.pop(k, None)
                break
        else:
            rest[m] = c
    return GridPolynomial(rest, f.width)


def s_polynomial(f, g):
    lcm = f.lm.lcm(g.lm)
    return f.scale(1 / f.lc, lcm / f.lm) - g.scale(1 / g.lc, lcm / g.lm)


def buchberger_lex(gens, width=None):
    """Reduced lex Groebner basis (monic, interreduced, sorted by leading monomial)."""
    gens = [g for g in gens if not g.is_zero()]
    if width is None:
        width = max((g.width for g in gens), default=0)
    basis = []
    for g in gens:
        h = normal_form(g.widen(width), basis)
        if not h.is_zero():
            basis.append(h.monic())
    pairs = {(a, b) for a in range(len(basis)) for b in range(a)}
    while pairs:
        a, b = min(pairs, key=lambda p: (basis[p[0]].lm.lcm(basis[p[1]].lm).degree, p))
        pairs.discard((a, b))
        fa, fb = basis[a], basis[b]
        lcm = fa.lm.lcm(fb.lm)
        if fa.lm.gcd(fb.lm).is_one():
            continue
        if _chain_criterion(a, b, lcm, basis, pairs):
            continue
        h = normal_form(s_polynomial(fa, fb), basis)
        if h.is_zero():
            continue
        basis.append(h.monic())
        k = len(basis) - 1
        pairs |= {(k, j) for j in range(k)}
    return _reduce_basis(basis, width)


def _chain_criterion(a, b, lcm, basis, pending):
    for k, g in enumerate(basis):
        if k in (a, b) or not g.lm.divides(lcm):
            continue
        if (max(a, k), min(a, k)) not in pending and (max(b, k), min(b, k)) not in pending:
            return True
    return False


def _reduce_basis(basis, width):
    basis = sorted(basis, key=lambda g: g.lm.lex_key())
    minimal = []
    for g in basis:
        if not any(h.lm.divides(g.lm) for h in minimal):
            minimal = [h for h in minimal if not g.lm.divides(h.lm)]
            minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        h = normal_form(g, others)
        out.append(h.monic().widen(width))
    return sorted(out, key=lambda g: g.lm.lex_key())


def initial_ideal(basis, c, width):
    return MonomialIdeal(c, width, [g.lm for g in basis])


def is_groebner(basis):
    mon = [g.monic() for g in basis]
    for f, g in combinations(mon, 2):
        if f.lm.gcd(g.lm).is_one():
            continue
        if not normal_form(s_polynomial(f, g), mon).is_zero():
            return False
    return True


# -- polynomial chains ----------------------------------------------------------


def chain_generators(polys, i, r, n):
    """Inc^i_{r,n}-images of the seed polynomials, as polynomials of width n."""
    maps = enumerate_inc_maps(min(i, r), r, n)
    seen = {}
    for pi in maps:
        for f in polys:
            g = f.apply(pi, n)
            seen.setdefault(frozenset(g.terms.items()), g)
    return list(seen.values())


def chain_bases(polys, i, r, n_max):
    """Reduced Groebner bases of the chain members I_r .. I_{n_max}."""
    return {n: buchberger_lex(chain_generators(polys, i, r, n), n) for n in range(r, n_max + 1)}


def polynomial_stability_index(bases, i, r):
    """Least m >= r with I_{k+1} generated by Inc^i_{k,k+1}(I_k) for all checked k >= m."""
    top = max(bases)
    m = top
    while m > r:
        lower = bases[m - 1]
        step = [g.apply(pi, m) for pi in _one_step(i, m - 1) for g in lower]
        if buchberger_lex(step, m) != bases[m]:
            break
        m -= 1
    return m


def _one_step(i, m):
    from .grid import one_step_maps

    return one_step_maps(i, m)


def initial_chain(polys, c, i, r, window):
    """Monomial chain of lex initial ideals of the chain generated by ``polys`` at width r.

    Returns ``(spec, certificate, poly_index)``. The seed width R of ``spec``
    is the first width in the window from which one-step closures of the
    initial ideals reproduce every later initial ideal up to the window end;
    below R the initial ideals are kept as an explicit prefix (zero below r).
    """
    lo, hi = window
    lo = max(lo, r)
    if hi <= lo:
        raise WindowExhausted("window must contain at least two widths")
    bases = chain_bases(polys, i, r, hi)
    ini = {n: initial_ideal(bases[n], c, n) for n in bases}
    R = hi
    while R > r and one_step_closure(ini[R - 1], i) == ini[R]:
        R -= 1
    if R >= hi:
        raise WindowExhausted(f"initial ideals not one-step stable before width {hi}; widen the window")
    poly_index = polynomial_stability_index(bases, i, r)
    if poly_index > R:
        raise AssertionError(f"polynomial chain stabilizes at {poly_index} after its initial chain at {R}")
    prefix = tuple(ini[n] if n >= r else MonomialIdeal(c, n) for n in range(1, R))
    if all(J.is_zero() for J in prefix):
        prefix = ()
    spec = ChainSpec(c, i, R, ini[R], prefix)
    return spec, StabilityCertificate(R, i, (R, hi)), poly_index


# -- equivariant Groebner bases -------------------------------------------------


def _extend(pi, width):
    """Extend an IncMap to [width] with the smallest possible images."""
    images = list(pi.images)
    last = pi.width if not images else images[-1]
    pos = pi.width
    while pos < width:
        pos += 1
        last += 1
        if pos > pi.i:
            images.append(last)
    return IncMap(pi.i, images) if width > pi.i else IncMap(pi.i)


def inc_reduce(f, basis, i, width):
    """Reduce f by Inc^i-images of ``basis`` that fit into [width].

    Divisors are found with inc_divides; the greedy witness has pointwise
    smallest images, so when it does not fit into [width] no other map does.
    """
    work = dict(f.terms)
    rest = {}
    while work:
        m = max(work, key=Monomial.lex_key)
        c = work[m]
        for g in basis:
            pi = inc_divides(i, g.lm, m)
            if pi is None:
                continue
            pi = _extend(pi, g.width)
            if max(pi.as_tuple(g.width), default=0) > width:
                continue
            h = g.apply(pi, width)
            assert h.lm == apply_inc_map(pi, g.lm), "Inc action must preserve leading terms"
            q = m / h.lm
            for hm, hc in h.terms.items():
                k = hm * q
                v = work.get(k, 0) - c / h.lc * hc
                if v:
                    work[k] = v
                else:
                    work.pop(k, None)
            break
        else:
            rest[m] = work.pop(m)
    return GridPolynomial(rest, width)


def inc_minimize(basis, i):
    """Drop elements whose leading monomial is Inc^i-divisible by another's."""
    keep = []
    for g in basis:
        if not any(h is not g and inc_divides(i, h.lm, g.lm) is not None for h in basis):
            keep.append(g)
    return keep


def equivariant_gb_truncation(polys, c, i, r, n_max, window=2):
    """Search for a finite Inc^i-Groebner basis by truncating at growing widths.

    For w = r, r+1, ..., n_max the reduced basis B_w at width w is accepted when,
    for every width u in w..w+window, all S-pairs among the Inc^i_{w,u}-images
    of B_w reduce to zero by Inc^i-images of B_w. Returns ``(basis, w, status)``
    where ``basis`` is Inc-minimized; the status records that the certificate
    covers the checked window only.
    """
    for w in range(r, n_max + 1):
        B = buchberger_lex(chain_generators(polys, i, r, w), w)
        if _window_certified(B, i, w, window):
            status = {"certified_width": w, "window": [w, w + window], "semantics": "window-checked"}
            return inc_minimize(B, i), w, status
    raise WindowExhausted(f"no width up to {n_max} passed the S-pair check")


def _window_certified(B, i, w, window):
    if not B:
        return True
    for u in range(w, w + window + 1):
        images = []
        seen = set()
        for pi in enumerate_inc_maps(min(i, w), w, u):
            for g in B:
                h = g.apply(pi, u)
                key = frozenset(h.terms.items())
                if key not in seen:
                    seen.add(key)
                    images.append(h)
        for f, g in combinations(images, 2):
            if f.lm.gcd(g.lm).is_one():
                continue
            if not inc_reduce(s_polynomial(f, g), B, i, u).is_zero():
                return False
    return True


# -- JSON -----------------------------------------------------------------------


def poly_spec_from_json(obj):
    c, width = obj["c"], obj["width"]
    polys = [parse_polynomial(s, width) for s in obj["gens"]]
    for f in polys:
        for m in f.terms:
            if m.max_row > c:
                raise WidthError(f"{m} uses a row beyond c = {c}")
    return c, obj.get("i", 0), width, polys


def basis_to_json(basis):
    return [format_polynomial(g) for g in basis]
