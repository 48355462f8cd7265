"""Finite-width monomial ideals in K[X_n] given by minimal generators."""

from .errors import WidthError, ZeroIdealError
from .grid import ONE, Monomial, format_monomial, parse_monomial


def _interreduce(gens):
    kept = []
    for g in sorted(set(gens), key=Monomial.sort_key):
        if not any(k.divides(g) for k in kept):
            kept.append(g)
    return tuple(kept)


class MonomialIdeal:
    """Monomial ideal of K[X_width] on a grid with ``c`` rows.

    ``gens`` is the interreduced generating set G(J) in canonical order
    (degree, then exponent-lex); ``<1>`` is ``(ONE,)`` and the zero ideal ``()``.
    """

    __slots__ = ("_hash", "c", "gens", "width")

    def __init__(self, c, width, gens=(), *, _trusted=False):
        gens = tuple(gens)
        if not _trusted:
            for g in gens:
                if g.max_column > width or g.max_row > c:
                    raise WidthError(f"generator {g} does not fit a {c} x {width} grid")
            gens = _interreduce(gens)
        self.c = c
        self.width = width
        self.gens = gens
        self._hash = hash((c, width, gens))

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.c == other.c
            and self.width == other.width
            and self.gens == other.gens
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"MonomialIdeal(c={self.c}, width={self.width}, gens=<{', '.join(map(str, self.gens))}>)"

    def __len__(self):
        return len(self.gens)

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return self.gens == (ONE,)

    def contains(self, w):
        return any(g.divides(w) for g in self.gens)

    def widen(self, width):
        """Same generators viewed in a ring with more columns."""
        if width < self.width:
            raise WidthError("cannot narrow an ideal")
        return MonomialIdeal(self.c, width, self.gens, _trusted=True)

    def key(self):
        return (self.c, self.width, self.gens)

    def to_json(self):
        return {"c": self.c, "width": self.width, "gens": [format_monomial(g) for g in self.gens]}

    @classmethod
    def from_json(cls, obj):
        return minimalize([parse_monomial(s) for s in obj["gens"]], obj["width"], obj["c"])

    def __str__(self):
        if self.is_zero():
            return "<0>"
        return "<" + ", ".join(map(str, self.gens)) + ">"


def zero_ideal(c, width):
    return MonomialIdeal(c, width, (), _trusted=True)


def unit_ideal(c, width):
    return MonomialIdeal(c, width, (ONE,), _trusted=True)


def minimalize(gens, width, rows):
    return MonomialIdeal(rows, width, gens)


def colon(J, m):
    """J : m for a monomial m."""
    return MonomialIdeal(J.c, J.width, [g.colon(m) for g in J.gens])


def add(J, K):
    if (J.c, J.width) != (K.c, K.width):
        raise WidthError(f"cannot add ideals of shapes {(J.c, J.width)} and {(K.c, K.width)}")
    return MonomialIdeal(J.c, J.width, J.gens + K.gens)


def add_gens(J, extra):
    return MonomialIdeal(J.c, J.width, J.gens + tuple(extra))


def equals(J, K):
    return J == K


def contained_in(J, K):
    return all(K.contains(g) for g in J.gens)


def eplus(J):
    """Maximal degree of a minimal generator."""
    if J.is_zero():
        raise ZeroIdealError("e^+ is undefined for the zero ideal")
    return max(g.degree for g in J.gens)


def max_column_exponent(J, col):
    """Largest e such that some x[k,col]^e divides a generator of J."""
    return max((e for g in J.gens for (_, j), e in g.items if j == col), default=0)


def column_variables(c, col):
    return [Monomial.var(k, col) for k in range(1, c + 1)]


def q_invariant(J):
    """Sum of the graded dimensions of K[X_n]/J in degrees 0..e^+(J)."""
    from .hilbert import hilbert_quotient, series_prefix

    if J.is_zero():
        raise ZeroIdealError("the q-invariant of the zero ideal is infinite")
    return sum(series_prefix(hilbert_quotient(J), eplus(J)))
