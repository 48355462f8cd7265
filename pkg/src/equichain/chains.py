"""Inc^i-invariant chains of monomial ideals.

A chain is described by a seed ideal at width r; above r the members are the
one-step Inc^i closures of their predecessor, below r they are zero unless an
explicit prefix is given.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import pairwise, permutations

from .errors import InvarianceError, WidthError
from .grid import Monomial, apply_inc_map, enumerate_inc_maps, one_step_maps
from .ideals import MonomialIdeal, contained_in, zero_ideal


@dataclass(frozen=True)
class ChainSpec:
    c: int
    i: int
    r: int
    seed: MonomialIdeal
    prefix: tuple = field(default=())

    def __post_init__(self):
        if self.r < 1 or self.i < 0 or self.c < 1:
            raise ValueError(f"bad chain parameters c={self.c}, i={self.i}, r={self.r}")
        if (self.seed.c, self.seed.width) != (self.c, self.r):
            raise WidthError(f"seed must live in a {self.c} x {self.r} grid")
        prefix = tuple(self.prefix)
        object.__setattr__(self, "prefix", prefix)
        if prefix:
            if len(prefix) != self.r - 1:
                raise WidthError(f"prefix must list I_1..I_{self.r - 1}")
            for n, J in enumerate(prefix, start=1):
                if (J.c, J.width) != (self.c, n):
                    raise WidthError(f"prefix member {n} has the wrong shape")
            members = list(prefix) + [self.seed]
            for lower, upper in pairwise(members):
                check_one_step_invariance(lower, upper, self.i)

    @property
    def normalized(self):
        return all(J.is_zero() for J in self.prefix)

    def normalize(self):
        return ChainSpec(self.c, self.i, self.r, self.seed)

    def is_zero_chain(self):
        return self.seed.is_zero() and self.normalized

    def to_json(self):
        out = {"c": self.c, "i": self.i, "r": self.r, "seed": self.seed.to_json()}
        if self.prefix:
            out["prefix"] = [J.to_json() for J in self.prefix]
        return out

    @classmethod
    def from_json(cls, obj):
        prefix = tuple(MonomialIdeal.from_json(p) for p in obj.get("prefix") or ())
        return cls(obj["c"], obj.get("i", 0), obj["r"], MonomialIdeal.from_json(obj["seed"]), prefix)


def one_step_closure(J, i):
    """<Inc^i_{m,m+1}(J)> in K[X_{m+1}] for J of width m."""
    m = J.width
    gens = [apply_inc_map(pi, g) for pi in one_step_maps(i, m) for g in J.gens]
    return MonomialIdeal(J.c, m + 1, gens)


def direct_closure(J, i, n):
    """<Inc^i_{m,n}(J)> by enumerating every map (reference for one_step_closure)."""
    m = J.width
    maps = enumerate_inc_maps(min(i, m), m, n)
    return MonomialIdeal(J.c, n, [apply_inc_map(pi, g) for pi in maps for g in J.gens])


def check_one_step_invariance(lower, upper, i):
    """Raise InvarianceError unless Inc^i_{m,m+1}(lower) lies in upper."""
    for pi in one_step_maps(i, lower.width):
        for g in lower.gens:
            img = apply_inc_map(pi, g)
            if not upper.contains(img):
                raise InvarianceError(
                    f"image of {g} under {pi} is not in I_{upper.width}",
                    witness={"n": lower.width, "generator": str(g), "map": pi.to_json()},
                )


@lru_cache(maxsize=4096)
def _closure_from_seed(seed, i, n):
    if n == seed.width:
        return seed
    return one_step_closure(_closure_from_seed(seed, i, n - 1), i)


def materialize(chain, n):
    """The member I_n of the chain."""
    if n < 1:
        raise ValueError("widths start at 1")
    if n < chain.r:
        return chain.prefix[n - 1] if chain.prefix else zero_ideal(chain.c, n)
    for m in range(chain.r, n):
        _closure_from_seed(chain.seed, chain.i, m)
    return _closure_from_seed(chain.seed, chain.i, n)


def members(chain, n_max):
    return [materialize(chain, n) for n in range(1, n_max + 1)]


@dataclass(frozen=True)
class StabilityCertificate:
    index: int
    i: int
    window: tuple

    def to_json(self):
        return {"index": self.index, "i": self.i, "window": list(self.window), "semantics": "window-checked"}


def stability_index(chain, i, n_max=None):
    """Least r whose one-step closures regenerate every later member of ``chain``.

    ``chain`` lists I_1..I_N. Returns a StabilityCertificate, or None when no
    index <= n_max is certified by at least one checked step.
    """
    N = len(chain)
    n_max = N if n_max is None else n_max
    for lower, upper in pairwise(chain):
        check_one_step_invariance(lower, upper, i)
    r = N
    while r > 1 and one_step_closure(chain[r - 2], i) == chain[r - 1]:
        r -= 1
    if r >= N or r > n_max:
        return None
    return StabilityCertificate(r, i, (r, N))


def promote_monoid(chain):
    """View an Inc^i chain as an Inc^{i+1} chain.

    Returns ``(spec, index)``: the index stays r when one Inc^{i+1} step from
    I_r already gives I_{r+1}, otherwise it becomes r+1.
    """
    r = chain.r
    I_r = materialize(chain, r)
    I_next = materialize(chain, r + 1)
    if one_step_closure(I_r, chain.i + 1) == I_next:
        return ChainSpec(chain.c, chain.i + 1, r, chain.seed, chain.prefix), r
    prefix = tuple(materialize(chain, n) for n in range(1, r + 1))
    return ChainSpec(chain.c, chain.i + 1, r + 1, I_next, prefix), r + 1


def _relocate(f, images):
    return Monomial._raw(tuple(sorted(((r, images[j - 1]), e) for (r, j), e in f.items)))


def sym_orbit_contains_inc(f, m, n):
    """Check Inc_{m,n} . f inside Sym(n) . f by enumerating both orbits."""
    if n > 6 or m > n:
        raise WidthError("orbit enumeration limited to m <= n <= 6")
    if f.max_column > m:
        raise WidthError(f"{f} does not fit width {m}")
    inc_orbit = {apply_inc_map(pi, f) for pi in enumerate_inc_maps(0, m, n)}
    sym_orbit = {_relocate(f, perm) for perm in permutations(range(1, n + 1))}
    return inc_orbit <= sym_orbit


def is_ascending(chain, n_max):
    ms = members(chain, n_max)
    return all(contained_in(a.widen(b.width), b) for a, b in pairwise(ms))
