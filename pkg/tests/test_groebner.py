import random
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
import sympy

from equichain.chains import materialize
from equichain.engine import cross_check, equivariant_hilbert
from equichain.errors import ParseError, WidthError, WindowExhausted
from equichain.grid import Monomial, enumerate_inc_maps
from equichain.grid import parse_monomial as P
from equichain.groebner import (
    GridPolynomial,
    basis_to_json,
    buchberger_lex,
    chain_bases,
    chain_generators,
    equivariant_gb_truncation,
    format_polynomial,
    inc_reduce,
    initial_chain,
    initial_ideal,
    is_groebner,
    parse_polynomial,
    poly_spec_from_json,
)
from equichain.hilbert import hilbert_quotient, series_prefix

MINOR = "x[1,1]*x[2,2] - x[1,2]*x[2,1]"


def grid_vars(c, n):
    # sympy generators ordered from largest to smallest grid variable
    keys = sorted(((r, j) for r in range(1, c + 1) for j in range(1, n + 1)), reverse=True)
    return keys, sympy.symbols([f"x_{r}_{j}" for r, j in keys])


def to_sympy(f, keys, syms):
    idx = dict(zip(keys, syms))
    return sum(sympy.Rational(co.numerator, co.denominator) * sympy.Mul(*[idx[k] ** e for k, e in m.items]) for m, co in f.terms.items())


def from_sympy(expr, keys, syms, width):
    poly = sympy.Poly(expr, *syms)
    terms = {}
    for exps, co in poly.terms():
        m = Monomial({k: e for k, e in zip(keys, exps) if e})
        terms[m] = Fraction(int(co.p), int(co.q))
    return GridPolynomial(terms, width)


def random_poly(rng, c, n, nterms=3, deg=2):
    terms = {}
    for _ in range(nterms):
        m = Monomial({(rng.randint(1, c), rng.randint(1, n)): rng.randint(1, deg) for _ in range(rng.randint(1, 2))})
        terms[m] = rng.choice([-2, -1, 1, 2, Fraction(1, 2)])
    return GridPolynomial(terms, n)


def test_buchberger_matches_sympy():
    rng = random.Random(11)
    for _ in range(40):
        c, n = rng.randint(1, 2), rng.randint(1, 3)
        gens = [f for f in (random_poly(rng, c, n) for _ in range(rng.randint(1, 3))) if not f.is_zero()]
        if not gens:
            continue
        keys, syms = grid_vars(c, n)
        ref = sympy.groebner([to_sympy(f, keys, syms) for f in gens], *syms, order="lex")
        want = sorted((from_sympy(g, keys, syms, n).monic() for g in ref.exprs), key=lambda g: g.lm.lex_key())
        got = buchberger_lex(gens, n)
        assert got == want
        assert is_groebner(got)


def test_minors_form_a_groebner_basis():
    gens = chain_generators([parse_polynomial(MINOR)], 0, 2, 3)
    gb = buchberger_lex(gens, 3)
    assert len(gb) == 3 and set(gb) == {g.monic() for g in gens}
    want = {P("x[1,1]*x[2,2]"), P("x[1,1]*x[2,3]"), P("x[1,2]*x[2,3]")}
    assert set(initial_ideal(gb, 2, 3).gens) == want


def test_monomial_and_single_inputs():
    gens = [GridPolynomial.monomial(P(m), 3) for m in ("x[1,1]^2", "x[1,1]^3*x[1,2]", "x[1,2]")]
    assert [g.lm for g in buchberger_lex(gens)] == [P("x[1,1]^2"), P("x[1,2]")]
    f = parse_polynomial("3*x[1,2]^2 - 6*x[1,1]")
    assert buchberger_lex([f]) == [f.monic()]
    assert buchberger_lex([]) == []


def test_leading_monomial_follows_row_major_lex():
    f = parse_polynomial("x[1,3]^5 + x[2,1]")
    assert f.lm == P("x[2,1]")
    g = parse_polynomial("x[1,1]^9 + x[1,2]")
    assert g.lm == P("x[1,2]")


def test_parse_format_round_trip():
    rng = random.Random(12)
    for _ in range(50):
        f = random_poly(rng, 2, 3, 4, 3)
        if f.is_zero():
            continue
        assert parse_polynomial(format_polynomial(f), f.width) == f
    f = parse_polynomial("-(1/2)*x[1,1]·x[2,1]^2 + 3/4*x[1,2] - 1")
    assert f.terms[Monomial({})] == -1
    assert f.terms[P("x[1,2]")] == Fraction(3, 4)


@pytest.mark.parametrize("bad", ["", "x[1,1] +* 2", "y[1,1]", "x[1,1]*foo"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_polynomial(bad)


def test_width_checks():
    with pytest.raises(WidthError):
        parse_polynomial("x[1,4]", 3)
    with pytest.raises(WidthError):
        poly_spec_from_json({"c": 1, "width": 2, "gens": ["x[2,1]"]})


def _rank(rows):
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        piv = rows.pop()
        if not piv:
            continue
        k, v = next(iter(piv.items()))
        rank += 1
        for r in rows:
            if k in r:
                f = r[k] / v
                for kk, vv in piv.items():
                    r[kk] = r.get(kk, 0) - f * vv
                    if not r[kk]:
                        del r[kk]
        rows = [r for r in rows if r]
    return rank


def _monomials(c, n, deg):
    variables = [(r, j) for r in range(1, c + 1) for j in range(1, n + 1)]
    out = []
    for combo in combinations_with_replacement(variables, deg):
        exps = {}
        for v in combo:
            exps[v] = exps.get(v, 0) + 1
        out.append(Monomial(exps))
    return out


def quotient_dims(gens, c, n, top):
    """dim_K (K[X_n]/<gens>)_k by linear algebra on homogeneous generators."""
    out = []
    for k in range(top + 1):
        space = _monomials(c, n, k)
        rows = []
        for g in gens:
            dg = max(m.degree for m in g.terms)
            if dg <= k:
                for m in _monomials(c, n, k - dg):
                    rows.append({mm * m: co for mm, co in g.terms.items()})
        out.append(len(space) - _rank(rows))
    return out


@pytest.mark.parametrize(
    "c,seed,r",
    [(2, [MINOR], 2), (1, ["x[1,1]^2 - x[1,2]*x[1,3]"], 3), (2, ["x[1,1]*x[2,1] - x[1,2]^2", "x[2,2]^2 + x[1,1]*x[2,1]"], 2)],
)
def test_initial_ideal_dimension_counts(c, seed, r):
    polys = [parse_polynomial(s, r) for s in seed]
    for n, gb in chain_bases(polys, 0, r, 4).items():
        h = hilbert_quotient(initial_ideal(gb, c, n))
        coeffs = series_prefix(h, 4)
        assert quotient_dims(chain_generators(polys, 0, r, n), c, n, 4) == list(coeffs[:5])


def test_inc_reduce_drops_leading_term():
    rng = random.Random(13)
    for _ in range(100):
        g = random_poly(rng, 2, 2, 3, 2)
        if g.is_zero():
            continue
        g = g.monic()
        f = random_poly(rng, 2, 4, 4, 3)
        if f.is_zero():
            continue
        out = inc_reduce(f, [g], 0, 4)
        fits = [pi for pi in enumerate_inc_maps(0, 2, 4) if g.apply(pi, 4).lm.divides(f.lm)]
        if fits:
            assert out.is_zero() or out.lm.lex_key() < f.lm.lex_key()
        # nothing left in the output is divisible by a fitting image of g
        for pi in enumerate_inc_maps(0, 2, 4):
            h = g.apply(pi, 4)
            assert not any(h.lm.divides(m) for m in out.terms)


def test_initial_chain_of_minors():
    spec, cert, pidx = initial_chain([parse_polynomial(MINOR)], 2, 0, 2, (2, 5))
    assert spec.r == 2 and spec.seed.gens == (P("x[1,1]*x[2,2]"),) and spec.prefix == ()
    assert cert.index == 2 and pidx <= spec.r
    H = equivariant_hilbert(spec)
    assert cross_check(spec, H)


def test_initial_chain_monomial_seed_is_unchanged():
    spec, _, _ = initial_chain([parse_polynomial("x[1,1]*x[2,1]")], 2, 0, 1, (1, 4))
    assert spec.r == 1 and spec.seed.gens == (P("x[1,1]*x[2,1]"),)


def test_initial_chain_cubic_example():
    # values recorded from the run; checked below against the per-width bases
    f = parse_polynomial("x[1,1]^2 - x[1,2]*x[1,3]")
    spec, cert, pidx = initial_chain([f], 1, 0, 3, (3, 6))
    assert spec.r == 4 and pidx == 3 and cert.window == (4, 6)
    assert set(spec.seed.gens) == {
        P(m) for m in ("x[1,2]*x[1,3]", "x[1,2]*x[1,4]", "x[1,2]^2", "x[1,3]*x[1,4]", "x[1,1]^2*x[1,3]", "x[1,1]^2*x[1,4]")
    }
    bases = chain_bases([f], 0, 3, 7)
    for n in range(3, 8):
        assert materialize(spec, n) == initial_ideal(bases[n], 1, n)
    H = equivariant_hilbert(spec)
    assert cross_check(spec, H)


def test_initial_chain_window_exhausted():
    with pytest.raises(WindowExhausted):
        initial_chain([parse_polynomial("x[1,1]^2 - x[1,2]*x[1,3]")], 1, 0, 3, (3, 4))


def test_equivariant_gb_examples():
    basis, w, status = equivariant_gb_truncation([parse_polynomial("x[1,1]")], 1, 0, 1, 3)
    assert basis_to_json(basis) == ["x[1,1]"] and w == 1
    assert status["semantics"] == "window-checked"
    basis, w, _ = equivariant_gb_truncation([parse_polynomial(MINOR)], 2, 0, 2, 6)
    assert basis_to_json(basis) == [MINOR] and w <= 3


def test_equivariant_gb_three_orbits():
    seed = [parse_polynomial(m, 2) for m in ("x[1,1]*x[2,1]", "x[1,1]*x[2,2]", "x[1,2]*x[2,1]", "x[1,2]*x[2,2]")]
    basis, _, _ = equivariant_gb_truncation(seed, 2, 0, 2, 4)
    assert sorted(basis_to_json(basis)) == ["x[1,1]*x[2,1]", "x[1,1]*x[2,2]", "x[1,2]*x[2,1]"]


def test_equivariant_gb_exhausted():
    # x11^2 - x12 x13 needs more than its own width before the window closes
    with pytest.raises(WindowExhausted):
        equivariant_gb_truncation([parse_polynomial("x[1,1]^2 - x[1,2]*x[1,3]")], 1, 0, 3, 3)


def test_poly_spec_json():
    c, i, width, polys = poly_spec_from_json({"c": 2, "width": 2, "gens": [MINOR]})
    assert (c, i, width) == (2, 0, 2) and basis_to_json(polys) == [MINOR]
