"""Equivariant Hilbert series of Inc^i-invariant chains of monomial ideals.

The recursion runs on normalized chains (zero below the seed width r) and
terminates because the pair (p, q) = (r - i, q_invariant(I_r)) drops
lexicographically on every edge:

* if Inc^{i+1} already regenerates the chain from r, move to i+1 (p drops);
* otherwise split every width n > r along the powers of the column-(i+1)
  variables.  Each piece is again a chain, now under Inc^{i+1} from width
  r+1.  Pieces equal to the shifted chain <sigma_i(I_{n-1}), x_{.,i+1}> are
  the original series moved one width up; all others have smaller q.

Collecting the shifted copies of H on one side leaves a linear equation
H * (1 - s*W) = known, which is solved by appending a denominator factor.
"""

import threading
from concurrent.futures import ThreadPoolExecutor
from itertools import product

from . import _upoly as up
from .birational import (
    BiRational,
    divide_by_one_minus,
    free_prefix,
    geometric_zero_chain,
)
from .chains import materialize, one_step_closure
from .errors import CrossCheckMismatch, InvariantViolation
from .grid import Monomial, apply_inc_map, shift
from .hilbert import UniRational, hilbert_quotient
from .ideals import (
    MonomialIdeal,
    add_gens,
    colon,
    column_variables,
    max_column_exponent,
    q_invariant,
)

_memo = {}
_memo_lock = threading.Lock()


def clear_memo():
    with _memo_lock:
        _memo.clear()


def weight(e, d):
    """Per-width weight of the colon piece e, as a (t-polynomial, (1-t)-power) pair.

    Each coordinate contributes t^{e_l} when e_l < d and t^d/(1-t) when e_l = d.
    """
    num = up.monomial(sum(e))
    pole = sum(1 for x in e if x == d)
    return num, pole


def weight_rational(e, d):
    num, pole = weight(e, d)
    return BiRational.from_t(num, pole)


def colon_piece(J, col, e):
    """<J : prod_k x[k,col]^{e_k}, x[1,col], ..., x[c,col]>."""
    m = Monomial([((k + 1, col), x) for k, x in enumerate(e)])
    return add_gens(colon(J, m), column_variables(J.c, col))


def shifted_piece(I_r, i):
    """<sigma_i(I_r), x[.,i+1]> in the ring of width r+1."""
    pi = shift(i, I_r.width)
    gens = [apply_inc_map(pi, g) for g in I_r.gens]
    return MonomialIdeal(I_r.c, I_r.width + 1, gens + column_variables(I_r.c, i + 1))


def per_width_decomposition_check(J, i, d):
    """Check H(K[X_n]/J) = sum_e w_e * H(K[X_n]/<J : x^e, x[.,i+1]>) with the oracle."""
    col = i + 1
    if J.width < col:
        raise ValueError(f"column {col} lies outside width {J.width}")
    if max_column_exponent(J, col) > d:
        raise ValueError(f"some generator is divisible by x[k,{col}]^{d + 1}")
    total = UniRational(up.ZERO, 0)
    for e in product(range(d + 1), repeat=J.c):
        num, pole = weight(e, d)
        total = total + UniRational(num, pole) * hilbert_quotient(colon_piece(J, col, e))
    return total == hilbert_quotient(J)


def equivariant_hilbert(chain, threads=1, check_q=True):
    """Exact H(s,t) = sum_n H_{K[X_n]/I_n}(t) s^n of a chain of monomial ideals."""
    c = chain.c
    if chain.seed.is_zero():
        if any(not J.is_zero() for J in chain.prefix):
            raise InvariantViolation("a zero seed forces a zero prefix")
        return geometric_zero_chain(c)
    H = _normalized(c, chain.i, chain.r, chain.seed, threads, check_q)
    if chain.prefix:
        for n, J in enumerate(chain.prefix, start=1):
            if not J.is_zero():
                diff = hilbert_quotient(J) - UniRational(up.ONE, c * n)
                H = H + BiRational.from_uni(diff, n)
    return H


def _normalized(c, i, r, seed, threads=1, check_q=True):
    key = (c, i, r, seed.gens)
    with _memo_lock:
        hit = _memo.get(key)
    if hit is not None:
        return hit
    H = _compute(c, i, r, seed, threads, check_q)
    with _memo_lock:
        H = _memo.setdefault(key, H)
    return H


def _measure(i, r, seed):
    return (r - i, q_invariant(seed))


def _compute(c, i, r, seed, threads, check_q):
    if seed.is_unit():
        return free_prefix(c, r - 1)
    if r <= i:
        tail = BiRational.from_uni(hilbert_quotient(seed), r) * geometric_zero_chain(c)
        return free_prefix(c, r - 1) + tail

    I_next = one_step_closure(seed, i)
    if one_step_closure(seed, i + 1) == I_next:
        if check_q:
            _assert_decrease(_measure(i, r, seed), _measure(i + 1, r, seed))
        return _normalized(c, i + 1, r, seed, 1, check_q)

    col = i + 1
    d = max_column_exponent(seed, col)
    E = shifted_piece(seed, i)
    q = q_invariant(seed) if check_q else None

    groups = {}  # strict colon seed -> summed weight
    eq_num = up.ZERO  # sum over equal pieces of t^{|e|} (1-t)^{c - delta(e)}
    for e in product(range(d + 1), repeat=c):
        J = colon_piece(I_next, col, e)
        num, pole = weight(e, d)
        if J == E:
            if check_q and q_invariant(J) != q:
                raise InvariantViolation(f"equal piece {J} has q != {q}")
            eq_num = up.add(eq_num, up.mul_one_minus_t_pow(num, c - pole))
            continue
        if check_q:
            qj = q_invariant(J)
            if qj >= q:
                raise InvariantViolation(f"strict piece {J} has q = {qj} >= {q}")
            _assert_decrease((r - i, q), (r - i, qj))
        w = BiRational.from_t(num, pole)
        groups[J] = groups[J] + w if J in groups else w

    F_prev = free_prefix(c, r - 1)
    F_r = free_prefix(c, r)
    known = F_prev + BiRational.from_uni(hilbert_quotient(seed), r)
    if eq_num:
        W_eq = BiRational.from_t(eq_num, c)
        known = known - (W_eq * F_prev).times_s(1)

    seeds = list(groups)
    if threads > 1 and len(seeds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            children = list(pool.map(lambda J: _normalized(c, i + 1, r + 1, J, 1, check_q), seeds))
    else:
        children = [_normalized(c, i + 1, r + 1, J, 1, check_q) for J in seeds]
    for J, HJ in zip(seeds, children):
        known = known + groups[J] * (HJ - F_r)

    if not eq_num:
        return known
    return divide_by_one_minus(known, eq_num, c)


def _assert_decrease(before, after):
    if not after < before:
        raise InvariantViolation(f"termination measure did not drop: {before} -> {after}")


# -- post-run checks ----------------------------------------------------------


def cross_check(chain, H, up_to=None):
    """Compare series coefficients with the per-width oracle for n <= up_to (default r+5)."""
    up_to = chain.r + 5 if up_to is None else up_to
    series = H.series(up_to)
    for n in range(1, up_to + 1):
        want = hilbert_quotient(materialize(chain, n))
        if series[n] != want:
            raise CrossCheckMismatch(
                f"coefficient of s^{n} disagrees with the per-width oracle",
                symbolic=str(series[n]),
                per_width=str(want),
            )
    if series[0] != UniRational(up.ONE, 0):
        raise CrossCheckMismatch("constant coefficient must be 1", str(series[0]), "1")
    return True


def shape_bounds(chain, H):
    """Evaluate the denominator-shape bounds for an engine output.

    Returns a dict of named checks, each ``(value, bound, ok)``. The bounds use
    the seed's q-invariant and the largest column-(i+1) exponent d of its
    generators; the factor-count bound is the geometric sum of (d+1)^{ck},
    k < q, which is the closed form without the 0/0 at d = 0.
    """
    c, r = chain.c, chain.r
    out = {}
    out["c_j <= c"] = (H.max_cj or 0, c, all(cj <= c for (cj, _), _ in H.factors))
    out["f_j(1) > 0"] = (
        min((up.evaluate(f, 1) for (_, f), _ in H.factors), default=1),
        0,
        all(up.evaluate(f, 1) > 0 for (_, f), _ in H.factors),
    )
    if chain.seed.is_zero() or chain.seed.is_unit():
        return out
    q = q_invariant(chain.seed)
    d = max_column_exponent(chain.seed, chain.i + 1) if chain.i < r else 0
    a_bound = (r - 1 + 2 * q) * c
    b_bound = sum((d + 1) ** (c * k) for k in range(q))
    deg = H.numerator_degree_at_one()
    deg = -1 if deg is None else deg
    out["a <= (r-1+2q)c"] = (H.a, a_bound, H.a <= a_bound)
    out["b <= sum (d+1)^{ck}"] = (H.factor_count, b_bound, H.factor_count <= b_bound)
    out["deg g(s,1) <= r+q"] = (deg, r + q, deg <= r + q)
    return out
