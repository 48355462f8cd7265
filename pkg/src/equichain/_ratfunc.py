"""Univariate rational functions over Q, used for partial fractions in s over Q(t)."""

from fractions import Fraction
from math import lcm

# polynomials over Q: ascending tuples of Fraction, no trailing zeros


def qnorm(p):
    p = [Fraction(x) for x in p]
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def qadd(p, q):
    n = max(len(p), len(q))
    return qnorm([(p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0) for k in range(n)])


def qneg(p):
    return tuple(-x for x in p)


def qmul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        if x:
            for b, y in enumerate(q):
                out[a + b] += x * y
    return qnorm(out)


def qdivmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    out = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    for k in range(len(p) - len(q), -1, -1):
        coef = p[k + len(q) - 1] / lead
        out[k] = coef
        if coef:
            for m, y in enumerate(q):
                p[k + m] -= coef * y
    return qnorm(out), qnorm(p[: len(q) - 1])


def qmonic(p):
    return tuple(x / p[-1] for x in p) if p else p


def qgcd(p, q):
    while q:
        p, q = q, qdivmod(p, q)[1]
    return qmonic(p)


def qeval(p, x):
    acc = Fraction(0)
    for coef in reversed(p):
        acc = acc * x + coef
    return acc


def qval_one_minus_t(p):
    """(1-t)-adic valuation of a nonzero polynomial and its cofactor."""
    k = 0
    while p and qeval(p, 1) == 0:
        p = qdivmod(p, (Fraction(1), Fraction(-1)))[0]
        k += 1
    return k, p


def one_minus_t_pow(k):
    out = (Fraction(1),)
    for _ in range(k):
        out = qmul(out, (Fraction(1), Fraction(-1)))
    return out


def clear_denominators(p):
    """Smallest positive integer m with m*p integral."""
    return lcm(*(x.denominator for x in p)) if p else 1


class RatFunc:
    """num/den over Q with gcd(num, den) = 1 and den monic."""

    __slots__ = ("den", "num")

    def __init__(self, num, den=(Fraction(1),), reduced=False):
        num, den = qnorm(num), qnorm(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = (Fraction(1),)
        elif not reduced:
            g = qgcd(num, den)
            if len(g) > 1:
                num, den = qdivmod(num, g)[0], qdivmod(den, g)[0]
            lead = den[-1]
            num, den = tuple(x / lead for x in num), tuple(x / lead for x in den)
        self.num, self.den = num, den

    @classmethod
    def const(cls, x):
        return cls((Fraction(x),))

    @classmethod
    def poly(cls, p):
        return cls(p)

    def is_zero(self):
        return not self.num

    def __add__(self, other):
        if self.den == other.den:
            return RatFunc(qadd(self.num, other.num), self.den)
        return RatFunc(qadd(qmul(self.num, other.den), qmul(other.num, self.den)), qmul(self.den, other.den))

    def __neg__(self):
        return RatFunc(qneg(self.num), self.den, reduced=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return ZERO
        return RatFunc(qmul(self.num, other.num), qmul(self.den, other.den))

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inverse()

    def __eq__(self, other):
        return isinstance(other, RatFunc) and (self.num, self.den) == (other.num, other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def valuation(self):
        """(1-t)-adic valuation; raises on zero."""
        if self.is_zero():
            raise ValueError("valuation of zero")
        return qval_one_minus_t(self.num)[0] - qval_one_minus_t(self.den)[0]

    def __repr__(self):
        return f"RatFunc({[str(x) for x in self.num]} / {[str(x) for x in self.den]})"


ZERO = RatFunc(())
ONE = RatFunc((Fraction(1),))
