"""Exact and rigorously bounded arithmetic on logarithms.

``LogExpr`` represents a real number of the form  sum_p c_p * log2(p)  over
primes p with rational coefficients.  Logarithms of distinct primes are
linearly independent over the rationals, so such an expression is zero exactly
when every coefficient is zero, and its sign can always be settled by
evaluating it with enough precision.  This makes comparisons between products
of rational powers of rationals exact.

Quantities that leave this form (sums of such powers, squares of logarithms)
are bracketed with outward-rounded interval arithmetic from ``mpmath.iv``;
precision is raised until the comparison is decided.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Union

from mpmath import iv
from sympy import factorint

Rational = Union[int, Fraction]


class Undecided(ArithmeticError):
    """An interval comparison could not be settled within the precision cap."""


@contextmanager
def iv_precision(bits: int):
    old = iv.prec
    iv.prec = bits
    try:
        yield iv
    finally:
        iv.prec = old


def iv_rational(q: Rational):
    q = Fraction(q)
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def iv_log2(q: Rational):
    return iv.log(iv_rational(q)) / iv.log(iv.mpf(2))


@lru_cache(maxsize=4096)
def _factor(k: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(k).items()))


@lru_cache(maxsize=512)
def _log2_prime_float(p: int) -> float:
    return math.log2(p)


def decide_sign(evaluate: Callable, start_bits: int = 128, max_bits: int = 1 << 18) -> int:
    """Sign (+1 or -1) of a nonzero quantity given an interval evaluator.

    ``evaluate()`` is called under increasing ``iv.prec`` and must return an
    mpmath interval.  Raises Undecided if the interval still straddles 0 at
    ``max_bits``.
    """
    bits = start_bits
    while bits <= max_bits:
        with iv_precision(bits):
            x = evaluate()
            if x.a > 0:
                return 1
            if x.b < 0:
                return -1
        bits *= 2
    raise Undecided("interval comparison undecided at the precision cap")


class LogExpr:
    """Exact real  sum_p c_p log2(p)  with rational c_p."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Fraction] | None = None):
        self.terms = {p: Fraction(c) for p, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, q: Rational) -> "LogExpr":
        return cls({2: Fraction(q)}) if q else cls()

    @classmethod
    def log2(cls, q: Rational) -> "LogExpr":
        q = Fraction(q)
        if q <= 0:
            raise ValueError("logarithm of a nonpositive number")
        terms: dict[int, Fraction] = {}
        for p, e in _factor(q.numerator) if q.numerator > 1 else ():
            terms[p] = terms.get(p, 0) + e
        for p, e in _factor(q.denominator) if q.denominator > 1 else ():
            terms[p] = terms.get(p, 0) - e
        return cls(terms)

    def __add__(self, other: "LogExpr | Rational") -> "LogExpr":
        if not isinstance(other, LogExpr):
            other = LogExpr.const(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return LogExpr(out)

    __radd__ = __add__

    def __neg__(self) -> "LogExpr":
        return LogExpr({p: -c for p, c in self.terms.items()})

    def __sub__(self, other) -> "LogExpr":
        if not isinstance(other, LogExpr):
            other = LogExpr.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "LogExpr":
        return LogExpr.const(other) - self

    def __mul__(self, k: Rational) -> "LogExpr":
        if isinstance(k, LogExpr):
            if not k.is_rational():
                raise TypeError("product of two irrational logarithm expressions is not linear")
            k = k.rational_value()
        k = Fraction(k)
        return LogExpr({p: c * k for p, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, k: Rational) -> "LogExpr":
        return self * (1 / Fraction(k))

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(p == 2 for p in self.terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("expression is irrational")
        return self.terms.get(2, Fraction(0))

    def __float__(self) -> float:
        return float(sum(float(c) * _log2_prime_float(p) for p, c in self.terms.items()))

    def interval(self):
        total = iv.mpf(0)
        for p, c in self.terms.items():
            coeff = iv_rational(c)
            total += coeff if p == 2 else coeff * iv_log2(p)
        return total

    def sign(self) -> int:
        if not self.terms:
            return 0
        if self.is_rational():
            v = self.rational_value()
            return (v > 0) - (v < 0)
        # rational bracket: bitlen(p) - 1 <= log2(p) <= bitlen(p)
        lo = hi = Fraction(0)
        for p, c in self.terms.items():
            if p == 2:
                lo += c
                hi += c
                continue
            a, b = p.bit_length() - 1, p.bit_length()
            lo += c * (a if c > 0 else b)
            hi += c * (b if c > 0 else a)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        try:
            approx = 0.0
            slack = 0.0
            for p, c in self.terms.items():
                term = float(c) * _log2_prime_float(p)
                approx += term
                slack += abs(term)
            if math.isfinite(approx) and abs(approx) > slack * 1e-12 + 1e-300:
                return 1 if approx > 0 else -1
        except OverflowError:
            pass
        return decide_sign(self.interval)

    # comparisons are exact
    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, (LogExpr, int, Fraction)):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def floor(self) -> int:
        """Exact floor of the represented real."""
        if self.is_rational():
            return math.floor(self.rational_value())
        guess = math.floor(float(self))
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    def to_json(self) -> dict:
        return {"log2_terms": {str(p): str(c) for p, c in sorted(self.terms.items())},
                "approx": float(self)}

    def __repr__(self) -> str:
        if not self.terms:
            return "LogExpr(0)"
        parts = []
        for p, c in sorted(self.terms.items()):
            parts.append(str(c) if p == 2 else f"{c}*log2({p})")
        return "LogExpr(" + " + ".join(parts) + ")"


def lmax(*xs: LogExpr) -> LogExpr:
    best = xs[0]
    for x in xs[1:]:
        if x > best:
            best = x
    return best


def floor_log2(q: Rational) -> int:
    """Exact floor(log2(q)) for a positive rational."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("logarithm of a nonpositive number")
    k = q.numerator.bit_length() - q.denominator.bit_length()
    # adjust so that 2^k <= q < 2^(k+1)
    while Fraction(2) ** k > q:
        k -= 1
    while Fraction(2) ** (k + 1) <= q:
        k += 1
    return k


def is_power_of_two(q: Rational) -> bool:
    q = Fraction(q)
    if q <= 0:
        return False
    a, b = q.numerator, q.denominator
    return (a & (a - 1)) == 0 and (b & (b - 1)) == 0


def exact_log2(q: Rational) -> int:
    """log2(q) for q a (possibly negative) power of two."""
    q = Fraction(q)
    if not is_power_of_two(q):
        raise ValueError(f"{q} is not a power of two")
    return q.numerator.bit_length() - q.denominator.bit_length()


def compare_log_squared(x: Rational, t: Rational) -> int:
    """Sign of  x - log2(t)^2  for rationals x and t >= 1, exactly."""
    x = Fraction(x)
    t = Fraction(t)
    if t < 1:
        raise ValueError("expected t >= 1")
    if is_power_of_two(t):
        L = exact_log2(t)
        d = x - L * L
        return (d > 0) - (d < 0)
    if x <= 0:
        return -1  # log2(t) > 0 for t > 1, and t == 1 is a power of two
    # x >= log^2 t  <=>  2^(x) >= t^(log t) ... compare sqrt(x) with log2 t instead
    def ev():
        return iv.sqrt(iv_rational(x)) - iv_log2(t)
    return decide_sign(ev)


class Real:
    """A real number that is either an exact rational or an interval thunk.

    Arithmetic stays exact while both operands are rational; otherwise the
    result evaluates as an outward-rounded interval at the current precision,
    and ``sign`` raises precision until the answer is certain.
    """

    __slots__ = ("exact", "_thunk")

    def __init__(self, exact: Rational | None = None, thunk: Callable | None = None):
        self.exact = None if exact is None else Fraction(exact)
        self._thunk = thunk

    @classmethod
    def of(cls, x) -> "Real":
        if isinstance(x, Real):
            return x
        if isinstance(x, LogExpr):
            return cls(x.rational_value()) if x.is_rational() else cls(thunk=x.interval)
        return cls(Fraction(x))

    @classmethod
    def log2(cls, q: Rational) -> "Real":
        return cls.of(LogExpr.log2(q))

    @classmethod
    def pow2(cls, x) -> "Real":
        """2 ** x for a real exponent."""
        x = cls.of(x)
        if x.exact is not None and x.exact.denominator == 1:
            return cls(Fraction(2) ** x.exact.numerator)
        return cls(thunk=lambda: iv.mpf(2) ** x.interval())

    def interval(self):
        if self.exact is not None:
            return iv_rational(self.exact)
        return self._thunk()

    def _combine(self, other, op) -> "Real":
        other = Real.of(other)
        if self.exact is not None and other.exact is not None:
            return Real(op(self.exact, other.exact))
        return Real(thunk=lambda: op(self.interval(), other.interval()))

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return Real.of(other) - self

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._combine(other, lambda a, b: a / b)

    def __neg__(self):
        return Real(0) - self

    def __pow__(self, k: int) -> "Real":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        if self.exact is not None:
            return Real(self.exact ** k)
        return Real(thunk=lambda: self.interval() ** k)

    def rpow(self, exponent) -> "Real":
        """self ** exponent for positive self and a real exponent."""
        exponent = Real.of(exponent)
        if exponent.exact is not None and exponent.exact.denominator == 1 and exponent.exact >= 0:
            return self ** int(exponent.exact)
        return Real(thunk=lambda: iv.exp(exponent.interval() * iv.log(self.interval())))

    def sign(self) -> int:
        if self.exact is not None:
            return (self.exact > 0) - (self.exact < 0)
        return decide_sign(self.interval)

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def approx(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        with iv_precision(128):
            x = self.interval()
            return (float(x.a) + float(x.b)) / 2

    def to_json(self):
        if self.exact is not None:
            return str(self.exact)
        return {"approx": self.approx()}

    def __repr__(self) -> str:
        return f"Real({self.exact})" if self.exact is not None else f"Real(~{self.approx():.6g})"
