"""Exact coefficient rings: rationals, dense polynomials in q or alpha,
unreduced quotients of q-polynomials, and q-combinatorial primitives.

There is no floating point anywhere in this package.  Scalars are
``fractions.Fraction`` (re-exported as ``Rational``); polynomials are
dense coefficient tuples over Fraction.  ``QPoly`` and ``AlphaPoly``
share one implementation but are distinct types, so a q-expression can
never be added to an alpha-expression by accident.

All values are immutable after construction and all operations are pure,
so everything here is safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .errors import NonExactDivision

# Arbitrary-precision rational numbers, always reduced, denominator > 0.
# str() already yields the wire format "p/q" (or "p" when q == 1) and the
# constructor parses it back.
Rational = Fraction

Scalar = Union[int, Fraction]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not a rational scalar: {value!r}")


class Poly:
    """Dense univariate polynomial with Fraction coefficients.

    Coefficients are stored lowest degree first with no trailing zeros;
    the zero polynomial is the empty tuple and its degree is None (never
    an integer sentinel).  Arithmetic accepts plain ints and Fractions
    and coerces them to constants.
    """

    __slots__ = ("coeffs",)
    variable = "x"

    def __init__(self, coeffs: Sequence = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def monomial(cls, exponent: int, coefficient=1):
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        return cls((0,) * exponent + (coefficient,))

    @classmethod
    def gen(cls):
        """The variable itself."""
        return cls((0, 1))

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def coefficient(self, exponent: int) -> Fraction:
        if 0 <= exponent < len(self.coeffs):
            return self.coeffs[exponent]
        return Fraction(0)

    def truncated(self, max_degree: int) -> "Poly":
        return type(self)(self.coeffs[: max_degree + 1])

    def _coerce(self, other):
        """Return other as this polynomial type, or None if impossible.

        Mixing two distinct polynomial types is a programming error and
        raises immediately rather than silently producing nonsense.
        """
        if isinstance(other, Poly):
            if type(other) is type(self):
                return other
            raise TypeError(
                f"cannot mix {type(self).__name__} with {type(other).__name__}"
            )
        if isinstance(other, (int, Fraction)):
            return type(self)((other,))
        return None

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return type(self) is type(other) and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == type(self)((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return type(self)()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return type(self)(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # Scalar division only; polynomial division goes through
        # exact_poly_div so inexactness can never be silent.
        if isinstance(other, (int, Fraction)):
            inv = Fraction(1) / other
            return type(self)(tuple(c * inv for c in self.coeffs))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = type(self).one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, point):
        """Evaluate by Horner's rule; the point may be any ring value."""
        result = 0
        for c in reversed(self.coeffs):
            result = result * point + c
        return result

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]):
        return cls(tuple(Fraction(s) for s in data))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        var = self.variable
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
                continue
            power = var if k == 1 else f"{var}^{k}"
            if c == 1:
                parts.append(power)
            elif c == -1:
                parts.append(f"-{power}")
            else:
                parts.append(f"{c}{power}")
        return "+".join(parts).replace("+-", "-")

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


class QPoly(Poly):
    """Polynomial in the formal variable q."""

    __slots__ = ()
    variable = "q"


class AlphaPoly(Poly):
    """Polynomial in the formal parameter alpha."""

    __slots__ = ()
    variable = "α"


def q_integer(n: int) -> QPoly:
    """[n]_q = 1 + q + ... + q^(n-1); the empty sum [0]_q is 0."""
    if n < 0:
        raise ValueError("q_integer needs n >= 0")
    return QPoly((1,) * n)


@lru_cache(maxsize=None)
def q_factorial(n: int) -> QPoly:
    """[n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1."""
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    if n == 0:
        return QPoly.one()
    return q_factorial(n - 1) * q_integer(n)


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> QPoly:
    """Gaussian binomial via the division-free Pascal recurrence
    qbin(n, k) = qbin(n-1, k-1) + q^k * qbin(n-1, k)."""
    if n < 0:
        raise ValueError("q_binomial needs n >= 0")
    if k < 0 or k > n:
        return QPoly.zero()
    if k == 0 or k == n:
        return QPoly.one()
    return q_binomial(n - 1, k - 1) + QPoly.monomial(k) * q_binomial(n - 1, k)


def exact_poly_div(num: Poly, den: Poly):
    """Quotient num/den when den divides num exactly.

    Long division over the rationals; a nonzero remainder means some
    upstream computation is wrong, so it raises NonExactDivision rather
    than truncating.
    """
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    cls = type(num)
    if type(den) is not cls:
        den = num._coerce(den)
    rem = list(num.coeffs)
    dc = den.coeffs
    dd = len(dc) - 1
    lead = dc[-1]
    if len(rem) - 1 < dd:
        if any(rem):
            raise NonExactDivision(f"{num} is not divisible by {den}")
        return cls.zero()
    quot = [Fraction(0)] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if not c:
            continue
        q = c / lead
        quot[i - dd] = q
        for j, d in enumerate(dc):
            rem[i - dd + j] -= q * d
    if any(rem):
        raise NonExactDivision(f"{num} is not divisible by {den}")
    return cls(quot)


def binomial_coefficient(beta, k: int):
    """Generalized binomial C(beta, k) = beta (beta-1) ... (beta-k+1) / k!

    beta may be a Fraction or a polynomial (an AlphaPoly for the
    alpha-parameterized identities); the result lives in the same ring.
    """
    if k < 0:
        raise ValueError("binomial_coefficient needs k >= 0")
    result = beta - beta + 1 if isinstance(beta, Poly) else Fraction(1)
    for i in range(k):
        result = result * (beta - i)
        result = result / (i + 1)
    return result


class QFraction:
    """An unreduced quotient num/den of q-polynomials.

    QPoly is not a field, and values like q^j / [n]_q! have no polynomial
    representative, so they are carried as explicit pairs with a declared
    denominator.  Equality is decided by cross-multiplication; nothing is
    ever reduced and nothing is ever approximated.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, QFraction):
            if den is not None:
                raise TypeError("cannot re-wrap a QFraction with a denominator")
            self.num, self.den = num.num, num.den
            return
        self.num = num if isinstance(num, QPoly) else QPoly((num,))
        if den is None:
            den = QPoly.one()
        elif not isinstance(den, QPoly):
            den = QPoly((den,))
        if not den:
            raise ZeroDivisionError("QFraction with zero denominator")
        self.den = den

    @staticmethod
    def _wrap(value) -> "QFraction":
        if isinstance(value, QFraction):
            return value
        return QFraction(value)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (QFraction, QPoly, int, Fraction)):
            other = self._wrap(other)
            return self.num * other.den == other.num * self.den
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, (QFraction, QPoly, int, Fraction)):
            return NotImplemented
        other = self._wrap(other)
        if self.den == other.den:
            return QFraction(self.num + other.num, self.den)
        return QFraction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return QFraction(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, (QFraction, QPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        if not isinstance(other, (QFraction, QPoly, int, Fraction)):
            return NotImplemented
        return self._wrap(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (QFraction, QPoly, int, Fraction)):
            return NotImplemented
        other = self._wrap(other)
        return QFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (QFraction, QPoly, int, Fraction)):
            return NotImplemented
        other = self._wrap(other)
        if not other.num:
            raise ZeroDivisionError("division by zero QFraction")
        return QFraction(self.num * other.den, self.den * other.num)

    def evaluate(self, point) -> Fraction:
        den = self.den.evaluate(point)
        if not den:
            raise ZeroDivisionError(f"denominator vanishes at q={point}")
        return self.num.evaluate(point) / den

    def __str__(self) -> str:
        if self.den == QPoly.one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"QFraction({str(self)!r})"
