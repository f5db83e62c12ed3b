"""Truncated power series over generic exact rings, binomial-basis
polynomials with their finite-difference calculus, and the engines that
solve fixed-point equations as sums over trees.

A TruncatedSeries of order N stores exactly N+1 coefficients and never
reads beyond them; binary operations truncate to the smaller order.
Coefficients may be int, Fraction, QPoly, AlphaPoly or QFraction; zero
padding uses plain int 0, which every coefficient ring absorbs.

The fixed-point engines expand a solution of x = a + B(x, x) (or its
m-ary and plane-tree analogues) as a sum of per-tree terms, checking
beforehand on monomial probes that the operator raises valuation by at
least one, which is what makes the expansion converge order by order.
The independent cross-check is Picard iteration, deliberately kept as a
separate code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .arith import QFraction, QPoly, binomial_coefficient, q_integer
from .combinat import (
    BinaryTree,
    MAryTree,
    PlaneTree,
    binary_trees,
    mary_trees,
    plane_trees,
)
from .errors import ValuationViolation


class TruncatedSeries:
    """Power series in t known exactly up to and including t^order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        self.coeffs = coeffs

    @classmethod
    def constant(cls, value, order: int) -> "TruncatedSeries":
        return cls((value,) + (0,) * order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coefficient=1) -> "TruncatedSeries":
        coeffs = [0] * (order + 1)
        if exponent <= order:
            coeffs[exponent] = coefficient
        return cls(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int):
        return self.coeffs[n]

    def valuation(self) -> int | None:
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def truncated(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot truncate upward; use with_order")
        return TruncatedSeries(self.coeffs[: order + 1])

    def with_order(self, order: int) -> "TruncatedSeries":
        """Truncate or zero-pad to the requested order."""
        if order <= self.order:
            return self.truncated(order)
        return TruncatedSeries(self.coeffs + (0,) * (order - self.order))

    def __bool__(self) -> bool:
        return any(bool(c) for c in self.coeffs)

    def __eq__(self, other) -> bool:
        # Equality as truncated objects: orders must agree.  Compare
        # through == so mixed coefficient rings (QFraction vs QPoly,
        # int 0 vs Fraction 0) resolve correctly.
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.order)
        n = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)]
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return TruncatedSeries.constant(other, self.order) + (-self)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other if c else 0 for c in self.coeffs])
        n = min(self.order, other.order)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out)

    def __rmul__(self, other):
        return TruncatedSeries([other * c if c else 0 for c in self.coeffs])

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a truncated series")
        result = TruncatedSeries.constant(1, self.order)
        for _ in range(n):
            result = result * self
        return result

    def times_t(self) -> "TruncatedSeries":
        """Multiply by t; the top coefficient falls off the truncation."""
        return TruncatedSeries((0,) + self.coeffs[:-1])

    def map_coefficients(self, fn: Callable) -> "TruncatedSeries":
        return TruncatedSeries([fn(c) for c in self.coeffs])

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            term = str(c) if n == 0 else f"({c})*t^{n}"
            parts.append(term)
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(t^{self.order + 1})"

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.coeffs)!r})"


def derivative(f: TruncatedSeries) -> TruncatedSeries:
    """d/dt; the result is one order shorter than the input."""
    if f.order == 0:
        return TruncatedSeries((0,))
    return TruncatedSeries(
        [f.coeffs[n] * n for n in range(1, f.order + 1)]
    )


def integrate(f: TruncatedSeries) -> TruncatedSeries:
    """Antiderivative with zero constant term.

    The coefficient of t^n moves to t^(n+1) divided by n+1; the top input
    coefficient has no slot at the same truncation order and is dropped.
    """
    out = [0] * (f.order + 1)
    for n in range(f.order):
        c = f.coeffs[n]
        if c:
            out[n + 1] = c * Fraction(1, n + 1)
    return TruncatedSeries(out)


def q_integrate(f: TruncatedSeries) -> TruncatedSeries:
    """The q-antiderivative: t^n maps to t^(n+1) / [n+1]_q.

    Division by a q-integer has no polynomial result, so coefficients
    come out as QFraction pairs; everything stays division-free.
    """
    out: list = [QFraction(0)] * (f.order + 1)
    for n in range(f.order):
        c = f.coeffs[n]
        if c:
            c = c if isinstance(c, QFraction) else QFraction(c)
            out[n + 1] = c / q_integer(n + 1)
    return TruncatedSeries(out)


def q_derivative(f: TruncatedSeries) -> TruncatedSeries:
    """D_q f = (f(qt) - f(t)) / (qt - t), i.e. t^n maps to [n]_q t^(n-1)."""
    if f.order == 0:
        return TruncatedSeries((0,))
    out = []
    for n in range(1, f.order + 1):
        c = f.coeffs[n]
        out.append(c * q_integer(n) if c else 0)
    return TruncatedSeries(out)


def substitute_qt(f: TruncatedSeries) -> TruncatedSeries:
    """f(qt): multiply the coefficient of t^n by q^n."""
    return TruncatedSeries(
        [c * QPoly.monomial(n) if c else 0 for n, c in enumerate(f.coeffs)]
    )


def exp_series(f: TruncatedSeries, order: int | None = None) -> TruncatedSeries:
    """exp(f) = sum f^k / k! for a series with zero constant term."""
    if f.coeffs[0]:
        raise ValueError("exp_series needs a zero constant term")
    if order is None:
        order = f.order
    f = f.with_order(order)
    result = TruncatedSeries.constant(Fraction(1), order)
    term = TruncatedSeries.constant(Fraction(1), order)
    for k in range(1, order + 1):
        term = term * f * Fraction(1, k)
        result = result + term
    return result


def binomial_series(beta, u: TruncatedSeries, order: int | None = None) -> TruncatedSeries:
    """(1 + u)^beta = sum_k C(beta, k) u^k for u with zero constant term.

    beta may be a Fraction or a linear AlphaPoly; the generalized binomial
    coefficients C(beta, k) then live in the same ring.
    """
    if u.coeffs[0]:
        raise ValueError("binomial_series needs u with zero constant term")
    if order is None:
        order = u.order
    u = u.with_order(order)
    result = TruncatedSeries.constant(1, order)
    power = TruncatedSeries.constant(1, order)
    for k in range(1, order + 1):
        power = power * u
        result = result + power * binomial_coefficient(beta, k)
    return result


# ---------------------------------------------------------------------------
# Binomial-basis polynomials and the finite-difference calculus.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def _binomial_basis_monomials(k: int) -> tuple[Fraction, ...]:
    """Monomial coefficients of C(t, k) = t (t-1) ... (t-k+1) / k!."""
    coeffs = [Fraction(1)]
    for i in range(k):
        shifted = [Fraction(0)] + coeffs
        coeffs = [shifted[j] - (coeffs[j] * i if j < len(coeffs) else 0)
                  for j in range(len(shifted))]
        coeffs = [c / (i + 1) for c in coeffs]
    return tuple(coeffs)


class BinomialPoly:
    """Polynomial in t written in the basis of binomial coefficients C(t, k).

    The natural home of the discrete integral (which shifts the basis
    index up) and the forward difference (which shifts it down).
    Coefficients follow the same generic-ring convention as series.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        data = {}
        for k, c in items:
            if k < 0:
                raise ValueError("binomial basis indices are nonnegative")
            if k in data:
                c = data[k] + c
            if c:
                data[k] = c
            elif k in data:
                del data[k]
        self.coeffs = data

    @classmethod
    def one(cls) -> "BinomialPoly":
        return cls({0: 1})

    def coefficient(self, k: int):
        return self.coeffs.get(k, 0)

    def valuation(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    def max_index(self) -> int | None:
        return max(self.coeffs) if self.coeffs else None

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinomialPoly):
            return NotImplemented
        if self.coeffs.keys() != other.coeffs.keys():
            return False
        return all(other.coeffs[k] == c for k, c in self.coeffs.items())

    def __add__(self, other):
        if not isinstance(other, BinomialPoly):
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return BinomialPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return BinomialPoly({k: -c for k, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, BinomialPoly):
            a = binomial_to_monomial(self)
            b = binomial_to_monomial(other)
            if not a or not b:
                return BinomialPoly()
            prod = [0] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                if not ca:
                    continue
                for j, cb in enumerate(b):
                    if cb:
                        prod[i + j] = prod[i + j] + ca * cb
            return monomial_to_binomial(prod)
        return BinomialPoly({k: c * other for k, c in self.coeffs.items()})

    def __rmul__(self, other):
        return BinomialPoly({k: other * c for k, c in self.coeffs.items()})

    def map_coefficients(self, fn: Callable) -> "BinomialPoly":
        return BinomialPoly({k: fn(c) for k, c in self.coeffs.items()})

    def evaluate(self, point):
        """Evaluate at a number via C(point, k); exact for Fraction points."""
        total = 0
        for k, c in self.coeffs.items():
            total = total + c * binomial_coefficient(Fraction(point), k)
        return total

    def to_json(self) -> dict[str, str]:
        return {str(k): str(c) for k, c in sorted(self.coeffs.items())}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in sorted(self.coeffs.items()):
            basis = "1" if k == 0 else f"C(t,{k})"
            parts.append(f"({c})*{basis}" if not (c == 1 and k) else basis)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"BinomialPoly({self.coeffs!r})"


def monomial_to_binomial(coeffs: Sequence) -> BinomialPoly:
    """Rewrite sum c_n t^n in the binomial basis via t^n =
    sum_k S(n, k) k! C(t, k) (Stirling numbers of the second kind)."""
    out: dict = {}
    for n, c in enumerate(coeffs):
        if not c:
            continue
        kfact = 1
        for k in range(n + 1):
            if k:
                kfact *= k
            s = _stirling2(n, k)
            if s:
                out[k] = out.get(k, 0) + c * (s * kfact)
    return BinomialPoly(out)


def binomial_to_monomial(p: BinomialPoly) -> list:
    """Expand into monomial coefficients, lowest degree first; exact."""
    if not p.coeffs:
        return []
    top = max(p.coeffs)
    out: list = [0] * (top + 1)
    for k, c in p.coeffs.items():
        for n, b in enumerate(_binomial_basis_monomials(k)):
            if b:
                out[n] = out[n] + c * b
    return out


def discrete_sum(p: BinomialPoly) -> BinomialPoly:
    """The discrete integral: summing C(s, k) for s = 0..t-1 gives C(t, k+1)."""
    return BinomialPoly({k + 1: c for k, c in p.coeffs.items()})


def finite_difference(p: BinomialPoly) -> BinomialPoly:
    """The forward difference f(t+1) - f(t): sends C(t, k) to C(t, k-1)."""
    return BinomialPoly({k - 1: c for k, c in p.coeffs.items() if k >= 1})


# ---------------------------------------------------------------------------
# Tree-indexed fixed-point expansions.
# ---------------------------------------------------------------------------


@dataclass
class TreeExpansion:
    """Per-tree terms of a fixed-point solution plus their aggregated sum.

    Terms are listed in (node count, canonical encoding) order; the
    aggregated value always equals the sum of the stored terms.
    """

    terms: list = field(default_factory=list)
    total: object = None

    def term_for(self, tree):
        for t, value in self.terms:
            if t == tree:
                return value
        raise KeyError(f"no term for tree {tree}")

    def to_json(self) -> list[dict]:
        out = []
        for tree, value in self.terms:
            dumped = value.to_json() if hasattr(value, "to_json") else str(value)
            out.append({"tree": tree.text, "term": dumped})
        return out


def _probe_valuations(op, arities: Sequence[int], order: int) -> None:
    """Check on monomial probes that an n-linear operator raises valuation
    by at least one; the expansions do not converge otherwise."""
    probe_order = max(order, 4)
    for arity in arities:
        for exponents in ((0,) * arity, (1,) + (0,) * (arity - 1), (1,) * arity):
            args = [TruncatedSeries.monomial(e, probe_order) for e in exponents]
            result = op(*args)
            val = result.valuation()
            needed = sum(exponents) + 1
            if val is not None and val < needed:
                raise ValuationViolation(
                    f"operator maps valuations {exponents} to {val}; "
                    f"needs at least {needed}"
                )


def fixed_point_binary(
    B: Callable[[TruncatedSeries, TruncatedSeries], TruncatedSeries],
    a: TruncatedSeries,
    order: int,
    *,
    probe: bool = True,
) -> TreeExpansion:
    """Expand the solution of x = a + B(x, x) over binary tree shapes.

    The empty shape carries the term a; a node applies B to the terms of
    its subtrees.  Terms have valuation at least their node count, so
    shapes with up to `order` nodes give the solution exactly to that
    order.  The aggregated sum is re-checked against the equation before
    returning.
    """
    if probe:
        _probe_valuations(B, (2,), order)
    a = a.with_order(order)
    cache: dict = {}

    def evaluate(tree: BinaryTree) -> TruncatedSeries:
        value = cache.get(tree)
        if value is None:
            if tree.is_empty:
                value = a
            else:
                value = B(evaluate(tree.left), evaluate(tree.right))
            cache[tree] = value
        return value

    expansion = TreeExpansion()
    total = TruncatedSeries.constant(0, order)
    for n in range(order + 1):
        for tree in binary_trees(n):
            term = evaluate(tree)
            expansion.terms.append((tree, term))
            total = total + term
    expansion.total = total
    residual = total - (a + B(total, total))
    if residual:
        raise ArithmeticError("binary expansion does not satisfy its equation")
    return expansion


def picard_binary(
    B: Callable[[TruncatedSeries, TruncatedSeries], TruncatedSeries],
    a: TruncatedSeries,
    order: int,
) -> TruncatedSeries:
    """Independent solver for x = a + B(x, x): iterate to stability.

    Each pass fixes one more coefficient, so order+1 passes suffice.
    """
    a = a.with_order(order)
    x = a
    for _ in range(order + 1):
        x = a + B(x, x)
    return x


def fixed_point_mary(
    F: Callable[..., TruncatedSeries],
    arity: int,
    order: int,
    a: TruncatedSeries | None = None,
    *,
    probe: bool = True,
) -> TreeExpansion:
    """Expand the solution of x = a + F(x, ..., x) with an (arity+1)-linear
    operator over (arity+1)-ary tree shapes."""
    if a is None:
        a = TruncatedSeries.constant(Fraction(1), order)
    if probe:
        _probe_valuations(F, (arity + 1,), order)
    a = a.with_order(order)
    cache: dict = {}

    def evaluate(tree: MAryTree) -> TruncatedSeries:
        value = cache.get(tree)
        if value is None:
            if tree.is_empty:
                value = a
            else:
                value = F(*[evaluate(child) for child in tree.children])
            cache[tree] = value
        return value

    expansion = TreeExpansion()
    total = TruncatedSeries.constant(0, order)
    for n in range(order + 1):
        for tree in mary_trees(arity, n):
            term = evaluate(tree)
            expansion.terms.append((tree, term))
            total = total + term
    expansion.total = total
    residual = total - (a + F(*([total] * (arity + 1))))
    if residual:
        raise ArithmeticError("m-ary expansion does not satisfy its equation")
    return expansion


def picard_mary(
    F: Callable[..., TruncatedSeries],
    arity: int,
    order: int,
    a: TruncatedSeries | None = None,
) -> TruncatedSeries:
    if a is None:
        a = TruncatedSeries.constant(Fraction(1), order)
    a = a.with_order(order)
    x = a
    for _ in range(order + 1):
        x = a + F(*([x] * (arity + 1)))
    return x


def evaluate_plane_tree(tree: PlaneTree, family: Callable[[int], Callable], a):
    """Evaluate one plane-tree term: leaves carry a, an internal node with
    k children applies the k-linear operation family(k)."""
    if tree.is_leaf:
        return a
    children = [evaluate_plane_tree(child, family, a) for child in tree.children]
    return family(len(children))(*children)


def fixed_point_plane(
    family: Callable[[int], Callable],
    order: int,
    a,
    *,
    probe: bool = True,
) -> TreeExpansion:
    """Expand the solution of x = a + sum_{n>=2} F_n(x, ..., x) over plane
    trees with internal arity >= 2.

    Trees are enumerated by leaf count: a tree with n+1 leaves is the
    shape of words of length n, which is the natural truncation index for
    these equations.  The values may be series or binomial-basis
    polynomials; residual checking is left to the caller because the
    notion of truncation depends on the coefficient ring.
    """
    if probe and hasattr(a, "valuation") and a.valuation() == 0:
        for n in (2, 3):
            value = family(n)(*([a] * n))
            val = value.valuation()
            if val is not None and val < 1:
                raise ValuationViolation(
                    f"plane family F_{n} does not raise valuation"
                )
    expansion = TreeExpansion()
    total = None
    for n in range(order + 1):
        for tree in plane_trees(n):
            term = evaluate_plane_tree(tree, family, a)
            expansion.terms.append((tree, term))
            total = term if total is None else total + term
    expansion.total = total
    return expansion
