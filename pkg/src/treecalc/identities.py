"""End-to-end verification of the hook-length-type identities.

Every check computes its two sides by disjoint code paths (closed form
with exact polynomial division versus enumeration of fibers, or explicit
coefficients versus tree expansion versus Picard iteration) and reports
both in serialized exact form, so a mismatch is immediately diagnosable.
All comparisons are exact; nothing is tolerance-based.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .arith import (
    AlphaPoly,
    QPoly,
    binomial_coefficient,
    exact_poly_div,
    q_factorial,
    q_integer,
)
from .combinat import (
    BinaryTree,
    Permutation,
    PlaneTree,
    binary_trees,
    decreasing_tree,
    hook_data,
    mary_trees,
    packed_words,
    permutations,
    plane_tree_of_word,
)
from .errors import NonIntegerResult, SizeGuardError, VariantArityMismatch
from .series import (
    BinomialPoly,
    TreeExpansion,
    TruncatedSeries,
    binomial_series,
    discrete_sum,
    evaluate_plane_tree,
    exp_series,
    finite_difference,
    fixed_point_binary,
    fixed_point_mary,
    fixed_point_plane,
    integrate,
    picard_binary,
    picard_mary,
)
from .wqsym import graded_word_sum, psi

POSTNIKOV_GUARD = 12
EISENSTEIN_GUARD = 10
LAGRANGE_ORDER_GUARD = 8
LAGRANGE_ARITY_GUARD = 3
DULIU_GUARDS = {1: 7, 2: 5, 3: 5}

# Tree expansions with alpha-polynomial coefficients get expensive fast for
# higher arities; Picard carries the full order, trees cross-check to here.
MARY_EXPANSION_ORDER = {1: 8, 2: 6, 3: 5}


@dataclass
class IdentityReport:
    """Outcome of one identity check, with both sides kept verbatim."""

    name: str
    parameters: dict
    lhs: str
    rhs: str
    equal: bool
    per_tree: list | None = None
    elapsed_ms: float = 0.0

    def to_json(self, *, include_per_tree: bool = False) -> dict:
        data = {
            "identity": self.name,
            "parameters": self.parameters,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "equal": self.equal,
            "elapsed_ms": self.elapsed_ms,
        }
        if include_per_tree and self.per_tree is not None:
            data["per_tree"] = self.per_tree
        return data


# ---------------------------------------------------------------------------
# Hook length formulas for binary trees.
# ---------------------------------------------------------------------------


def hook_count(tree: BinaryTree) -> Fraction:
    """n! over the product of the hook lengths: the number of permutations
    whose decreasing tree has this shape."""
    hooks = hook_data(tree).hooks
    n = tree.node_count
    value = Fraction(factorial(n))
    for h in hooks:
        value /= h
    if value.denominator != 1:
        raise NonIntegerResult(f"hook count of {tree} came out as {value}")
    return value


def _qhook(tree: BinaryTree) -> QPoly:
    data = hook_data(tree)
    n = tree.node_count
    numerator = q_factorial(n) * QPoly.monomial(sum(data.right_sizes))
    denominator = QPoly.one()
    for h in data.hooks:
        denominator = denominator * q_integer(h)
    return exact_poly_div(numerator, denominator)


def qhook_imaj(tree: BinaryTree) -> QPoly:
    """[n]_q! prod_v q^(delta_v) / [h_v]_q, the generating polynomial of the
    inverse major index over the fiber of the decreasing-tree map."""
    return _qhook(tree)


def qhook_inv(tree: BinaryTree) -> QPoly:
    """The same closed form also generates the inversion statistic over the
    fiber; the content is that the two statistics are equidistributed there,
    which the oracle tests check word by word."""
    return _qhook(tree)


def hook_fiber(tree: BinaryTree, *, unsafe_large: bool = False) -> list[Permutation]:
    """Brute-force fiber of the decreasing-tree map over a shape."""
    return [
        p
        for p in permutations(tree.node_count, unsafe_large=unsafe_large)
        if decreasing_tree(p) == tree
    ]


def decreasing_tree_fibers(
    n: int, *, unsafe_large: bool = False
) -> dict[BinaryTree, list[Permutation]]:
    """All of S_n grouped by the shape of the decreasing tree."""
    fibers: dict[BinaryTree, list[Permutation]] = {}
    for p in permutations(n, unsafe_large=unsafe_large):
        fibers.setdefault(decreasing_tree(p), []).append(p)
    return fibers


# ---------------------------------------------------------------------------
# The binomial-coefficient expansion of plane-tree terms.
# ---------------------------------------------------------------------------


def _discrete_product_family(k: int):
    def operation(*args: BinomialPoly) -> BinomialPoly:
        result = args[0]
        for arg in args[1:]:
            result = result * arg
        return discrete_sum(result)

    return operation


def ft_coefficients(tree: PlaneTree) -> dict[int, int]:
    """Expand the plane-tree term in the binomial basis.

    The coefficient of C(t, k) counts the packed words with maximal letter
    k whose plane tree is the given shape, so everything must come out a
    nonnegative integer.
    """
    if tree.is_leaf:
        raise ValueError("ft_coefficients needs a nonempty plane tree")
    value = evaluate_plane_tree(tree, _discrete_product_family, BinomialPoly.one())
    out: dict[int, int] = {}
    for k, c in sorted(value.coeffs.items()):
        c = Fraction(c)
        if c.denominator != 1 or c < 0:
            raise NonIntegerResult(f"coefficient of C(t,{k}) is {c}")
        out[k] = int(c)
    return out


def ft_brute_force(tree: PlaneTree, *, unsafe_large: bool = False) -> dict[int, int]:
    """Oracle for ft_coefficients: group the packed words of the right
    length by maximal letter, keeping those with the given tree."""
    n = tree.leaf_count - 1
    out: dict[int, int] = {}
    for word in packed_words(n, unsafe_large=unsafe_large):
        if plane_tree_of_word(word.letters) == tree:
            k = word.max_letter
            out[k] = out.get(k, 0) + 1
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# Postnikov's identity and Eisenstein's exponential.
# ---------------------------------------------------------------------------


def postnikov_operator(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    """B(x, y) = t*x*y/2 + (1/2) * integral of x*y."""
    xy = x * y
    return xy.times_t() * Fraction(1, 2) + integrate(xy) * Fraction(1, 2)


def _postnikov_sum(n: int) -> Fraction:
    """Sum over binary shapes with n nodes of prod_v (1 + 1/h_v), memoized
    over shared subtrees."""
    cache: dict[BinaryTree, Fraction] = {}

    def weight(tree: BinaryTree) -> Fraction:
        if tree.is_empty:
            return Fraction(1)
        value = cache.get(tree)
        if value is None:
            h = tree.node_count
            value = weight(tree.left) * weight(tree.right) * Fraction(h + 1, h)
            cache[tree] = value
        return value

    total = Fraction(0)
    for tree in binary_trees(n):
        total += weight(tree)
    return total


def eisenstein_coefficients(order: int) -> TruncatedSeries:
    """The generalized exponential: coefficient of t^n is (n+1)^(n-1)/n!."""
    coeffs = [Fraction(1)]
    for n in range(1, order + 1):
        coeffs.append(Fraction((n + 1) ** (n - 1), factorial(n)))
    return TruncatedSeries(coeffs)


def postnikov_check(n: int, *, series_order: int | None = None) -> IdentityReport:
    """(n+1)^(n-1) = n!/2^n * sum over binary shapes of prod (1 + 1/h_v).

    The left side is an integer power; the right side is summed exactly
    over all shapes with n nodes.  The same operator is also run through
    the series engine (to a capped order) and every per-tree term is
    matched against the closed form prod(1+1/h_v) t^n / 2^n.
    """
    if not 1 <= n <= POSTNIKOV_GUARD:
        raise SizeGuardError(f"postnikov_check needs 1 <= n <= {POSTNIKOV_GUARD}")
    start = time.perf_counter()
    lhs = Fraction((n + 1) ** (n - 1))
    rhs = Fraction(factorial(n), 2**n) * _postnikov_sum(n)
    equal = lhs == rhs

    order = min(n, 8) if series_order is None else series_order
    one = TruncatedSeries.constant(Fraction(1), order)
    expansion = fixed_point_binary(postnikov_operator, one, order)
    per_tree = []
    for tree, term in expansion.terms:
        k = tree.node_count
        if k == 0:
            expected = one
            closed = Fraction(1)
        else:
            closed = Fraction(1, 2**k)
            for h in hook_data(tree).hooks:
                closed *= Fraction(h + 1, h)
            expected = TruncatedSeries.monomial(k, order, closed)
        equal = equal and term == expected
        per_tree.append({"tree": tree.text, "coefficient": str(closed)})
    equal = equal and expansion.total == eisenstein_coefficients(order)
    equal = equal and expansion.total == picard_binary(postnikov_operator, one, order)

    elapsed = (time.perf_counter() - start) * 1000
    return IdentityReport(
        name="postnikov",
        parameters={"n": n, "series_order": order},
        lhs=str(lhs),
        rhs=str(rhs),
        equal=equal,
        per_tree=per_tree,
        elapsed_ms=elapsed,
    )


def eisenstein_check(order: int) -> IdentityReport:
    """Three-way agreement for g(t) = sum (n+1)^(n-1) t^n / n!:

    the explicit coefficients, the residual of g = exp(t g), and the
    binary-tree expansion of x = 1 + t x^2/2 + (1/2) int x^2 must all
    coincide to the requested order.
    """
    if order > EISENSTEIN_GUARD:
        raise SizeGuardError(f"eisenstein_check needs order <= {EISENSTEIN_GUARD}")
    start = time.perf_counter()
    explicit = eisenstein_coefficients(order)
    residual = explicit - exp_series(explicit.times_t())
    one = TruncatedSeries.constant(Fraction(1), order)
    expansion = fixed_point_binary(postnikov_operator, one, order)
    picard = picard_binary(postnikov_operator, one, order)
    equal = (not residual) and expansion.total == explicit and picard == explicit
    elapsed = (time.perf_counter() - start) * 1000
    return IdentityReport(
        name="eisenstein",
        parameters={"order": order},
        lhs=str(explicit),
        rhs=str(expansion.total),
        equal=equal,
        elapsed_ms=elapsed,
    )


# ---------------------------------------------------------------------------
# Du-Liu identities and the Lagrange fixed point.
# ---------------------------------------------------------------------------

ALPHA = AlphaPoly.gen()


def duliu_node_factor(variant: str, m: int, h: int) -> AlphaPoly:
    if variant == "las1":
        return AlphaPoly((Fraction(1, h), 1))
    if variant == "las2":
        return AlphaPoly((Fraction(1 - h, 2 * h), Fraction(h + 1, 2 * h)))
    if variant == "las3":
        return AlphaPoly(
            (Fraction(1 - h, (m + 1) * h), Fraction(m * h + 1, (m + 1) * h))
        )
    raise ValueError(f"unknown Du-Liu variant {variant!r}")


def _duliu_tree_sum(variant: str, m: int, n: int) -> AlphaPoly:
    if n == 0:
        return AlphaPoly.one()
    trees = binary_trees(n) if m == 1 else mary_trees(m, n)
    total = AlphaPoly.zero()
    for tree in trees:
        term = AlphaPoly.one()
        for h in hook_data(tree).hooks:
            term = term * duliu_node_factor(variant, m, h)
        total = total + term
    return total


def duliu_rhs(variant: str, m: int, n: int) -> AlphaPoly:
    if variant == "las1":
        value = AlphaPoly.one()
        for i in range(n):
            value = value * AlphaPoly((n + 1 - i, n + 1 + i))
        return value / factorial(n + 1)
    if variant == "las2":
        return binomial_coefficient(AlphaPoly((0, n + 1)), n) / (n + 1)
    if variant == "las3":
        return binomial_coefficient(AlphaPoly((0, m * n + 1)), n) / (m * n + 1)
    raise ValueError(f"unknown Du-Liu variant {variant!r}")


def duliu_check(variant: str, n: int, m: int = 1) -> IdentityReport:
    """The hook-parameter identities: sum over trees of the per-node
    factors equals the stated product/binomial closed form, as an exact
    polynomial identity in alpha.

    las1 and las2 are statements about binary trees (m = 1); las3 runs
    over (m+1)-ary trees and degenerates to las2 at m = 1.
    """
    if variant in ("las1", "las2") and m != 1:
        raise VariantArityMismatch(f"{variant} requires m=1, got m={m}")
    if m not in DULIU_GUARDS:
        raise SizeGuardError(f"duliu_check supports m in {sorted(DULIU_GUARDS)}")
    if n > DULIU_GUARDS[m]:
        raise SizeGuardError(f"duliu_check(m={m}) needs n <= {DULIU_GUARDS[m]}")
    start = time.perf_counter()
    lhs = _duliu_tree_sum(variant, m, n)
    rhs = duliu_rhs(variant, m, n)
    elapsed = (time.perf_counter() - start) * 1000
    return IdentityReport(
        name=f"duliu-{variant}",
        parameters={"variant": variant, "n": n, "m": m},
        lhs=str(lhs),
        rhs=str(rhs),
        equal=lhs == rhs,
        elapsed_ms=elapsed,
    )


def duliu_cross_check(n: int) -> bool:
    """las2 is las1 after the substitution alpha -> (alpha-1)/(alpha+1)
    with denominators cleared: each factor (beta + 1/h) times (alpha+1)/2
    becomes ((h+1)alpha + 1 - h)/(2h).  Verified here at the level of the
    aggregated polynomials."""
    las1 = _duliu_tree_sum("las1", 1, n)
    las2 = _duliu_tree_sum("las2", 1, n)
    plus = AlphaPoly((1, 1))
    minus = AlphaPoly((-1, 1))
    substituted = AlphaPoly.zero()
    for k, c in enumerate(las1.coeffs):
        if c:
            substituted = substituted + (minus**k) * (plus ** (n - k)) * c
    return substituted / 2**n == las2


def lagrange_series(m: int, order: int) -> TruncatedSeries:
    """f(t) = sum_n C((mn+1) alpha, n) t^n / (mn+1)."""
    coeffs = []
    for n in range(order + 1):
        c = binomial_coefficient(AlphaPoly((0, m * n + 1)), n) / (m * n + 1)
        coeffs.append(c)
    return TruncatedSeries(coeffs)


def lagrange_operator(m: int):
    """The (m+1)-linear operator of the integro-algebraic fixed point:
    F(x_1..x_{m+1}) = (alpha m - 1)/(m+1) t prod x + (alpha+1)/(m+1) int prod x."""
    c_algebraic = AlphaPoly((-1, m)) / (m + 1)
    c_integral = AlphaPoly((1, 1)) / (m + 1)

    def operator(*args: TruncatedSeries) -> TruncatedSeries:
        prod = args[0]
        for arg in args[1:]:
            prod = prod * arg
        return prod.times_t() * c_algebraic + integrate(prod) * c_integral

    return operator


def lagrange_fixed_point_check(m: int, order: int) -> IdentityReport:
    """Two routes to f(t) = sum C((mn+1) alpha, n) t^n/(mn+1):

    (i) the binomial fixed point x = (1 + t x^m)^alpha has residual
    exactly zero at the full order; (ii) the integro-algebraic fixed
    point is solved independently by Picard iteration at the full order
    and by the (m+1)-ary tree expansion at a capped order, where every
    per-tree term must match the per-node closed form.
    """
    if m > LAGRANGE_ARITY_GUARD or m < 1:
        raise SizeGuardError(f"lagrange check needs 1 <= m <= {LAGRANGE_ARITY_GUARD}")
    if order > LAGRANGE_ORDER_GUARD:
        raise SizeGuardError(f"lagrange check needs order <= {LAGRANGE_ORDER_GUARD}")
    start = time.perf_counter()
    f = lagrange_series(m, order)
    rhs = binomial_series(ALPHA, (f**m).times_t(), order)
    equal = f == rhs

    operator = lagrange_operator(m)
    equal = equal and picard_mary(operator, m, order) == f

    tree_order = min(order, MARY_EXPANSION_ORDER[m])
    expansion = fixed_point_mary(operator, m, tree_order)
    equal = equal and expansion.total == f.truncated(tree_order)
    for tree, term in expansion.terms:
        k = tree.node_count
        if k == 0:
            expected = TruncatedSeries.constant(1, tree_order)
        else:
            closed = AlphaPoly.one()
            for h in hook_data(tree).hooks:
                closed = closed * duliu_node_factor("las3", m, h)
            expected = TruncatedSeries.monomial(k, tree_order, closed)
        equal = equal and term == expected

    elapsed = (time.perf_counter() - start) * 1000
    return IdentityReport(
        name="lagrange",
        parameters={"m": m, "order": order, "tree_order": tree_order},
        lhs=str(f),
        rhs=str(rhs),
        equal=equal,
        elapsed_ms=elapsed,
    )


# ---------------------------------------------------------------------------
# The plane-tree equation in the discrete calculus picture.
# ---------------------------------------------------------------------------


def plane_q_family(k: int):
    """F_k(x_1..x_k) = q^(k-1) * discrete integral of the product."""

    def operation(*args: BinomialPoly) -> BinomialPoly:
        result = args[0]
        for arg in args[1:]:
            result = result * arg
        return discrete_sum(result) * QPoly.monomial(k - 1)

    return operation


def plane_q_expansion(order: int) -> TreeExpansion:
    """Expand x = 1 + sum_{n>=2} q^(n-1) F_n(x..x) over plane trees.

    A tree with n+1 leaves contributes q^n times its binomial-basis term,
    so the expansion to `order` covers words of length up to `order`
    exactly.
    """
    one = BinomialPoly({0: QPoly.one()})
    return fixed_point_plane(plane_q_family, order, one)


def _truncate_q(p: BinomialPoly, max_degree: int) -> BinomialPoly:
    def cut(c):
        if isinstance(c, QPoly):
            return c.truncated(max_degree)
        return c

    return BinomialPoly({k: cut(c) for k, c in p.coeffs.items()})


def plane_q_check(order: int) -> IdentityReport:
    """The image of the word equation under the binomial evaluation:
    the expansion total must equal the generating sum of C(t, max u) over
    packed words weighted by q^|u|, and its forward difference must equal
    sum_{n>=2} q^(n-1) x^n up to q-degree `order`."""
    start = time.perf_counter()
    expansion = plane_q_expansion(order)
    total = expansion.total

    direct = psi(graded_word_sum(order, weight=lambda n: QPoly.monomial(n)))
    equal = total == direct

    lhs = finite_difference(total)
    rhs = BinomialPoly()
    power = total * total
    for n in range(2, order + 2):
        rhs = rhs + power * QPoly.monomial(n - 1)
        power = power * total
    equal = equal and _truncate_q(lhs, order) == _truncate_q(rhs, order)

    elapsed = (time.perf_counter() - start) * 1000
    return IdentityReport(
        name="plane-q",
        parameters={"order": order},
        lhs=str(_truncate_q(lhs, order)),
        rhs=str(_truncate_q(rhs, order)),
        equal=equal,
        elapsed_ms=elapsed,
    )
