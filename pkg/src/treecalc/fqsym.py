"""Free quasi-symmetric functions on the G and F bases.

The G basis multiplies by shifted convolution: G_a G_b sums G_c over all
permutations c = u.v whose factors standardize to a and b, giving
C(k+l, k) terms.  On top of that sit the dendriform half products (split
by the side holding the maximal letter), the derivation that erases the
maximal letter, the bilinear lift that inserts a new maximal letter
between the factors (whose tree iterates sum the fibers of the
decreasing-tree map), a q-shuffle deformation on the F basis, and the
specializations into one-variable power series.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from .arith import QFraction, QPoly, q_factorial
from .combinat import BinaryTree, Permutation
from .elements import FQSymElement
from .errors import BasisMismatch, EmptyOperand
from .series import TruncatedSeries

EMPTY_PERM = Permutation(())


def g_basis(perm: Permutation) -> FQSymElement:
    return FQSymElement({perm: 1}, basis="G")


def f_basis(perm: Permutation) -> FQSymElement:
    return FQSymElement({perm: 1}, basis="F")


def unit(basis: str = "G") -> FQSymElement:
    return FQSymElement({EMPTY_PERM: 1}, basis=basis)


def to_basis(x: FQSymElement, basis: str) -> FQSymElement:
    """Convert between the G and F bases via F_s = G_{s^-1}."""
    if x.basis == basis:
        return x
    return FQSymElement(
        {key.inverse(): c for key, c in x.terms.items()}, basis=basis
    )


def _split_values(n: int, k: int):
    """All ways to hand k of the values 1..n to the left factor."""
    values = range(1, n + 1)
    for chosen in combinations(values, k):
        chosen_set = set(chosen)
        rest = tuple(v for v in values if v not in chosen_set)
        yield chosen, rest


def convolve(a: Permutation, b: Permutation) -> list[Permutation]:
    """All c = u.v with Std(u) = a and Std(v) = b; exactly C(k+l, k) of
    them, duplicate-free, in the order induced by the value split."""
    k, l = a.size, b.size
    out = []
    for left_values, right_values in _split_values(k + l, k):
        u = tuple(left_values[i - 1] for i in a.word)
        v = tuple(right_values[i - 1] for i in b.word)
        out.append(Permutation(u + v))
    return out


def half_products(a: Permutation, b: Permutation) -> tuple[list[Permutation], list[Permutation]]:
    """Split the convolution by which factor holds the maximal letter:
    prec gets max(u) > max(v), succ gets max(u) <= max(v)."""
    if a.size == 0 or b.size == 0:
        raise EmptyOperand("half products need nonempty operands")
    k, n = a.size, a.size + b.size
    prec, succ = [], []
    for gamma in convolve(a, b):
        if gamma.word.index(n) < k:
            prec.append(gamma)
        else:
            succ.append(gamma)
    return prec, succ


def product(x: FQSymElement, y: FQSymElement) -> FQSymElement:
    """Bilinear extension of the convolution product (G basis)."""
    x.require_basis("G")
    y.require_basis("G")
    out: dict = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            c = ca * cb
            for gamma in convolve(a, b):
                s = out.get(gamma, 0) + c
                if s:
                    out[gamma] = s
                elif gamma in out:
                    del out[gamma]
    return FQSymElement(out, basis="G")


def _half_product(x: FQSymElement, y: FQSymElement, side: int) -> FQSymElement:
    x.require_basis("G")
    y.require_basis("G")
    out: dict = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            c = ca * cb
            for gamma in half_products(a, b)[side]:
                out[gamma] = out.get(gamma, 0) + c
    return FQSymElement(out, basis="G")


def prec_product(x: FQSymElement, y: FQSymElement) -> FQSymElement:
    return _half_product(x, y, 0)


def succ_product(x: FQSymElement, y: FQSymElement) -> FQSymElement:
    return _half_product(x, y, 1)


def derive(x: FQSymElement) -> FQSymElement:
    """The derivation: erase the maximal letter of every basis word.

    Degree drops by one on each homogeneous component; the degree-0 part
    is sent to zero.
    """
    x.require_basis("G")
    out: dict = {}
    for perm, c in x.terms.items():
        n = perm.size
        if n == 0:
            continue
        shorter = Permutation(tuple(v for v in perm.word if v != n))
        s = out.get(shorter, 0) + c
        if s:
            out[shorter] = s
        elif shorter in out:
            del out[shorter]
    return FQSymElement(out, basis="G")


def bilinear_B(a: Permutation, b: Permutation) -> list[Permutation]:
    """All c = u.(n+1).v with Std(u) = a, Std(v) = b, where n = |a|+|b|.

    Erasing the inserted maximum recovers the convolution, so this lifts
    the product through the derivation.
    """
    k, l = a.size, b.size
    out = []
    for left_values, right_values in _split_values(k + l, k):
        u = tuple(left_values[i - 1] for i in a.word)
        v = tuple(right_values[i - 1] for i in b.word)
        out.append(Permutation(u + (k + l + 1,) + v))
    return out


def b_product(x: FQSymElement, y: FQSymElement) -> FQSymElement:
    """Bilinear extension of bilinear_B to elements (G basis)."""
    x.require_basis("G")
    y.require_basis("G")
    out: dict = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            c = ca * cb
            for gamma in bilinear_B(a, b):
                out[gamma] = out.get(gamma, 0) + c
    return FQSymElement(out, basis="G")


@lru_cache(maxsize=None)
def tree_term(tree: BinaryTree) -> FQSymElement:
    """Evaluate the bilinear lift over a binary tree shape with 1 at the
    leaves.  The support is exactly the fiber of the decreasing-tree map
    over the shape, each with coefficient 1."""
    if tree.is_empty:
        return unit("G")
    return b_product(tree_term(tree.left), tree_term(tree.right))


def phi(x: FQSymElement, order: int) -> TruncatedSeries:
    """The exponential specialization G_s -> t^n / n! (an algebra
    homomorphism into rational power series)."""
    x.require_basis("G")
    coeffs = [Fraction(0)] * (order + 1)
    for perm, c in x.terms.items():
        n = perm.size
        if n <= order:
            coeffs[n] += c
    return TruncatedSeries(
        [coeffs[n] / factorial(n) for n in range(order + 1)]
    )


def phi_q(x: FQSymElement, order: int) -> TruncatedSeries:
    """The q-specialization G_s -> q^imaj(s) t^n / [n]_q!.

    Coefficients are carried as explicit quotients with denominator
    [n]_q!, compared by cross-multiplication (QPoly is not a field).
    """
    x.require_basis("G")
    numerators = [QPoly.zero() for _ in range(order + 1)]
    for perm, c in x.terms.items():
        n = perm.size
        if n <= order:
            numerators[n] = numerators[n] + QPoly.monomial(perm.imaj()) * c
    coeffs = [QFraction(numerators[n], q_factorial(n)) for n in range(order + 1)]
    return TruncatedSeries(coeffs)


def _inversions(word: tuple[int, ...]) -> int:
    return sum(
        1
        for i in range(len(word))
        for j in range(i + 1, len(word))
        if word[i] > word[j]
    )


def q_shuffle_words(a: Permutation, b: Permutation) -> list[tuple[Permutation, QPoly]]:
    """The q-shuffle of a with the shifted b: each interleaving c is
    weighted by q to the number of inversions created by the shuffle,
    inv(c) - inv(a) - inv(b)."""
    k, l = a.size, b.size
    shifted = tuple(v + k for v in b.word)
    base = a.inversions() + b.inversions()
    out = []
    for positions in combinations(range(k + l), k):
        word = [0] * (k + l)
        pos_set = set(positions)
        ai = iter(a.word)
        bi = iter(shifted)
        for i in range(k + l):
            word[i] = next(ai) if i in pos_set else next(bi)
        gamma = Permutation(tuple(word))
        out.append((gamma, QPoly.monomial(_inversions(gamma.word) - base)))
    return out


def q_shuffle_product(x: FQSymElement, y: FQSymElement) -> FQSymElement:
    """Product of the q-deformed algebra on the F basis; at q = 1 it
    degenerates to the ordinary product."""
    x.require_basis("F")
    y.require_basis("F")
    out: dict = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            c = ca * cb
            for gamma, weight in q_shuffle_words(a, b):
                s = out.get(gamma, 0) + weight * c
                if s:
                    out[gamma] = s
                elif gamma in out:
                    del out[gamma]
    return FQSymElement(out, basis="F")


def scale_alphabet(x: FQSymElement) -> FQSymElement:
    """Rescale the alphabet by q: multiply the degree-n component by q^n.

    This is the unique grading-compatible reading of "evaluate at qA":
    the q-specialization sends degree-n elements to t^n multiples, so
    substituting qt for t is exactly this scaling.
    """
    return x._like(
        {key: QPoly.monomial(len(key)) * c for key, c in x.terms.items()}
    )


def pairing(x: FQSymElement, y: FQSymElement):
    """Kronecker pairing <F_s, G_t> = delta_{s,t}, extended bilinearly.

    The two arguments must be in opposite bases (either order).
    """
    if x.basis == y.basis:
        raise BasisMismatch(f"pairing needs opposite bases, got {x.basis} twice")
    total = 0
    small, big = (x, y) if len(x) <= len(y) else (y, x)
    for key, c in small.terms.items():
        other = big.terms.get(key)
        if other is not None:
            total = total + c * other
    return total
