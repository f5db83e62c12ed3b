"""Word quasi-symmetric functions on the M basis.

The product is packed convolution: M_a M_b sums M_w over the packed
words w whose prefix of length |a| packs to a and whose suffix packs to
b.  It splits three ways by comparing the maxima of the two blocks
(the tridendriform structure).  The finite-difference map erases every
occurrence of the maximal letter; the sandwich operations insert a new
maximal letter between k blocks and lift the k-fold product through it.
Evaluating M_u at a binomial coefficient C(t, max u) turns all of this
into the discrete calculus of polynomials in the binomial basis.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .combinat import PackedWord, PlaneTree, packed_words, plane_tree_of_word
from .elements import WQSymElement
from .errors import EmptyOperand
from .series import BinomialPoly

EMPTY_WORD = PackedWord.empty()


def m_basis(word: PackedWord) -> WQSymElement:
    return WQSymElement({word: 1})


def unit() -> WQSymElement:
    return WQSymElement({EMPTY_WORD: 1})


def _relabel(word: PackedWord, values: Sequence[int]) -> tuple[int, ...]:
    """Send letter i to values[i-1]; values must be increasing."""
    return tuple(values[c - 1] for c in word.letters)


def _letter_supports(sizes: Sequence[int], top: int):
    """All ways to choose an increasing support of the given size in
    {1..top} for each block so that the supports jointly cover {1..top}.

    Built without rejection: the last block is forced to contain every
    letter not covered so far, and branches that can no longer cover the
    alphabet are pruned.
    """
    letters = range(1, top + 1)
    k = len(sizes)
    tail_capacity = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        tail_capacity[i] = tail_capacity[i + 1] + sizes[i]

    def rec(index: int, covered: frozenset):
        if index == k - 1:
            size = sizes[index]
            missing = tuple(c for c in letters if c not in covered)
            if len(missing) > size:
                return
            for extra in combinations(sorted(covered), size - len(missing)):
                yield (tuple(sorted(missing + extra)),)
            return
        for support in combinations(letters, sizes[index]):
            now_covered = covered | frozenset(support)
            if top - len(now_covered) > tail_capacity[index + 1]:
                continue
            for rest in rec(index + 1, now_covered):
                yield (support,) + rest

    yield from rec(0, frozenset())


@lru_cache(maxsize=None)
def _packed_convolve_cached(a: PackedWord, b: PackedWord) -> tuple[PackedWord, ...]:
    p, r = a.max_letter, b.max_letter
    if len(a) == 0:
        return (b,)
    if len(b) == 0:
        return (a,)
    out = []
    for top in range(max(p, r), p + r + 1):
        for support_a, support_b in _letter_supports((p, r), top):
            word = _relabel(a, support_a) + _relabel(b, support_b)
            out.append(PackedWord(word))
    out.sort()
    return tuple(out)


def packed_convolve(a: PackedWord, b: PackedWord) -> list[PackedWord]:
    """All packed w = u.v with |u| = |a|, pack(u) = a, pack(v) = b.

    Words are built directly: choose the letter supports of the two
    blocks inside {1..M} for every feasible overall maximum M, then
    relabel each block onto its support.  Results are sorted
    lexicographically and duplicate-free (the supports are readable off
    any result, so distinct choices give distinct words).
    """
    return list(_packed_convolve_cached(a, b))


def product(
    x: WQSymElement, y: WQSymElement, *, max_length: int | None = None
) -> WQSymElement:
    """Bilinear extension of packed convolution.

    max_length truncates by word length during accumulation, which keeps
    powers of the graded generating element affordable.
    """
    out: dict = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            if max_length is not None and len(a) + len(b) > max_length:
                continue
            c = ca * cb
            for w in _packed_convolve_cached(a, b):
                s = out.get(w, 0) + c
                if s:
                    out[w] = s
                elif w in out:
                    del out[w]
    return WQSymElement(out)


def tridendriform_split(
    a: PackedWord, b: PackedWord
) -> tuple[list[PackedWord], list[PackedWord], list[PackedWord]]:
    """Partition the packed convolution by comparing block maxima:
    prec has max(prefix) > max(suffix), circ equality, succ the rest."""
    if len(a) == 0 or len(b) == 0:
        raise EmptyOperand("tridendriform operations need nonempty operands")
    k = len(a)
    prec, circ, succ = [], [], []
    for w in _packed_convolve_cached(a, b):
        left = max(w.letters[:k])
        right = max(w.letters[k:])
        if left > right:
            prec.append(w)
        elif left == right:
            circ.append(w)
        else:
            succ.append(w)
    return prec, circ, succ


def _split_product(x: WQSymElement, y: WQSymElement, part: int) -> WQSymElement:
    out: dict = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            c = ca * cb
            for w in tridendriform_split(a, b)[part]:
                out[w] = out.get(w, 0) + c
    return WQSymElement(out)


def prec_product(x: WQSymElement, y: WQSymElement) -> WQSymElement:
    return _split_product(x, y, 0)


def circ_product(x: WQSymElement, y: WQSymElement) -> WQSymElement:
    return _split_product(x, y, 1)


def succ_product(x: WQSymElement, y: WQSymElement) -> WQSymElement:
    return _split_product(x, y, 2)


def delta(x: WQSymElement) -> WQSymElement:
    """Erase all occurrences of the maximal letter of every basis word.

    A word of length n with r copies of its maximum lands in length
    n - r, so this walks down the length filtration rather than the
    grading; the constant word 1...1 maps to the unit and the unit
    itself to zero.
    """
    out: dict = {}
    for word, c in x.terms.items():
        if len(word) == 0:
            continue
        m = word.max_letter
        shorter = PackedWord(tuple(letter for letter in word.letters if letter != m))
        s = out.get(shorter, 0) + c
        if s:
            out[shorter] = s
        elif shorter in out:
            del out[shorter]
    return WQSymElement(out)


def _sandwich_words(blocks: tuple[PackedWord, ...]) -> list[PackedWord]:
    """Packed words w = w_1 m w_2 m ... m w_k where pack(w_i) matches the
    given blocks and m is one more than the maximum over all blocks.

    For k = 1 the degenerate sandwich is taken to be w_1 followed by the
    new maximum, which keeps "erase the maximum" a left inverse of the
    construction at every arity.
    """
    if len(blocks) == 1:
        block = blocks[0]
        return [PackedWord(block.letters + (block.max_letter + 1,))]
    sizes = tuple(block.max_letter for block in blocks)
    out = []
    for top in range(max(sizes, default=0), sum(sizes) + 1):
        for supports in _letter_supports(sizes, top):
            separator = (top + 1,)
            word: tuple[int, ...] = ()
            for i, block in enumerate(blocks):
                if i:
                    word += separator
                word += _relabel(block, supports[i])
            out.append(PackedWord(word))
    out.sort()
    return out


def f_k(args: Sequence[WQSymElement]) -> WQSymElement:
    """The k-linear sandwich lift: on basis words it sums M_w over all
    packed w obtained by joining blocks packing to the arguments with a
    fresh maximal letter; erasing that letter recovers the k-fold
    product."""
    if not args:
        raise ValueError("f_k needs at least one argument")
    out: dict = {}

    def rec(index: int, blocks: list[PackedWord], coeff) -> None:
        if index == len(args):
            for w in _sandwich_words(tuple(blocks)):
                out[w] = out.get(w, 0) + coeff
            return
        for word, c in sorted(args[index].terms.items()):
            blocks.append(word)
            rec(index + 1, blocks, coeff * c)
            blocks.pop()

    rec(0, [], 1)
    return WQSymElement(out)


def psi(x: WQSymElement) -> BinomialPoly:
    """Evaluate M_u to the binomial coefficient C(t, max u); an algebra
    homomorphism onto polynomials in the binomial basis."""
    out: dict = {}
    for word, c in x.terms.items():
        k = word.max_letter
        out[k] = out.get(k, 0) + c
    return BinomialPoly(out)


def tree_fiber_element(
    tree: PlaneTree, n: int, *, unsafe_large: bool = False
) -> WQSymElement:
    """Sum of M_u over the packed words u of length n whose plane tree is
    the given shape."""
    out: dict = {}
    for word in packed_words(n, unsafe_large=unsafe_large):
        if plane_tree_of_word(word.letters) == tree:
            out[word] = 1
    return WQSymElement(out)


def graded_word_sum(max_length: int, weight=None) -> WQSymElement:
    """Sum of all M_u with |u| <= max_length, each scaled by
    weight(|u|) when a weight function is given."""
    out: dict = {}
    for n in range(max_length + 1):
        for word in packed_words(n):
            out[word] = weight(n) if weight is not None else 1
    return WQSymElement(out)
