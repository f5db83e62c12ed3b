"""Words, permutations, packed words, and the tree shapes they index.

Provides the classical statistics (maj, imaj, inversions), the
standardization and packing maps, the decreasing-tree and plane-tree
constructions, hook data, and exhaustive enumerators with size guards.

Tree shapes carry a canonical text encoding fixed by the grammar

    BinaryTree ::= "_" | "(" BinaryTree "," BinaryTree ")"
    PlaneTree  ::= "*" | "(" PlaneTree{2,} ")"          children juxtaposed
    MAryTree   ::= "_" | "(" child{m+1} ")"             arity m out-of-band

which is bit-exact across the CLI, JSON dumps, and hashing.  Every value
here is immutable; the enumerators stream in a deterministic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _itertools_permutations
from typing import Iterator, Sequence

from .errors import ParseError, SizeGuardError

PERMUTATION_GUARD = 12
PACKED_WORD_GUARD = 9
BINARY_TREE_GUARD = 14
MARY_TREE_GUARD = 9
PLANE_TREE_GUARD = 9


def _word_to_text(word: Sequence[int]) -> str:
    if all(c <= 9 for c in word):
        return "".join(str(c) for c in word)
    return ",".join(str(c) for c in word)


def _word_from_text(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        if "," in text:
            return tuple(int(part) for part in text.split(","))
        return tuple(int(ch) for ch in text)
    except ValueError as exc:
        raise ParseError(f"bad word string {text!r}") from exc


class Permutation:
    """A permutation of {1..n} in one-line notation.

    >>> Permutation((2, 4, 1, 3)).inverse().word
    (3, 1, 4, 2)
    """

    __slots__ = ("word",)

    def __init__(self, word: Sequence[int]):
        word = tuple(word)
        n = len(word)
        if sorted(word) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {word}")
        self.word = word

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_text(cls, text: str) -> "Permutation":
        return cls(_word_from_text(text))

    @property
    def size(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self):
        return iter(self.word)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.word == other.word

    def __hash__(self):
        return hash(self.word)

    def __lt__(self, other: "Permutation") -> bool:
        return (len(self.word), self.word) < (len(other.word), other.word)

    def inverse(self) -> "Permutation":
        out = [0] * len(self.word)
        for position, value in enumerate(self.word):
            out[value - 1] = position + 1
        return Permutation(out)

    def descents(self) -> list[int]:
        """Positions i (1-based) with w_i > w_{i+1}."""
        w = self.word
        return [i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1]]

    def maj(self) -> int:
        """Major index: the sum of the descent positions."""
        return sum(self.descents())

    def imaj(self) -> int:
        """Major index of the inverse permutation."""
        return self.inverse().maj()

    def inversions(self) -> int:
        """Number of pairs i < j with w_i > w_j."""
        w = self.word
        return sum(
            1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j]
        )

    def to_text(self) -> str:
        return _word_to_text(self.word)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Permutation({self.word})"


class PackedWord:
    """A word whose letters form the initial interval {1..m}.

    >>> PackedWord((1, 2, 1, 3, 2)).max_letter
    3
    """

    __slots__ = ("letters",)

    def __init__(self, letters: Sequence[int]):
        letters = tuple(letters)
        seen = set(letters)
        m = max(letters, default=0)
        if seen != set(range(1, m + 1)):
            raise ValueError(f"not a packed word: {letters}")
        self.letters = letters

    @classmethod
    def empty(cls) -> "PackedWord":
        return cls(())

    @classmethod
    def from_text(cls, text: str) -> "PackedWord":
        return cls(_word_from_text(text))

    @property
    def max_letter(self) -> int:
        return max(self.letters, default=0)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, PackedWord) and self.letters == other.letters

    def __hash__(self):
        return hash(("pw", self.letters))

    def __lt__(self, other: "PackedWord") -> bool:
        return (len(self.letters), self.letters) < (len(other.letters), other.letters)

    def to_text(self) -> str:
        return _word_to_text(self.letters)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"PackedWord({self.letters})"


def standardize(word: Sequence[int]) -> Permutation:
    """Relabel a word by 1..n preserving relative order, ties left to right.

    >>> standardize((3, 4, 3, 6, 4)).word
    (1, 3, 2, 5, 4)
    """
    order = sorted(range(len(word)), key=lambda i: (word[i], i))
    out = [0] * len(word)
    for rank, position in enumerate(order):
        out[position] = rank + 1
    return Permutation(out)


def pack(word: Sequence[int]) -> PackedWord:
    """Order-preserving relabeling of the occurring letters onto {1..m}.

    >>> pack((3, 4, 3, 6, 4)).letters
    (1, 2, 1, 3, 2)
    """
    relabel = {letter: i + 1 for i, letter in enumerate(sorted(set(word)))}
    return PackedWord(tuple(relabel[c] for c in word))


class BinaryTree:
    """Shape of an incomplete binary tree; BinaryTree() is the empty tree."""

    __slots__ = ("left", "right", "node_count", "text")

    def __init__(self, left: "BinaryTree | None" = None, right: "BinaryTree | None" = None):
        if (left is None) != (right is None):
            raise ValueError("a binary node needs both children")
        self.left = left
        self.right = right
        if left is None:
            self.node_count = 0
            self.text = "_"
        else:
            self.node_count = 1 + left.node_count + right.node_count
            self.text = f"({left.text},{right.text})"

    @property
    def is_empty(self) -> bool:
        return self.left is None

    def __eq__(self, other) -> bool:
        return isinstance(other, BinaryTree) and self.text == other.text

    def __hash__(self):
        return hash(self.text)

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"BinaryTree.from_text({self.text!r})"

    @classmethod
    def leaf_node(cls) -> "BinaryTree":
        return cls(cls(), cls())

    @classmethod
    def from_text(cls, text: str) -> "BinaryTree":
        tree, rest = cls._parse(text.strip())
        if rest:
            raise ParseError(f"trailing input after binary tree: {rest!r}")
        return tree

    @classmethod
    def _parse(cls, text: str) -> tuple["BinaryTree", str]:
        if not text:
            raise ParseError("unexpected end of binary tree string")
        if text[0] == "_":
            return cls(), text[1:]
        if text[0] != "(":
            raise ParseError(f"expected '_' or '(' in binary tree, got {text[0]!r}")
        left, rest = cls._parse(text[1:])
        if not rest.startswith(","):
            raise ParseError("expected ',' between binary tree children")
        right, rest = cls._parse(rest[1:])
        if not rest.startswith(")"):
            raise ParseError("expected ')' closing binary tree node")
        return cls(left, right), rest[1:]


EMPTY_BINARY = BinaryTree()


class MAryTree:
    """An (m+1)-ary tree shape for a given arity parameter m >= 1.

    Every node has exactly m+1 child slots (children may be empty), so
    m = 1 reproduces binary trees.  The text grammar juxtaposes the
    children; m travels out-of-band.
    """

    __slots__ = ("arity", "children", "node_count", "text")

    def __init__(self, arity: int, children: Sequence["MAryTree"] | None = None):
        if arity < 1:
            raise ValueError("arity parameter m must be >= 1")
        self.arity = arity
        if children is None:
            self.children = ()
            self.node_count = 0
            self.text = "_"
        else:
            children = tuple(children)
            if len(children) != arity + 1:
                raise ValueError(f"a node needs exactly {arity + 1} children")
            if any(child.arity != arity for child in children):
                raise ValueError("mixed arities in one tree")
            self.children = children
            self.node_count = 1 + sum(child.node_count for child in children)
            self.text = "(" + "".join(child.text for child in children) + ")"

    @property
    def is_empty(self) -> bool:
        return not self.children

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MAryTree)
            and self.arity == other.arity
            and self.text == other.text
        )

    def __hash__(self):
        return hash((self.arity, self.text))

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"MAryTree.from_text({self.arity}, {self.text!r})"

    @classmethod
    def from_text(cls, arity: int, text: str) -> "MAryTree":
        tree, rest = cls._parse(arity, text.strip())
        if rest:
            raise ParseError(f"trailing input after m-ary tree: {rest!r}")
        return tree

    @classmethod
    def _parse(cls, arity: int, text: str) -> tuple["MAryTree", str]:
        if not text:
            raise ParseError("unexpected end of m-ary tree string")
        if text[0] == "_":
            return cls(arity), text[1:]
        if text[0] != "(":
            raise ParseError(f"expected '_' or '(' in m-ary tree, got {text[0]!r}")
        rest = text[1:]
        children = []
        for _ in range(arity + 1):
            child, rest = cls._parse(arity, rest)
            children.append(child)
        if not rest.startswith(")"):
            raise ParseError("expected ')' closing m-ary tree node")
        return cls(arity, children), rest[1:]


class PlaneTree:
    """A plane tree whose internal nodes all have at least two children.

    PlaneTree() is the single leaf (the tree of the empty word); internal
    nodes are built from an ordered sequence of at least two subtrees.
    """

    __slots__ = ("children", "internal_count", "leaf_count", "text")

    def __init__(self, children: Sequence["PlaneTree"] | None = None):
        if children is None:
            self.children = ()
            self.internal_count = 0
            self.leaf_count = 1
            self.text = "*"
        else:
            children = tuple(children)
            if len(children) < 2:
                raise ValueError("internal plane-tree nodes need >= 2 children")
            self.children = children
            self.internal_count = 1 + sum(c.internal_count for c in children)
            self.leaf_count = sum(c.leaf_count for c in children)
            self.text = "(" + "".join(c.text for c in children) + ")"

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def __eq__(self, other) -> bool:
        return isinstance(other, PlaneTree) and self.text == other.text

    def __hash__(self):
        return hash(("plane", self.text))

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"PlaneTree.from_text({self.text!r})"

    @classmethod
    def from_text(cls, text: str) -> "PlaneTree":
        tree, rest = cls._parse(text.strip())
        if rest:
            raise ParseError(f"trailing input after plane tree: {rest!r}")
        return tree

    @classmethod
    def _parse(cls, text: str) -> tuple["PlaneTree", str]:
        if not text:
            raise ParseError("unexpected end of plane tree string")
        if text[0] == "*":
            return cls(), text[1:]
        if text[0] != "(":
            raise ParseError(f"expected '*' or '(' in plane tree, got {text[0]!r}")
        rest = text[1:]
        children = []
        while rest and rest[0] != ")":
            child, rest = cls._parse(rest)
            children.append(child)
        if not rest:
            raise ParseError("expected ')' closing plane tree node")
        if len(children) < 2:
            raise ParseError("plane tree nodes need >= 2 children")
        return cls(children), rest[1:]


LEAF = PlaneTree()


@dataclass(frozen=True)
class HookData:
    """Subtree sizes h_v per node, plus right-subtree sizes for binary trees.

    Both fields are multisets stored as descending tuples.
    """

    hooks: tuple[int, ...]
    right_sizes: tuple[int, ...] = ()


def hook_data(tree: BinaryTree | MAryTree) -> HookData:
    """Collect the hook multiset (and, for binary trees, the right sizes)."""
    if tree.is_empty:
        raise ValueError("hook data of the empty tree is undefined")
    hooks: list[int] = []
    rights: list[int] = []

    if isinstance(tree, BinaryTree):

        def walk(node: BinaryTree) -> None:
            if node.is_empty:
                return
            hooks.append(node.node_count)
            rights.append(node.right.node_count)
            walk(node.left)
            walk(node.right)

        walk(tree)
        return HookData(tuple(sorted(hooks, reverse=True)), tuple(sorted(rights, reverse=True)))

    def walk_mary(node: MAryTree) -> None:
        if node.is_empty:
            return
        hooks.append(node.node_count)
        for child in node.children:
            walk_mary(child)

    walk_mary(tree)
    return HookData(tuple(sorted(hooks, reverse=True)))


def decreasing_tree(perm: Permutation) -> BinaryTree:
    """Shape of the decreasing tree: the maximum letter sits at the root and
    the factors to its left and right are built recursively."""

    def build(word: tuple[int, ...]) -> BinaryTree:
        if not word:
            return EMPTY_BINARY
        i = word.index(max(word))
        return BinaryTree(build(word[:i]), build(word[i + 1 :]))

    return build(perm.word)


def plane_tree_of_word(word: Sequence[int]) -> PlaneTree:
    """Plane tree of a word: split at every occurrence of the maximal letter
    and graft the subtrees of the blocks onto a common root; the empty word
    maps to the leaf."""
    word = tuple(word)
    if not word:
        return LEAF
    m = max(word)
    blocks: list[tuple[int, ...]] = []
    current: list[int] = []
    for c in word:
        if c == m:
            blocks.append(tuple(current))
            current = []
        else:
            current.append(c)
    blocks.append(tuple(current))
    return PlaneTree([plane_tree_of_word(b) for b in blocks])


# ---------------------------------------------------------------------------
# Exhaustive enumerators.  All stream in a fixed deterministic order; the
# factorial-type families refuse sizes above their guard unless forced.
# ---------------------------------------------------------------------------


def _check_guard(name: str, n: int, guard: int, unsafe_large: bool) -> None:
    if n < 0:
        raise ValueError(f"cannot enumerate {name} of negative size")
    if n > guard and not unsafe_large:
        raise SizeGuardError(
            f"{name}({n}) exceeds the guard {guard}; pass unsafe_large to force"
        )


def permutations(n: int, *, unsafe_large: bool = False) -> Iterator[Permutation]:
    """All of S_n in lexicographic order; exactly one empty permutation at n=0."""
    _check_guard("permutations", n, PERMUTATION_GUARD, unsafe_large)
    for word in _itertools_permutations(range(1, n + 1)):
        yield Permutation(word)


def packed_words(n: int, *, unsafe_large: bool = False) -> Iterator[PackedWord]:
    """All packed words of length n in lexicographic order.

    Depth-first construction with feasibility pruning: a prefix is viable
    iff the letters missing below its maximum still fit in the remaining
    positions.  Counts are the ordered Bell numbers 1, 1, 3, 13, 75, ...
    """
    _check_guard("packed_words", n, PACKED_WORD_GUARD, unsafe_large)
    if n == 0:
        yield PackedWord.empty()
        return

    word = [0] * n
    used = [False] * (n + 1)

    def missing_below(m: int) -> int:
        return sum(1 for c in range(1, m + 1) if not used[c])

    def rec(pos: int, current_max: int) -> Iterator[PackedWord]:
        remaining = n - pos
        if remaining == 0:
            yield PackedWord(tuple(word))
            return
        for c in range(1, n + 1):
            new_max = max(current_max, c)
            first_use = not used[c]
            used[c] = True
            word[pos] = c
            if missing_below(new_max) <= remaining - 1:
                yield from rec(pos + 1, new_max)
            if first_use:
                used[c] = False
        word[pos] = 0

    yield from rec(0, 0)


@lru_cache(maxsize=None)
def _binary_tree_list(n: int) -> tuple[BinaryTree, ...]:
    if n == 0:
        return (EMPTY_BINARY,)
    out = []
    for left_size in range(n):
        for left in _binary_tree_list(left_size):
            for right in _binary_tree_list(n - 1 - left_size):
                out.append(BinaryTree(left, right))
    return tuple(sorted(out, key=lambda t: t.text))


def binary_trees(n: int, *, unsafe_large: bool = False) -> Iterator[BinaryTree]:
    """All binary tree shapes with n nodes; Catalan(n) of them, in
    lexicographic order of the canonical encoding."""
    _check_guard("binary_trees", n, BINARY_TREE_GUARD, unsafe_large)
    yield from _binary_tree_list(n)


def _compositions(total: int, parts: int, minimum: int = 0) -> Iterator[tuple[int, ...]]:
    """All ways to write total as an ordered sum of `parts` integers >= minimum."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _mary_tree_list(arity: int, n: int) -> tuple[MAryTree, ...]:
    if n == 0:
        return (MAryTree(arity),)
    out = []
    for sizes in _compositions(n - 1, arity + 1):
        pools = [_mary_tree_list(arity, s) for s in sizes]
        def attach(index: int, chosen: list[MAryTree]) -> None:
            if index == len(pools):
                out.append(MAryTree(arity, list(chosen)))
                return
            for child in pools[index]:
                chosen.append(child)
                attach(index + 1, chosen)
                chosen.pop()
        attach(0, [])
    return tuple(sorted(out, key=lambda t: t.text))


def mary_trees(arity: int, n: int, *, unsafe_large: bool = False) -> Iterator[MAryTree]:
    """All (arity+1)-ary tree shapes with n nodes (Fuss-Catalan counts)."""
    _check_guard(f"mary_trees(m={arity})", n, MARY_TREE_GUARD, unsafe_large)
    yield from _mary_tree_list(arity, n)


@lru_cache(maxsize=None)
def _plane_tree_list_by_leaves(leaves: int) -> tuple[PlaneTree, ...]:
    if leaves == 1:
        return (LEAF,)
    out = []
    for k in range(2, leaves + 1):
        for sizes in _compositions(leaves, k, minimum=1):
            pools = [_plane_tree_list_by_leaves(s) for s in sizes]
            def attach(index: int, chosen: list[PlaneTree]) -> None:
                if index == len(pools):
                    out.append(PlaneTree(list(chosen)))
                    return
                for child in pools[index]:
                    chosen.append(child)
                    attach(index + 1, chosen)
                    chosen.pop()
            attach(0, [])
    return tuple(sorted(out, key=lambda t: t.text))


def plane_trees(n: int, *, unsafe_large: bool = False) -> Iterator[PlaneTree]:
    """All plane trees with internal arity >= 2 and n+1 leaves.

    These are exactly the trees reachable from words of length n, counted
    by the little Schroeder numbers 1, 1, 3, 11, 45, ...
    """
    _check_guard("plane_trees", n, PLANE_TREE_GUARD, unsafe_large)
    yield from _plane_tree_list_by_leaves(n + 1)
