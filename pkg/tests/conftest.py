import pytest

from treecalc.combinat import packed_words, permutations


@pytest.fixture(scope="session")
def packed_by_length():
    """Packed words of length 0..6, enumerated once per session."""
    return {n: list(packed_words(n)) for n in range(7)}


@pytest.fixture(scope="session")
def perms_by_size():
    """S_0 .. S_6, enumerated once per session."""
    return {n: list(permutations(n)) for n in range(7)}
