from collections import Counter
from itertools import permutations, product

import pytest

from treecode.permkit import (
    InversionVector,
    Permutation,
    PermutationError,
    all_permutations,
    bruhat_leq,
    cayley_distance,
    covering_pairs,
    cycle_notation,
    elementary_transposition,
    from_inversion_vector,
    identity,
    left_inversion_vector,
    reversal,
    word_length,
)
from treecode.realization import trn, trn_after_transposition
from tests.utils import brute_force_word_length, inversions


def P(*images) -> Permutation:
    return Permutation(images)


@pytest.mark.parametrize(
    "sigma, expected",
    [
        (P(3, 2, 1, 4), (1, 2, 3, 1)),
        (P(1, 2, 3), (1, 1, 1)),
        (P(4, 3, 2, 1), (1, 2, 3, 4)),
        (P(), ()),
    ],
    ids=("worked example", "identity", "reversal", "empty"),
)
def test_left_inversion_vector(sigma, expected):
    assert left_inversion_vector(sigma).entries == expected, "wrong inversion vector"


@pytest.mark.parametrize(
    "entries, expected",
    [((1, 2, 3, 1), P(3, 2, 1, 4)), ((1, 1, 1), P(1, 2, 3)), ((1, 2), P(2, 1))],
    ids=("worked example", "identity", "transposition"),
)
def test_from_inversion_vector(entries, expected):
    assert from_inversion_vector(InversionVector(entries)) == expected


@pytest.mark.parametrize(
    "entries", [(2,), (1, 3), (1, 0), (1, 2, 4)], ids=("first > 1", "second > 2", "zero", "third > 3")
)
def test_inversion_vector_rejects_out_of_range_entries(entries):
    with pytest.raises(PermutationError, match="must lie in"):
        InversionVector(entries)


@pytest.mark.parametrize("n", range(0, 9))
def test_inversion_vector_round_trip(n):
    for sigma in all_permutations(n):
        assert from_inversion_vector(left_inversion_vector(sigma)) == sigma, f"round trip failed for {sigma}"


@pytest.mark.parametrize("n", range(1, 8))
def test_inversion_vectors_cover_the_product_once(n):
    vectors = Counter(left_inversion_vector(sigma).entries for sigma in all_permutations(n))
    expected = set(product(*(range(1, i + 1) for i in range(1, n + 1))))
    assert set(vectors) == expected, "inversion vectors should cover [1] x ... x [n]"
    assert set(vectors.values()) == {1}, "each vector should appear exactly once"


@pytest.mark.parametrize(
    "text, expected",
    [("3,2,1,4", P(3, 2, 1, 4)), ("[3,2,1,4]", P(3, 2, 1, 4)), (" 1, 2 ", P(1, 2)), ("", P())],
    ids=("bare", "brackets", "spaces", "empty"),
)
def test_parse_permutation(text, expected):
    assert Permutation.parse(text) == expected


@pytest.mark.parametrize(
    "text", ["1,1,2", "0,1", "1,2,4", "a,b"], ids=("repeated", "zero", "gap", "not a number")
)
def test_parse_rejects_invalid_permutations(text):
    with pytest.raises(PermutationError):
        Permutation.parse(text)


def test_permutation_display_and_accessors():
    sigma = P(3, 2, 1, 4)
    assert str(sigma) == "[3,2,1,4]"
    assert sigma(1) == 3 and sigma(4) == 4, "call should use 1-indexed positions"
    assert sigma.position(1) == 3
    assert sigma.n == len(sigma) == 4
    assert sigma.to_list() == [3, 2, 1, 4]


def test_permutations_sort_lexicographically():
    perms = list(all_permutations(3))
    assert sorted(reversed(perms)) == [Permutation(p) for p in sorted(permutations((1, 2, 3)))]
    assert Permutation((1, 3, 2)) < Permutation((2, 1, 3))
    assert not bruhat_leq(Permutation((1, 3, 2)), Permutation((2, 1, 3))), "not the weak order"


def test_composition_reads_right_to_left():
    a, b = P(2, 3, 1), P(2, 1, 3)
    composed = a * b
    for i in range(1, 4):
        assert composed(i) == a(b(i)), "composition should apply the right factor first"
    assert a.compose(a.inverse()) == identity(3)
    with pytest.raises(PermutationError, match="sizes differ"):
        a * P(1, 2)


@pytest.mark.parametrize(
    "sigma, expected",
    [(P(1, 2, 3), 0), (P(2, 1, 3), 1), (P(4, 3, 2, 1), 6)],
    ids=("identity", "one transposition", "reversal"),
)
def test_word_length(sigma, expected):
    assert word_length(sigma) == expected


@pytest.mark.parametrize("n", range(1, 6))
def test_word_length_matches_shortest_word(n):
    for sigma in all_permutations(n):
        assert word_length(sigma) == inversions(sigma) == brute_force_word_length(sigma), str(sigma)


def test_reversal_has_maximal_length():
    assert word_length(reversal(6)) == 15
    assert word_length(identity(6)) == 0


@pytest.mark.parametrize(
    "sigma, sigma_prime, expected",
    [
        (P(1, 3, 2), P(2, 3, 1), True),
        (P(2, 1, 3), P(2, 3, 1), False),
        (P(2, 3, 1), P(2, 1, 3), False),
        (identity(4), P(3, 2, 1, 4), True),
        (P(3, 1, 2), P(3, 1, 2), True),
    ],
    ids=("(23) below (123)", "(12) incomparable", "incomparable reversed", "identity is bottom", "reflexive"),
)
def test_bruhat_leq(sigma, sigma_prime, expected):
    assert bruhat_leq(sigma, sigma_prime) is expected


def test_bruhat_leq_rejects_size_mismatch():
    with pytest.raises(PermutationError):
        bruhat_leq(P(1, 2), P(1, 2, 3))


@pytest.mark.parametrize("n", range(1, 5))
def test_bruhat_leq_is_a_partial_order(n):
    perms = list(all_permutations(n))
    leq = {(a, b): bruhat_leq(a, b) for a in perms for b in perms}
    for a in perms:
        assert leq[a, a], "order should be reflexive"
    for a in perms:
        for b in perms:
            if a != b and leq[a, b]:
                assert not leq[b, a], f"antisymmetry fails for {a}, {b}"
                for c in perms:
                    if leq[b, c]:
                        assert leq[a, c], f"transitivity fails for {a}, {b}, {c}"


def test_bruhat_leq_transitivity_n5():
    perms = list(all_permutations(5))
    below = {a: {b for b in perms if bruhat_leq(a, b)} for a in perms}
    for a in perms:
        for b in below[a]:
            assert below[b] <= below[a], f"transitivity fails through {b}"


@pytest.mark.parametrize("n, expected", [(1, 0), (2, 1), (3, 6), (4, 36)], ids=("n=1", "n=2", "n=3", "n=4"))
def test_covering_pair_counts(n, expected):
    pairs = list(covering_pairs(n))
    assert len(pairs) == expected
    assert len({(a, b) for a, b, _ in pairs}) == expected, "covering pairs should be unique"


def test_covering_pairs_n2():
    assert list(covering_pairs(2)) == [(P(1, 2), P(2, 1), 1)]


def test_covering_pairs_are_left_transpositions():
    for sigma, sigma_prime, i in covering_pairs(4):
        assert sigma_prime == elementary_transposition(4, i) * sigma
        assert word_length(sigma_prime) == word_length(sigma) + 1
        assert bruhat_leq(sigma, sigma_prime)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(2, 7))
def test_trn_grows_along_covering_pairs(n):
    for sigma, sigma_prime, i in covering_pairs(n):
        entries = left_inversion_vector(sigma)
        q = sigma.position(i + 1)
        assert trn(sigma_prime) * entries[q] == trn(sigma) * (entries[q] + 1), (
            f"ratio fails for {sigma}, i={i}"
        )
        assert trn(sigma_prime) > trn(sigma), "realization number should strictly increase"
        assert trn_after_transposition(sigma, i) == trn(sigma_prime)
        assert trn_after_transposition(sigma_prime, i) == trn(sigma), "update should also work downwards"


def test_value_indexed_ratio_differs_from_positional_reading():
    sigma = P(2, 3, 1)
    sigma_prime = elementary_transposition(3, 2) * sigma
    assert sigma_prime == P(3, 2, 1)
    entries = left_inversion_vector(sigma)
    assert trn(sigma_prime) == trn(sigma) * (entries[sigma.position(3)] + 1) // entries[sigma.position(3)]
    assert trn(sigma_prime) != trn(sigma) * (entries[3] + 1) // entries[3], "positional entry should not fit"


@pytest.mark.parametrize(
    "sigma, sigma_prime, expected",
    [
        (P(1, 2, 3), P(3, 2, 1), 3),
        (P(2, 1, 3), P(3, 1, 2), 1),
        (P(2, 1, 3), P(2, 3, 1), 3),
        (P(3, 1, 2), P(3, 1, 2), 0),
    ],
    ids=("identity to reversal", "values 2 and 3 swapped", "values 1 and 3 swapped", "same"),
)
def test_cayley_distance(sigma, sigma_prime, expected):
    assert cayley_distance(sigma, sigma_prime) == expected


@pytest.mark.parametrize(
    "sigma, expected",
    [(P(2, 3, 1), "(123)"), (P(1, 3, 2), "(23)"), (P(1, 2, 3), "()"), (P(2, 1, 4, 3), "(12)(34)")],
    ids=("3-cycle", "transposition", "identity", "two cycles"),
)
def test_cycle_notation(sigma, expected):
    assert cycle_notation(sigma) == expected


def test_elementary_transposition_bounds():
    assert elementary_transposition(3, 1) == P(2, 1, 3)
    with pytest.raises(PermutationError):
        elementary_transposition(3, 3)
