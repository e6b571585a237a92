import numpy as np
import pytest

from treecode.barcode import (
    BarcodeClass,
    BarcodeMismatchError,
    NonStrictBarcodeError,
    RawBarcode,
    StrictBarcode,
    add,
    barcode_class,
    barcode_inversion_vector,
    interpolate,
    is_standard_form,
    permutation_type,
    scale,
    standard_barcode,
)
from treecode.permkit import Permutation, all_permutations, left_inversion_vector


def B(*bars, essential=0.0) -> StrictBarcode:
    return StrictBarcode(essential, tuple(bars))


def random_barcode_of_type(rng: np.random.Generator, sigma: Permutation) -> StrictBarcode:
    births = np.sort(rng.uniform(0.0, 10.0, sigma.n + 1))
    deaths = np.sort(rng.uniform(10.5, 20.0, sigma.n))
    return StrictBarcode(
        births[0], tuple((births[j + 1], deaths[sigma(j + 1) - 1]) for j in range(sigma.n))
    )


@pytest.mark.parametrize(
    "barcode, expected",
    [
        (B((1, 7), (2, 6), (3, 5), (4, 8)), (3, 2, 1, 4)),
        (B((1, 5), (2, 6), (3, 7)), (1, 2, 3)),
        (B((1, 8), (2, 7), (3, 6), (4, 5)), (4, 3, 2, 1)),
        (B(), ()),
    ],
    ids=("worked example", "deaths in birth order", "reversed deaths", "essential bar only"),
)
def test_permutation_type(barcode, expected):
    assert permutation_type(barcode) == Permutation(expected)
    assert barcode_class(barcode).perm == Permutation(expected)


def test_barcode_classes_group_barcodes_by_type():
    barcodes = [
        B((1, 7), (2, 6), (3, 5), (4, 8)),
        B((0.5, 9), (1, 8.5), (2, 8), (3, 10)),
        B((1, 2), (3, 4), (5, 6), (7, 8)),
    ]
    classes = {barcode_class(barcode) for barcode in barcodes}
    assert classes == {BarcodeClass(Permutation((3, 2, 1, 4))), BarcodeClass(Permutation((1, 2, 3, 4)))}
    assert barcode_class(barcodes[0]) == barcode_class(barcodes[1])
    assert barcode_class(standard_barcode(Permutation((3, 2, 1, 4)))) == barcode_class(barcodes[0])


@pytest.mark.parametrize(
    "barcode, expected",
    [
        (B((1, 7), (2, 6), (3, 5), (4, 8)), (1, 2, 3, 1)),
        (B((1, 5), (2, 6), (3, 7)), (1, 1, 1)),
        (B((1, 8), (2, 7), (3, 6), (4, 5)), (1, 2, 3, 4)),
    ],
    ids=("worked example", "deaths in birth order", "reversed deaths"),
)
def test_barcode_inversion_vector(barcode, expected):
    assert barcode_inversion_vector(barcode).entries == expected


def test_bars_are_sorted_on_load():
    barcode = StrictBarcode(0, [(3, 5), (1, 7), (2, 6)])
    assert barcode.bars == ((1.0, 7.0), (2.0, 6.0), (3.0, 5.0))
    assert barcode.births == (1.0, 2.0, 3.0)
    assert barcode.deaths == (7.0, 6.0, 5.0)
    assert barcode.death_order() == (2, 1, 0)
    assert str(barcode) == "{[0,inf),[1,7),[2,6),[3,5)}"


@pytest.mark.parametrize(
    "essential, bars, message",
    [
        (0.0, ((1, 4), (1, 3)), "Births must be distinct"),
        (2.0, ((1, 4),), "above the essential birth"),
        (0.0, ((1, 4), (2, 4)), "Deaths must be pairwise distinct"),
        (0.0, ((3, 2),), "birth >= death"),
        (0.0, ((1, 1),), "birth >= death"),
    ],
    ids=("tied births", "bar born before essential", "tied deaths", "inverted bar", "empty bar"),
)
def test_non_strict_barcodes_are_rejected(essential, bars, message):
    with pytest.raises(NonStrictBarcodeError, match=message):
        StrictBarcode(essential, bars)


@pytest.mark.parametrize(
    "sigma, expected",
    [
        ((2, 1), B((1, 4), (2, 3))),
        ((1, 2, 3), B((1, 4), (2, 5), (3, 6))),
        ((3, 2, 1, 4), B((1, 7), (2, 6), (3, 5), (4, 8))),
    ],
    ids=("transposition", "identity", "worked example"),
)
def test_standard_barcode(sigma, expected):
    barcode = standard_barcode(Permutation(sigma))
    assert barcode == expected
    assert is_standard_form(barcode), "standard barcode should be in standard form"


@pytest.mark.parametrize("n", range(0, 8))
def test_standard_barcode_round_trips_and_vectors_agree(n):
    for sigma in all_permutations(n):
        barcode = standard_barcode(sigma)
        assert permutation_type(barcode) == sigma, f"type of B({sigma}) changed"
        assert barcode_inversion_vector(barcode) == left_inversion_vector(sigma), str(sigma)


def test_inversion_vectors_agree_on_random_barcodes():
    rng = np.random.default_rng(7)
    for _ in range(200):
        births = np.sort(rng.uniform(0, 10, 7))
        deaths = rng.uniform(10, 20, 6)
        barcode = StrictBarcode(births[0], tuple(zip(births[1:], deaths)))
        assert barcode_inversion_vector(barcode) == left_inversion_vector(permutation_type(barcode))


def test_is_standard_form_rejects_other_heights():
    assert not is_standard_form(B((1, 4), (2, 3), essential=0.5))
    assert not is_standard_form(B((1, 5), (2, 3)))


def test_scale():
    barcode = B((1, 4), (2, 3))
    assert scale(barcode, 2) == B((2, 8), (4, 6))
    assert scale(barcode, 1) == barcode
    with pytest.raises(ValueError, match="positive"):
        scale(barcode, 0)
    with pytest.raises(ValueError, match="positive"):
        scale(barcode, -1.5)


def test_scale_preserves_type():
    rng = np.random.default_rng(11)
    for _ in range(100):
        sigma = Permutation(tuple(rng.permutation(5) + 1))
        barcode = random_barcode_of_type(rng, sigma)
        assert permutation_type(scale(barcode, rng.uniform(0.01, 50))) == sigma


def test_add_same_type_is_strict():
    barcode = B((1, 4), (2, 3))
    total = add(barcode, barcode)
    assert total == B((2, 8), (4, 6))
    assert total.is_strict, "sum of same-type barcodes should be strict"


def test_add_same_type_random_pairs():
    rng = np.random.default_rng(3)
    for _ in range(100):
        sigma = Permutation(tuple(rng.permutation(4) + 1))
        total = add(random_barcode_of_type(rng, sigma), random_barcode_of_type(rng, sigma))
        assert isinstance(total, StrictBarcode)
        assert permutation_type(total) == sigma


def test_add_different_types_can_collide():
    total = add(B((1, 4), (2, 3)), B((1, 2.5), (2, 3.5)))
    assert isinstance(total, RawBarcode) and not isinstance(total, StrictBarcode)
    assert not total.is_strict, "coincident deaths should be flagged"
    assert [d for _, d in total.bars] == [6.5, 6.5]


def test_add_rejects_size_mismatch():
    with pytest.raises(BarcodeMismatchError):
        add(B((1, 4)), B((1, 4), (2, 3)))


def test_interpolate_endpoints_and_midpoint():
    first, second = B((2, 8), (4, 6)), B((1, 4), (2, 3))
    assert interpolate(first, second, 1.0) == first
    assert interpolate(first, second, 0.0) == second
    assert interpolate(first, second, 0.5) == B((1.5, 6), (3, 4.5))


@pytest.mark.parametrize("t", [-0.1, 1.5], ids=("below", "above"))
def test_interpolate_rejects_t_outside_unit_interval(t):
    barcode = B((1, 4), (2, 3))
    with pytest.raises(BarcodeMismatchError, match="must lie in"):
        interpolate(barcode, barcode, t)


def test_interpolate_rejects_type_mismatch():
    with pytest.raises(BarcodeMismatchError, match="same permutation type"):
        interpolate(B((1, 4), (2, 3)), B((1, 3), (2, 4)), 0.5)


def test_interpolation_paths_keep_their_type():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        sigma = Permutation(tuple(rng.permutation(n) + 1))
        first, second = random_barcode_of_type(rng, sigma), random_barcode_of_type(rng, sigma)
        for t in np.linspace(0.0, 1.0, 11):
            assert permutation_type(interpolate(first, second, float(t))) == sigma, f"type changed at t={t}"
