"""
Strict barcodes: one essential bar ``[b_0, inf)`` plus ``n`` finite bars with pairwise distinct
births and pairwise distinct deaths. The essential bar is stored by its birth only.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union

from treecode.permkit import InversionVector, Permutation

logger = logging.getLogger(__name__)

Bar = Tuple[float, float]


class NonStrictBarcodeError(ValueError):
    pass


class BarcodeMismatchError(ValueError):
    pass


def _normalize_bars(bars: Iterable[Sequence[float]]) -> Tuple[Bar, ...]:
    return tuple(sorted((float(b), float(d)) for b, d in bars))


@dataclass(frozen=True)
class RawBarcode:
    """Birth-sorted bar list that may violate strictness (coincident deaths)."""

    essential_birth: float
    bars: Tuple[Bar, ...]

    is_strict = False

    def __post_init__(self):
        object.__setattr__(self, "essential_birth", float(self.essential_birth))
        object.__setattr__(self, "bars", _normalize_bars(self.bars))

    @property
    def n(self) -> int:
        return len(self.bars)


@dataclass(frozen=True)
class StrictBarcode(RawBarcode):
    is_strict = True

    def __post_init__(self):
        super().__post_init__()
        births = [self.essential_birth] + [b for b, _ in self.bars]
        for prev, nxt in zip(births, births[1:]):
            if not prev < nxt:
                raise NonStrictBarcodeError(
                    f"Births must be distinct and above the essential birth, got {births}"
                )
        for b, d in self.bars:
            if not b < d:
                raise NonStrictBarcodeError(f"Bar [{b}, {d}) has birth >= death")
        deaths = [d for _, d in self.bars]
        if len(set(deaths)) != len(deaths):
            raise NonStrictBarcodeError(f"Deaths must be pairwise distinct, got {deaths}")

    @classmethod
    def from_raw(cls, raw: RawBarcode) -> "StrictBarcode":
        return cls(raw.essential_birth, raw.bars)

    @property
    def births(self) -> Tuple[float, ...]:
        return tuple(b for b, _ in self.bars)

    @property
    def deaths(self) -> Tuple[float, ...]:
        return tuple(d for _, d in self.bars)

    def death_order(self) -> Tuple[int, ...]:
        """0-based bar indices (in birth order) sorted by increasing death."""
        return tuple(sorted(range(self.n), key=lambda i: self.bars[i][1]))

    def __str__(self):
        parts = [f"[{self.essential_birth:g},inf)"] + [f"[{b:g},{d:g})" for b, d in self.bars]
        return "{" + ",".join(parts) + "}"


@dataclass(frozen=True)
class BarcodeClass:
    perm: Permutation


def permutation_type(barcode: StrictBarcode) -> Permutation:
    """sigma(j) is the rank of d_j among the finite deaths; the essential bar plays no role."""
    ranks = [0] * barcode.n
    for rank, j in enumerate(barcode.death_order(), start=1):
        ranks[j] = rank
    return Permutation(tuple(ranks))


def barcode_class(barcode: StrictBarcode) -> BarcodeClass:
    return BarcodeClass(permutation_type(barcode))


def barcode_inversion_vector(barcode: StrictBarcode) -> InversionVector:
    """
    l_i = #{0 <= j < i : d_j > d_i} with d_0 = inf, i.e. the number of bars strictly
    containing bar i, essential bar included.
    """
    deaths = barcode.deaths
    entries = [
        1 + sum(1 for j in range(i) if deaths[j] > deaths[i]) for i in range(barcode.n)
    ]
    return InversionVector(tuple(entries))


def standard_barcode(sigma: Permutation) -> StrictBarcode:
    n = sigma.n
    return StrictBarcode(0.0, tuple((float(i), float(sigma(i) + n)) for i in range(1, n + 1)))


def is_standard_form(barcode: StrictBarcode) -> bool:
    n = barcode.n
    return (
        barcode.essential_birth == 0
        and barcode.births == tuple(float(i) for i in range(1, n + 1))
        and sorted(barcode.deaths) == [float(i) for i in range(n + 1, 2 * n + 1)]
    )


def scale(barcode: StrictBarcode, factor: float) -> StrictBarcode:
    if not factor > 0:
        raise ValueError(f"Scaling factor must be positive, got {factor}")
    return StrictBarcode(
        barcode.essential_birth * factor,
        tuple((b * factor, d * factor) for b, d in barcode.bars),
    )


def add(first: StrictBarcode, second: StrictBarcode) -> Union[StrictBarcode, RawBarcode]:
    """
    Pointwise sum in birth order. Strict whenever both summands share a permutation type;
    otherwise deaths may coincide and a ``RawBarcode`` is returned.
    """
    if first.n != second.n:
        raise BarcodeMismatchError(
            f"Cannot add barcodes with {first.n} and {second.n} finite bars"
        )
    raw = RawBarcode(
        first.essential_birth + second.essential_birth,
        tuple((b1 + b2, d1 + d2) for (b1, d1), (b2, d2) in zip(first.bars, second.bars)),
    )
    deaths = [d for _, d in raw.bars]
    if len(set(deaths)) == len(deaths):
        return StrictBarcode.from_raw(raw)
    logger.debug("Sum has coincident deaths %s, returning a non-strict barcode", deaths)
    return raw


def interpolate(first: StrictBarcode, second: StrictBarcode, t: float) -> StrictBarcode:
    """``t * first + (1 - t) * second``; both barcodes must share their permutation type."""
    if not 0.0 <= t <= 1.0:
        raise BarcodeMismatchError(f"Interpolation parameter must lie in [0, 1], got {t}")
    if first.n != second.n or permutation_type(first) != permutation_type(second):
        raise BarcodeMismatchError(
            "Interpolation needs barcodes of the same permutation type, "
            f"got {permutation_type(first)} and {permutation_type(second)}"
        )
    if t == 1.0:
        return first
    if t == 0.0:
        return second
    s = 1.0 - t
    return StrictBarcode(
        t * first.essential_birth + s * second.essential_birth,
        tuple(
            (t * b1 + s * b2, t * d1 + s * d2)
            for (b1, d1), (b2, d2) in zip(first.bars, second.bars)
        ),
    )

