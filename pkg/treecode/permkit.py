"""
Permutations of {1, ..., n} in 1-indexed image notation, left inversion vectors,
word length and the left weak (Bruhat) order.

Composition is read right to left: ``(a * b)(i) == a(b(i))``.
"""
import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, List, Sequence, Tuple

logger = logging.getLogger(__name__)


class PermutationError(ValueError):
    pass


class _Fenwick:
    def __init__(self, size: int):
        self._tree = [0] * (size + 1)

    def add(self, i: int, delta: int = 1) -> None:
        while i < len(self._tree):
            self._tree[i] += delta
            i += i & -i

    def prefix(self, i: int) -> int:
        total = 0
        while i > 0:
            total += self._tree[i]
            i -= i & -i
        return total


@dataclass(frozen=True, order=True)
class Permutation:
    """
    One-line notation, 1-indexed. ``<`` compares images lexicographically, the weak order is
    ``bruhat_leq``.
    """

    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise PermutationError(
                f"{list(images)} is not a permutation of 1..{len(images)}"
            )

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``3,2,1,4`` or ``[3,2,1,4]``; an empty string is the empty permutation."""
        body = text.strip().strip("[]").strip()
        if not body:
            return cls(())
        try:
            return cls(tuple(int(x) for x in body.split(",")))
        except ValueError as e:
            raise PermutationError(f"Cannot parse permutation {text!r}: {e}") from e

    @property
    def n(self) -> int:
        return len(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.compose(other)

    def compose(self, other: "Permutation") -> "Permutation":
        _check_same_size(self, other)
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def position(self, value: int) -> int:
        return self.images.index(value) + 1

    def to_list(self) -> List[int]:
        return list(self.images)

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.images) + "]"


@dataclass(frozen=True)
class InversionVector:
    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        for i, e in enumerate(entries, start=1):
            if not 1 <= e <= i:
                raise PermutationError(
                    f"Inversion vector entry {i} must lie in [1, {i}], got {e}"
                )

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        """1-indexed access, matching the mathematical notation."""
        return self.entries[i - 1]

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.entries) + ")"


def _check_same_size(a: Permutation, b: Permutation):
    if a.n != b.n:
        raise PermutationError(f"Permutation sizes differ: {a.n} != {b.n}")


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def reversal(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def elementary_transposition(n: int, i: int) -> Permutation:
    """tau_i = (i, i+1) in S_n."""
    if not 1 <= i < n:
        raise PermutationError(f"tau_{i} is not defined in S_{n}")
    images = list(range(1, n + 1))
    images[i - 1], images[i] = images[i], images[i - 1]
    return Permutation(tuple(images))


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic image order."""
    for p in permutations(range(1, n + 1)):
        yield Permutation(p)


def left_inversion_vector(sigma: Permutation) -> InversionVector:
    # l_i = 1 + #{j < i : sigma(j) > sigma(i)}
    seen = _Fenwick(sigma.n)
    entries = []
    for i, v in enumerate(sigma.images):
        entries.append(1 + i - seen.prefix(v))
        seen.add(v)
    return InversionVector(tuple(entries))


def from_inversion_vector(v: InversionVector) -> Permutation:
    if not isinstance(v, InversionVector):
        v = InversionVector(tuple(v))
    remaining = list(range(1, len(v) + 1))
    images = [0] * len(v)
    # sigma(i) is the l_i-th largest value not used by positions after i
    for i in range(len(v), 0, -1):
        images[i - 1] = remaining.pop(len(remaining) - v[i])
    return Permutation(tuple(images))


def word_length(sigma: Permutation) -> int:
    """Number of inversions, equal to the length of a reduced word in adjacent transpositions."""
    return sum(e - 1 for e in left_inversion_vector(sigma).entries)


def cayley_distance(sigma: Permutation, sigma_prime: Permutation) -> int:
    _check_same_size(sigma, sigma_prime)
    return word_length(sigma_prime * sigma.inverse())


def bruhat_leq(sigma: Permutation, sigma_prime: Permutation) -> bool:
    """Left weak order: ``sigma_prime = w * sigma`` with ``l(sigma_prime) = l(w) + l(sigma)``."""
    _check_same_size(sigma, sigma_prime)
    return word_length(sigma_prime) == word_length(sigma) + cayley_distance(
        sigma, sigma_prime
    )


def covering_pairs(n: int) -> Iterator[Tuple[Permutation, Permutation, int]]:
    """
    Every cover ``sigma < tau_i * sigma`` of the left weak order on S_n, reported with ``i``.

    Left multiplication by tau_i swaps the values i and i+1; the length grows by one exactly
    when i stands to the left of i+1.
    """
    if n < 1:
        raise PermutationError("covering_pairs needs n >= 1")
    for sigma in all_permutations(n):
        for i in range(1, n):
            p, q = sigma.position(i), sigma.position(i + 1)
            if p < q:
                images = list(sigma.images)
                images[p - 1], images[q - 1] = i + 1, i
                yield sigma, Permutation(tuple(images)), i


def cycle_notation(sigma: Permutation) -> str:
    """Display form with fixed points omitted, e.g. ``(123)``; the identity is ``()``."""
    seen = set()
    cycles: List[Sequence[int]] = []
    for start in range(1, sigma.n + 1):
        if start in seen or sigma(start) == start:
            continue
        cycle = [start]
        seen.add(start)
        nxt = sigma(start)
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = sigma(nxt)
        cycles.append(cycle)
    if not cycles:
        return "()"
    sep = "," if sigma.n > 9 else ""
    return "".join("(" + sep.join(str(x) for x in c) + ")" for c in cycles)
