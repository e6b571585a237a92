"""
Tree realization numbers and the enumeration of every combinatorial merge tree whose Elder-rule
barcode is a given strict barcode.

Realizations of a barcode with ``n`` finite bars are indexed by mixed-radix integers: bars are
taken in increasing death order, the digit of bar ``j`` picks one of the ``l_j`` bars containing
it (ordered by birth, digit 0 being the essential bar) and the last bar to die is the fastest
varying digit. Any index range can thus be produced on its own.
"""
import logging
from itertools import permutations
from math import prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from treecode.barcode import StrictBarcode, barcode_inversion_vector
from treecode.constants import ROOT_NODE_ID
from treecode.mergetree import MergeTree, MergeTreeNode
from treecode.permkit import Permutation, left_inversion_vector
from treecode.utils import maximal_chain_count

logger = logging.getLogger(__name__)

RealizationCount = int

# (bar index, containing bars in birth order), bars numbered 1..n in birth order, 0 is essential
AttachmentOptions = List[Tuple[int, List[int]]]


def trn(sigma: Permutation) -> RealizationCount:
    return prod(left_inversion_vector(sigma).entries)


def trn_of_barcode(barcode: StrictBarcode) -> RealizationCount:
    """Product over finite bars of the number of bars containing them, essential bar included."""
    return prod(barcode_inversion_vector(barcode).entries)


def trn_after_transposition(sigma: Permutation, i: int) -> RealizationCount:
    """
    R(tau_i * sigma) from R(sigma) and one inversion-vector entry.

    Going up the weak order (value i left of i+1) the entry at the position of i+1 grows by one;
    going down the entry at the position of i shrinks by one.
    """
    r = trn(sigma)
    entries = left_inversion_vector(sigma)
    p, q = sigma.position(i), sigma.position(i + 1)
    if p < q:
        return r * (entries[q] + 1) // entries[q]
    return r * (entries[p] - 1) // entries[p]


def _trn_of_images(images: Sequence[int]) -> int:
    result = 1
    for i, v in enumerate(images):
        result *= 1 + sum(1 for u in images[:i] if u > v)
    return result


def sum_trn_exhaustive(n: int) -> int:
    """Sum of R(sigma) over all of S_n by brute force."""
    logger.info("Summing realization numbers over %d permutations", prod(range(1, n + 1)))
    return sum(_trn_of_images(p) for p in permutations(range(1, n + 1)))


def count_combinatorial_merge_trees(n: int) -> int:
    """(n+1)! n! / 2^n, the number of combinatorial merge trees with n+1 leaves."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return maximal_chain_count(n)


def attachment_options(barcode: StrictBarcode) -> AttachmentOptions:
    births = (barcode.essential_birth,) + barcode.births
    deaths = (float("inf"),) + barcode.deaths
    options = []
    for j0 in barcode.death_order():
        j = j0 + 1
        containing = [k for k in range(j) if births[k] < births[j] and deaths[k] > deaths[j]]
        options.append((j, containing))
    return options


def _decode(options: AttachmentOptions, index: int) -> Dict[int, int]:
    choice = {}
    for j, containing in reversed(options):
        index, digit = divmod(index, len(containing))
        choice[j] = containing[digit]
    return choice


def _build_tree(barcode: StrictBarcode, options: AttachmentOptions, choice: Dict[int, int]) -> MergeTree:
    """
    Bar ``k`` owns a trunk running from leaf ``b{k}`` through the merge nodes ``d{j}`` of the bars
    attached to it, in death order, up to its own death node ``d{k}`` (the root for ``k = 0``).
    """
    attached: Dict[int, List[int]] = {k: [] for k in range(barcode.n + 1)}
    for j, _ in options:
        attached[choice[j]].append(j)

    heights = {"b0": barcode.essential_birth}
    for k, (b, d) in enumerate(barcode.bars, start=1):
        heights[f"b{k}"] = b
        heights[f"d{k}"] = d

    parents = {}
    for k, js in attached.items():
        trunk = [f"b{k}"] + [f"d{j}" for j in js]
        for lower, upper in zip(trunk, trunk[1:]):
            parents[lower] = upper
        parents[trunk[-1]] = ROOT_NODE_ID if k == 0 else f"d{k}"

    nodes = {ROOT_NODE_ID: MergeTreeNode(None, None)}
    nodes.update({v: MergeTreeNode(parents[v], h) for v, h in heights.items()})
    return MergeTree(ROOT_NODE_ID, nodes)


def realization_at(barcode: StrictBarcode, index: int) -> MergeTree:
    options = attachment_options(barcode)
    total = prod(len(c) for _, c in options)
    if not 0 <= index < total:
        raise IndexError(f"Realization index {index} out of range [0, {total})")
    return _build_tree(barcode, options, _decode(options, index))


def enumerate_realizations(
    barcode: StrictBarcode, start: int = 0, stop: Optional[int] = None
) -> Iterator[MergeTree]:
    """
    Lazily yields the realizations with indices in ``[start, stop)``, all of them by default.
    Emitted trees use the endpoints of ``barcode`` as heights.
    """
    options = attachment_options(barcode)
    total = prod(len(c) for _, c in options)
    stop = total if stop is None else min(stop, total)
    logger.info("Enumerating realizations %d..%d of %d", start, stop, total)
    for index in range(max(start, 0), stop):
        yield _build_tree(barcode, options, _decode(options, index))
