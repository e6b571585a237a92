"""
Set partitions of {0, ..., n} ordered by refinement, and the maximal chains of that lattice,
which are in bijection with combinatorial merge trees on n+1 leaves.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, List, Sequence, Tuple

from treecode.constants import ROOT_NODE_ID
from treecode.disjoint_set import DisjointSet
from treecode.mergetree import MergeTree, MergeTreeNode, NotStandardFormError, is_standard_form
from treecode.utils import maximal_chain_count

logger = logging.getLogger(__name__)

Block = Tuple[int, ...]


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class SetPartition:
    """Blocks are stored sorted, and ordered by their minimum element."""

    blocks: Tuple[Block, ...]

    def __post_init__(self):
        if any(not b for b in self.blocks):
            raise PartitionError("Blocks must be non-empty")
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        elements = [e for b in blocks for e in b]
        if sorted(elements) != list(range(len(elements))):
            raise PartitionError(
                f"Blocks must be disjoint and cover 0..{len(elements) - 1}, got {blocks}"
            )
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def bottom(cls, n: int) -> "SetPartition":
        return cls(tuple((i,) for i in range(n + 1)))

    @classmethod
    def top(cls, n: int) -> "SetPartition":
        return cls((tuple(range(n + 1)),))

    @classmethod
    def parse(cls, text: str) -> "SetPartition":
        try:
            return cls(
                tuple(
                    tuple(int(e) for e in block.split(","))
                    for block in text.strip().split("|")
                )
            )
        except ValueError as e:
            if isinstance(e, PartitionError):
                raise
            raise PartitionError(f"Cannot parse partition {text!r}: {e}") from e

    @property
    def n(self) -> int:
        """Largest element of the ground set {0, ..., n}."""
        return sum(len(b) for b in self.blocks) - 1

    def merge(self, first: int, second: int) -> "SetPartition":
        """Merges the blocks at the given indices."""
        if first == second:
            raise PartitionError("Cannot merge a block with itself")
        merged = self.blocks[first] + self.blocks[second]
        rest = [b for i, b in enumerate(self.blocks) if i not in (first, second)]
        return SetPartition(tuple(rest) + (merged,))

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return "|".join(",".join(str(e) for e in b) for b in self.blocks)


def merge_blocks(partition: SetPartition, first: int, second: int) -> SetPartition:
    return partition.merge(first, second)


def refines(finer: SetPartition, coarser: SetPartition) -> bool:
    """True iff every block of ``finer`` lies inside a block of ``coarser``."""
    if finer.n != coarser.n:
        raise PartitionError(
            f"Ground sets differ: 0..{finer.n} and 0..{coarser.n}"
        )
    owner = {e: i for i, b in enumerate(coarser.blocks) for e in b}
    return all(len({owner[e] for e in b}) == 1 for b in finer.blocks)


@dataclass(frozen=True)
class MaximalChain:
    partitions: Tuple[SetPartition, ...]

    def __post_init__(self):
        partitions = tuple(self.partitions)
        object.__setattr__(self, "partitions", partitions)
        if not partitions:
            raise PartitionError("A chain needs at least one partition")
        n = partitions[0].n
        if partitions[0] != SetPartition.bottom(n):
            raise PartitionError(f"Chain must start at the bottom partition, got {partitions[0]}")
        if len(partitions) != n + 1:
            raise PartitionError(
                f"Maximal chain over 0..{n} must have {n + 1} partitions, got {len(partitions)}"
            )
        for step, (lower, upper) in enumerate(zip(partitions, partitions[1:]), start=1):
            if len(upper) != len(lower) - 1 or not refines(lower, upper):
                raise PartitionError(
                    f"Step {step} ({lower} -> {upper}) does not merge exactly two blocks"
                )

    @classmethod
    def parse(cls, lines: Iterable[str]) -> "MaximalChain":
        return cls(tuple(SetPartition.parse(line) for line in lines if line.strip()))

    @property
    def n(self) -> int:
        return self.partitions[0].n

    def merges(self) -> List[Tuple[Block, Block]]:
        """The two blocks joined at each step."""
        result = []
        for lower, upper in zip(self.partitions, self.partitions[1:]):
            gone = [b for b in lower.blocks if b not in upper.blocks]
            result.append((gone[0], gone[1]))
        return result

    def __len__(self):
        return len(self.partitions)

    def __str__(self):
        return "\n".join(str(p) for p in self.partitions)


def tree_to_chain(tree: MergeTree) -> MaximalChain:
    """Partition i+1 groups leaf labels by the connected components below height n+i."""
    if not is_standard_form(tree):
        raise NotStandardFormError("tree_to_chain needs a merge tree in standard form")
    n = tree.n
    components: DisjointSet[str] = DisjointSet(tree.leaves)
    label = {v: i for i, v in enumerate(tree.leaves)}

    def leaf_partition() -> SetPartition:
        return SetPartition(
            tuple(
                tuple(label[u] for u in group if u in label)
                for group in components.groups().values()
            )
        )

    chain = [leaf_partition()]
    for v in tree.internal_nodes:
        components.add(v)
        for child in tree.children(v):
            components.union(v, child)
        chain.append(leaf_partition())
    logger.debug("Tree with %d leaves mapped to a chain of length %d", n + 1, len(chain))
    return MaximalChain(tuple(chain))


def chain_to_tree(chain: MaximalChain) -> MergeTree:
    """
    Leaf ``l{i}`` sits at height i; the merge performed at step j becomes node ``m{j}`` at
    height n+j.
    """
    n = chain.n
    parents = {}
    heights = {f"l{i}": float(i) for i in range(n + 1)}
    top_of = {i: f"l{i}" for i in range(n + 1)}
    for j, (first, second) in enumerate(chain.merges(), start=1):
        node = f"m{j}"
        heights[node] = float(n + j)
        parents[top_of.pop(first[0])] = node
        parents[top_of.pop(second[0])] = node
        top_of[min(first[0], second[0])] = node
    (last,) = top_of.values()
    parents[last] = ROOT_NODE_ID
    nodes = {ROOT_NODE_ID: MergeTreeNode(None, None)}
    nodes.update({v: MergeTreeNode(parents[v], h) for v, h in heights.items()})
    return MergeTree(ROOT_NODE_ID, nodes)


def enumerate_maximal_chains(n: int) -> Iterator[MaximalChain]:
    """All maximal chains of the partition lattice on {0, ..., n}, depth first over block pairs."""
    if n < 0:
        raise PartitionError(f"n must be non-negative, got {n}")
    logger.info("Enumerating %d maximal chains for n=%d", maximal_chain_count(n), n)

    def extend(prefix: List[SetPartition]) -> Iterator[MaximalChain]:
        current = prefix[-1]
        if len(current) == 1:
            yield MaximalChain(tuple(prefix))
            return
        for first, second in combinations(range(len(current)), 2):
            yield from extend(prefix + [current.merge(first, second)])

    yield from extend([SetPartition.bottom(n)])


def count_maximal_chains(n: int) -> int:
    return maximal_chain_count(n)


def chain_from_merges(n: int, merges: Sequence[Tuple[int, int]]) -> MaximalChain:
    """Builds a chain from pairs of elements whose blocks are merged in turn."""
    partitions = [SetPartition.bottom(n)]
    for a, b in merges:
        current = partitions[-1]
        index = {e: i for i, blk in enumerate(current.blocks) for e in blk}
        partitions.append(current.merge(index[a], index[b]))
    return MaximalChain(tuple(partitions))
