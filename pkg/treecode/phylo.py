"""
Rooted binary phylogenetic trees with labelled leaves and optional edge weights, the maps between
metric phylogenetic trees and merge trees, and the count of merge-tree classes a phylogenetic
tree cannot tell apart.
"""
import logging
from dataclasses import dataclass, field
from itertools import count
from math import factorial, prod
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Tuple, Union

from treecode.constants import MAX_ETA_INTERNAL_NODES, ROOT_NODE_ID
from treecode.mergetree import MergeTree, MergeTreeNode
from treecode.utils import SizeGuardError, double_factorial

logger = logging.getLogger(__name__)

Nested = Union[str, Tuple["Nested", "Nested"]]


class PhyloTreeError(ValueError):
    pass


@dataclass(frozen=True)
class PhyloTree:
    """
    ``parents`` maps every non-root node to its parent, ``labels`` maps leaves to their labels and
    ``weights``, when present, maps every non-root node to the length of the edge above it.
    """

    root: str
    parents: Mapping[str, str]
    labels: Mapping[str, str]
    weights: Optional[Mapping[str, float]] = None
    _children: Dict[str, Tuple[str, ...]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self):
        object.__setattr__(self, "parents", dict(self.parents))
        object.__setattr__(self, "labels", dict(self.labels))
        if self.weights is not None:
            object.__setattr__(self, "weights", {v: float(w) for v, w in self.weights.items()})
        object.__setattr__(self, "_children", self._check())

    def _check(self) -> Dict[str, Tuple[str, ...]]:
        if self.root in self.parents:
            raise PhyloTreeError(f"Root {self.root!r} must not have a parent")
        children: Dict[str, List[str]] = {self.root: []}
        children.update({v: [] for v in self.parents})
        for v, parent in self.parents.items():
            if parent not in children:
                raise PhyloTreeError(f"Node {v!r} points to unknown parent {parent!r}")
            children[parent].append(v)
        for v in self.parents:
            seen = set()
            while v != self.root:
                if v in seen:
                    raise PhyloTreeError(f"Cycle through node {v!r}")
                seen.add(v)
                v = self.parents[v]
        if len(children[self.root]) != 1:
            raise PhyloTreeError("The root must have exactly one child")
        for v, kids in children.items():
            if v != self.root and len(kids) not in (0, 2):
                raise PhyloTreeError(f"Internal node {v!r} must have two children, has {len(kids)}")
        leaves = {v for v, kids in children.items() if v != self.root and not kids}
        if set(self.labels) != leaves:
            raise PhyloTreeError("Exactly the leaves must carry labels")
        if len(set(self.labels.values())) != len(self.labels):
            raise PhyloTreeError("Leaf labels must be distinct")
        if self.weights is not None:
            if set(self.weights) != set(self.parents):
                raise PhyloTreeError("Every edge needs a weight in a metric tree")
            negative = [v for v, w in self.weights.items() if w < 0]
            if negative:
                raise PhyloTreeError(f"Edge weights must be non-negative, nodes {negative}")
        return {v: tuple(kids) for v, kids in children.items()}

    def children(self, node: str) -> Tuple[str, ...]:
        return self._children[node]

    @property
    def top(self) -> str:
        return self._children[self.root][0]

    @property
    def is_metric(self) -> bool:
        return self.weights is not None

    @property
    def leaves(self) -> Tuple[str, ...]:
        return tuple(self.labels)

    @property
    def internal_nodes(self) -> Tuple[str, ...]:
        return tuple(v for v in self.parents if self._children[v])

    def distance_from_root(self, node: str) -> float:
        if self.weights is None:
            raise PhyloTreeError("Distances need a metric phylogenetic tree")
        total = 0.0
        while node != self.root:
            total += self.weights[node]
            node = self.parents[node]
        return total

    def relabelled(self, mapping: Mapping[str, str]) -> "PhyloTree":
        """Replaces each leaf label ``x`` by ``mapping[x]``."""
        return PhyloTree(
            self.root,
            self.parents,
            {v: mapping[label] for v, label in self.labels.items()},
            self.weights,
        )

    def to_nested(self, node: Optional[str] = None) -> Nested:
        node = self.top if node is None else node
        kids = self._children[node]
        if not kids:
            return self.labels[node]
        return tuple(self.to_nested(c) for c in kids)


@dataclass(frozen=True)
class LabelledMergeTree:
    tree: MergeTree
    labels: Mapping[str, str]

    def label_of(self, node: str) -> str:
        return self.labels[node]


def from_nested(nested: Nested) -> PhyloTree:
    """Combinatorial tree from nested 2-tuples of leaf labels, e.g. ``(("0", "1"), "2")``."""
    ids = count()
    parents: Dict[str, str] = {}
    labels: Dict[str, str] = {}

    def build(sub: Nested, parent: str):
        node = f"v{next(ids)}"
        parents[node] = parent
        if isinstance(sub, str):
            labels[node] = sub
        else:
            if len(sub) != 2:
                raise PhyloTreeError(f"Internal nodes must be binary, got {sub!r}")
            for child in sub:
                build(child, node)

    build(nested, ROOT_NODE_ID)
    return PhyloTree(ROOT_NODE_ID, parents, labels)


def h_delta(tree: PhyloTree, delta: float) -> LabelledMergeTree:
    """Merge tree with heights ``delta - d(root, v)``; leaf labels travel along."""
    if not tree.is_metric:
        raise PhyloTreeError("h_delta needs edge weights")
    nodes = {tree.root: MergeTreeNode(None, None)}
    nodes.update(
        {
            v: MergeTreeNode(parent, delta - tree.distance_from_root(v))
            for v, parent in tree.parents.items()
        }
    )
    return LabelledMergeTree(MergeTree(tree.root, nodes), dict(tree.labels))


def t_delta(tree: MergeTree, delta: float) -> PhyloTree:
    """
    Metric phylogenetic tree with leaves labelled by birth rank, edge weights given by height
    differences and a root edge of length ``delta``.
    """
    if delta < 0:
        raise PhyloTreeError(f"delta must be non-negative, got {delta}")
    parents = {v: node.parent for v, node in tree.nodes.items() if v != tree.root}
    weights = {
        v: delta if parent == tree.root else tree.height(parent) - tree.height(v)
        for v, parent in parents.items()
    }
    labels = {v: str(i) for i, v in enumerate(tree.leaves)}
    return PhyloTree(tree.root, parents, labels, weights)


def count_phylo_classes(n_leaves: int) -> int:
    """(2n-1)!! rooted binary trees on n+1 labelled leaves."""
    if n_leaves < 2:
        raise PhyloTreeError(f"Need at least two leaves, got {n_leaves}")
    return double_factorial(2 * (n_leaves - 1) - 1)


def _levels(tree: PhyloTree) -> List[List[str]]:
    levels = []
    frontier = [tree.top] if tree.children(tree.top) else []
    while frontier:
        levels.append(frontier)
        frontier = [c for v in frontier for c in tree.children(v) if tree.children(c)]
    return levels


def eta_lower_bound(tree: PhyloTree) -> int:
    """Product of ``|A_j|!`` over the sets A_j of internal nodes j hops below the root's child."""
    return prod(factorial(len(level)) for level in _levels(tree))


def eta_brute_force(tree: PhyloTree, max_internal_nodes: int = MAX_ETA_INTERNAL_NODES) -> int:
    """
    Number of death orders compatible with the tree: linear extensions of the ancestor order on
    internal nodes, counted by dynamic programming over the subsets already placed.
    """
    internal = list(tree.internal_nodes)
    m = len(internal)
    if m > max_internal_nodes:
        raise SizeGuardError(
            f"Exhaustive eta is limited to {max_internal_nodes} internal nodes, tree has {m}",
            max_internal_nodes,
        )
    index = {v: i for i, v in enumerate(internal)}
    # bitmask of internal children that must be placed first
    below = [
        sum(1 << index[c] for c in tree.children(v) if c in index) for v in internal
    ]
    ways = [0] * (1 << m)
    ways[0] = 1
    for placed in range(1 << m):
        if not ways[placed]:
            continue
        for i in range(m):
            bit = 1 << i
            if not placed & bit and below[i] & placed == below[i]:
                ways[placed | bit] += ways[placed]
    return ways[-1]


def eta_hook_length(tree: PhyloTree) -> int:
    """Closed form m! / prod(subtree sizes) of the linear extensions of a rooted forest order."""
    sizes: Dict[str, int] = {}

    def size(v: str) -> int:
        if v not in sizes:
            sizes[v] = 1 + sum(size(c) for c in tree.children(v) if tree.children(c))
        return sizes[v]

    internal = tree.internal_nodes
    return factorial(len(internal)) // prod(size(v) for v in internal)


def splits(tree: PhyloTree) -> FrozenSet[FrozenSet[str]]:
    """Leaf-label sets below each internal node."""
    below: Dict[str, FrozenSet[str]] = {}

    def collect(v: str) -> FrozenSet[str]:
        kids = tree.children(v)
        below[v] = (
            frozenset((tree.labels[v],)) if not kids else frozenset().union(*(collect(c) for c in kids))
        )
        return below[v]

    collect(tree.top)
    return frozenset(below[v] for v in tree.internal_nodes)


def _insertions(nested: Nested, leaf: str) -> Iterator[Nested]:
    yield (nested, leaf)
    if not isinstance(nested, str):
        left, right = nested
        for sub in _insertions(left, leaf):
            yield (sub, right)
        for sub in _insertions(right, leaf):
            yield (left, sub)


def enumerate_nested_shapes(labels: List[str]) -> Iterator[Nested]:
    if not labels:
        return
    shapes: List[Nested] = [labels[0]]
    for leaf in labels[1:]:
        shapes = [grown for shape in shapes for grown in _insertions(shape, leaf)]
    yield from shapes


def enumerate_phylo_trees(n_leaves: int) -> Iterator[PhyloTree]:
    """Every rooted binary tree with leaves labelled ``0..n_leaves-1``, (2n-1)!! of them."""
    if n_leaves < 1:
        raise PhyloTreeError(f"Need at least one leaf, got {n_leaves}")
    for nested in enumerate_nested_shapes([str(i) for i in range(n_leaves)]):
        yield from_nested(nested)
