"""
Merge trees: rooted binary trees whose height grows toward the root, the root sitting at +inf.

Trees are validated on construction, so every ``MergeTree`` instance is generic, has a root with
exactly one child and binary internal nodes. Generic here means that no two leaves and no two merges
share a height and that every node lies strictly below its parent. A leaf may sit level with a merge
elsewhere in the tree.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple

from treecode.barcode import StrictBarcode
from treecode.disjoint_set import DisjointSet

logger = logging.getLogger(__name__)

ROOT_PARENT = -1


class MergeTreeValidationError(ValueError):
    def __init__(self, message: str, code: str, node: Optional[str] = None):
        super().__init__(message)
        self.code = code
        self.node = node


class NotStandardFormError(ValueError):
    pass


@dataclass(frozen=True)
class MergeTreeNode:
    parent: Optional[str]
    height: Optional[float]


@dataclass(frozen=True)
class MergeTree:
    root: str
    nodes: Mapping[str, MergeTreeNode]
    _children: Dict[str, Tuple[str, ...]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self):
        object.__setattr__(self, "nodes", dict(self.nodes))
        object.__setattr__(self, "_children", _check_structure(self.root, self.nodes))

    def children(self, node: str) -> Tuple[str, ...]:
        return self._children[node]

    def parent(self, node: str) -> Optional[str]:
        return self.nodes[node].parent

    def height(self, node: str) -> float:
        h = self.nodes[node].height
        return math.inf if h is None else h

    def is_leaf(self, node: str) -> bool:
        return node != self.root and not self._children[node]

    @property
    def top(self) -> str:
        """The unique child of the root."""
        return self._children[self.root][0]

    @property
    def leaves(self) -> Tuple[str, ...]:
        """Leaf ids in birth order (increasing height)."""
        return tuple(
            sorted((v for v in self.nodes if self.is_leaf(v)), key=self.height)
        )

    @property
    def internal_nodes(self) -> Tuple[str, ...]:
        """Non-root internal ids in death order (increasing height)."""
        return tuple(
            sorted(
                (v for v in self.nodes if v != self.root and self._children[v]),
                key=self.height,
            )
        )

    @property
    def n(self) -> int:
        """Number of finite bars of the Elder-rule barcode."""
        return len(self.nodes) // 2 - 1

    def bottom_up(self) -> Iterator[str]:
        """Non-root nodes by increasing height, so children come before their parents."""
        return iter(
            sorted((v for v in self.nodes if v != self.root), key=self.height)
        )

    def with_heights(self, heights: Mapping[str, float]) -> "MergeTree":
        return MergeTree(
            self.root,
            {
                v: MergeTreeNode(node.parent, heights.get(v, node.height))
                for v, node in self.nodes.items()
            },
        )

    def shifted(self, delta: float) -> "MergeTree":
        return self.with_heights(
            {v: self.height(v) + delta for v in self.nodes if v != self.root}
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "root": self.root,
            "nodes": {
                v: {"parent": node.parent, "height": node.height}
                for v, node in self.nodes.items()
            },
        }


def _check_structure(
    root: str, nodes: Mapping[str, MergeTreeNode]
) -> Dict[str, Tuple[str, ...]]:
    if root not in nodes:
        raise MergeTreeValidationError(
            f"Root {root!r} is not among the nodes", "missing_root", root
        )
    if nodes[root].parent is not None:
        raise MergeTreeValidationError(
            f"Root {root!r} must not have a parent", "missing_root", root
        )
    if nodes[root].height is not None:
        raise MergeTreeValidationError(
            f"Root {root!r} must have a null height", "root_height", root
        )

    children: Dict[str, List[str]] = {v: [] for v in nodes}
    for v, node in nodes.items():
        if v == root:
            continue
        if node.parent is None:
            raise MergeTreeValidationError(
                f"Node {v!r} has no parent but {root!r} is the root", "multiple_roots", v
            )
        if node.parent not in nodes:
            raise MergeTreeValidationError(
                f"Node {v!r} points to unknown parent {node.parent!r}", "unknown_parent", v
            )
        if node.height is None or not math.isfinite(node.height):
            raise MergeTreeValidationError(
                f"Only the root may have a null or infinite height, node {v!r} has {node.height}",
                "root_height",
                v,
            )
        children[node.parent].append(v)

    reaches_root = {root}
    for v in nodes:
        path = []
        while v not in reaches_root:
            if v in path:
                raise MergeTreeValidationError(
                    f"Cycle through node {v!r}", "cycle", v
                )
            path.append(v)
            v = nodes[v].parent
        reaches_root.update(path)

    if len(children[root]) != 1:
        raise MergeTreeValidationError(
            f"Root must have exactly one child, has {len(children[root])}", "non_binary", root
        )
    for v, kids in children.items():
        if v != root and len(kids) not in (0, 2):
            raise MergeTreeValidationError(
                f"Internal node {v!r} must have two children, has {len(kids)}", "non_binary", v
            )

    for v, node in nodes.items():
        parent = node.parent
        if parent is None or parent == root:
            continue
        if node.height >= nodes[parent].height:
            raise MergeTreeValidationError(
                f"Node {v!r} at height {node.height} does not lie below its parent "
                f"{parent!r} at height {nodes[parent].height}",
                "height_inversion",
                v,
            )

    # a leaf may sit level with an unrelated merge, as when a bar is born where another dies
    seen: Dict[Tuple[bool, float], str] = {}
    for v, node in nodes.items():
        if v == root:
            continue
        key = (bool(children[v]), node.height)
        if key in seen:
            kind = "merge nodes" if key[0] else "leaves"
            raise MergeTreeValidationError(
                f"The {kind} {seen[key]!r} and {v!r} share height {node.height}",
                "non_generic",
                v,
            )
        seen[key] = v

    return {
        v: tuple(sorted(kids, key=lambda c: (nodes[c].height, bool(children[c]))))
        for v, kids in children.items()
    }


def validate(raw: Mapping[str, Any]) -> MergeTree:
    """Builds a ``MergeTree`` from the ``{"root": ..., "nodes": {id: {"parent", "height"}}}`` layout."""
    try:
        root = str(raw["root"])
        nodes = {
            str(v): MergeTreeNode(
                None if spec.get("parent") is None else str(spec["parent"]),
                None if spec.get("height") is None else float(spec["height"]),
            )
            for v, spec in raw["nodes"].items()
        }
    except (KeyError, TypeError, AttributeError, ValueError) as e:
        raise MergeTreeValidationError(f"Malformed merge tree data: {e}", "malformed") from e
    return MergeTree(root, nodes)


def elder_rule(tree: MergeTree) -> StrictBarcode:
    """
    Each leaf opens a bar; at each merge the younger of the two alive elder leaves dies.
    The oldest leaf carries the essential bar.
    """
    components: DisjointSet[str] = DisjointSet()
    bars = []
    for v in tree.bottom_up():
        kids = tree.children(v)
        if not kids:
            components.add(v)
            continue
        first, second = (components.tag(c) for c in kids)
        elder, younger = sorted((first, second), key=tree.height)
        bars.append((tree.height(younger), tree.height(v)))
        components.add(v, tag=elder)
        components.union(v, kids[0], tag=elder)
        components.union(v, kids[1], tag=elder)
    essential = components.tag(tree.top)
    return StrictBarcode(tree.height(essential), tuple(bars))


@dataclass(frozen=True)
class ComboClassWitness:
    """
    Canonical form of a combinatorial merge tree: for the leaf of birth rank ``i``
    ``leaf_parents[i]`` is the death rank of its parent and ``internal_parents[j]`` does the
    same for the internal node of death rank ``j``; ``-1`` stands for the root. The original
    ids are kept for reference and do not take part in comparisons.
    """

    leaf_parents: Tuple[int, ...]
    internal_parents: Tuple[int, ...]
    birth_order: Tuple[str, ...] = field(compare=False, repr=False)
    death_order: Tuple[str, ...] = field(compare=False, repr=False)

    @property
    def parent_map(self) -> Dict[str, str]:
        def name(rank: int) -> str:
            return "root" if rank == ROOT_PARENT else f"d{rank}"

        mapping = {f"b{i}": name(p) for i, p in enumerate(self.leaf_parents)}
        mapping.update({f"d{j}": name(p) for j, p in enumerate(self.internal_parents)})
        return mapping

    def __str__(self):
        return "/".join(
            (
                ",".join(str(p) for p in self.leaf_parents),
                ",".join(str(p) for p in self.internal_parents),
            )
        )


def canonical_code(tree: MergeTree) -> ComboClassWitness:
    births = tree.leaves
    deaths = tree.internal_nodes
    death_rank = {v: j for j, v in enumerate(deaths)}

    def rank_of_parent(v: str) -> int:
        parent = tree.parent(v)
        return ROOT_PARENT if parent == tree.root else death_rank[parent]

    return ComboClassWitness(
        tuple(rank_of_parent(v) for v in births),
        tuple(rank_of_parent(v) for v in deaths),
        births,
        deaths,
    )


def combinatorially_equivalent(first: MergeTree, second: MergeTree) -> bool:
    return canonical_code(first) == canonical_code(second)


def standardize(tree: MergeTree) -> MergeTree:
    """Leaf of birth rank ``i`` goes to height ``i``, internal node of death rank ``j >= 1`` to ``n + j``."""
    n = tree.n
    heights = {v: float(i) for i, v in enumerate(tree.leaves)}
    heights.update({v: float(n + j) for j, v in enumerate(tree.internal_nodes, start=1)})
    return tree.with_heights(heights)


def is_standard_form(tree: MergeTree) -> bool:
    n = tree.n
    return [tree.height(v) for v in tree.leaves] == [float(i) for i in range(n + 1)] and [
        tree.height(v) for v in tree.internal_nodes
    ] == [float(n + j) for j in range(1, n + 1)]
