import json
import math
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, Optional

from treecode.mergetree import MergeTree, validate
from treecode.permkit import Permutation


def tree_from_edges(
    parents: Dict[str, Optional[str]], heights: Dict[str, float], root: str = "r"
) -> MergeTree:
    """Builds a merge tree from child -> parent and node -> height maps; the root is added."""
    nodes: Dict[str, Any] = {root: {"parent": None, "height": None}}
    nodes.update({v: {"parent": parents[v], "height": h} for v, h in heights.items()})
    return validate({"root": root, "nodes": nodes})


def write_json(path: Path, payload: Any) -> Path:
    path.write_text(json.dumps(payload))
    return path


def brute_force_word_length(sigma: Permutation) -> int:
    """Breadth-first search over adjacent transpositions, only usable for tiny n."""
    start = tuple(range(1, sigma.n + 1))
    target = sigma.images
    frontier, seen, distance = [start], {start}, 0
    while frontier:
        if target in frontier:
            return distance
        grown = []
        for images in frontier:
            for i in range(len(images) - 1):
                swapped = list(images)
                swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                swapped = tuple(swapped)
                if swapped not in seen:
                    seen.add(swapped)
                    grown.append(swapped)
        frontier, distance = grown, distance + 1
    raise AssertionError(f"{sigma} not reachable")


def brute_force_trn(sigma: Permutation) -> int:
    return math.prod(
        sum(1 for j in range(i + 1) if sigma.images[j] >= sigma.images[i]) for i in range(sigma.n)
    )


def embed(sigma: Permutation, j: int) -> Permutation:
    """Appends the value ``j`` at the last position, shifting the values ``>= j`` up by one."""
    return Permutation(tuple(v + 1 if v >= j else v for v in sigma.images) + (j,))


def inversions(sigma: Permutation) -> int:
    return sum(1 for a, b in combinations(sigma.images, 2) if a > b)
