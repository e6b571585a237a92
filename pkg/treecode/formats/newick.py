"""
Newick reader and writer for rooted binary phylogenetic trees.

A top-level node with a single child is read as the root. A top-level node with two children is
read as the root's child and a root is added above it; its branch length, if any, becomes the
root edge.
"""
import logging
from dataclasses import dataclass, field
from itertools import count
from typing import Dict, List, Optional

from treecode.constants import ROOT_NODE_ID
from treecode.phylo import PhyloTree

logger = logging.getLogger(__name__)

_SPECIAL = set("(),:;'[] \t\n")


class NewickParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass
class _Node:
    position: int = 0
    name: Optional[str] = None
    length: Optional[float] = None
    children: List["_Node"] = field(default_factory=list)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        self._skip_blanks()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _skip_blanks(self):
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch.isspace():
                self.pos += 1
            elif ch == "[":
                end = self.text.find("]", self.pos)
                if end < 0:
                    raise NewickParseError("Unterminated comment", self.pos)
                self.pos = end + 1
            else:
                break

    def expect(self, ch: str):
        if self.peek() != ch:
            raise NewickParseError(f"Expected {ch!r}, found {self.peek() or 'end of input'!r}", self.pos)
        self.pos += 1

    def parse(self) -> _Node:
        node = self.subtree()
        self.expect(";")
        if self.peek():
            raise NewickParseError("Trailing characters after ';'", self.pos)
        return node

    def subtree(self) -> _Node:
        self._skip_blanks()
        node = _Node(position=self.pos)
        if self.peek() == "(":
            self.pos += 1
            node.children.append(self.subtree())
            while self.peek() == ",":
                self.pos += 1
                node.children.append(self.subtree())
            self.expect(")")
        node.name = self.label()
        if self.peek() == ":":
            self.pos += 1
            node.length = self.number()
        return node

    def label(self) -> Optional[str]:
        if self.peek() == "'":
            self.pos += 1
            chars = []
            while True:
                end = self.text.find("'", self.pos)
                if end < 0:
                    raise NewickParseError("Unterminated quoted label", self.pos)
                chars.append(self.text[self.pos:end])
                self.pos = end + 1
                if self.text[self.pos:self.pos + 1] == "'":
                    chars.append("'")
                    self.pos += 1
                else:
                    return "".join(chars)
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in _SPECIAL:
            self.pos += 1
        return self.text[start:self.pos] or None

    def number(self) -> float:
        self._skip_blanks()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in _SPECIAL:
            self.pos += 1
        try:
            return float(self.text[start:self.pos])
        except ValueError:
            raise NewickParseError(f"Invalid branch length {self.text[start:self.pos]!r}", start)


def parse_newick(text: str) -> PhyloTree:
    top = _Parser(text.rstrip()).parse()
    if len(top.children) == 1:
        root_name = top.name or ROOT_NODE_ID
        if top.length is not None:
            logger.debug("Ignoring branch length above the root")
        top, root_edge = top.children[0], top.children[0].length
    elif len(top.children) == 2:
        logger.warning("Newick tree has no single-child root, adding one above the top node")
        root_name, root_edge = ROOT_NODE_ID, top.length
    else:
        raise NewickParseError(
            f"Top node must have one or two children, has {len(top.children)}",
            top.children[2].position if len(top.children) > 2 else top.position,
        )

    ids = count()
    parents: Dict[str, str] = {}
    labels: Dict[str, str] = {}
    lengths: Dict[str, Optional[float]] = {}
    positions: Dict[str, int] = {}

    def add(node: _Node, parent: str, length: Optional[float]):
        node_id = f"n{next(ids)}"
        parents[node_id] = parent
        lengths[node_id] = length
        positions[node_id] = node.position
        if not node.children:
            if node.name is None:
                raise NewickParseError("Every leaf needs a label", node.position)
            labels[node_id] = node.name
        elif len(node.children) != 2:
            raise NewickParseError(
                f"Only binary trees are supported, found a node with {len(node.children)} children",
                node.children[2].position if len(node.children) > 2 else node.position,
            )
        for child in node.children:
            add(child, node_id, child.length)

    add(top, root_name, root_edge)
    present = [v for v, w in lengths.items() if w is not None]
    if not present:
        return PhyloTree(root_name, parents, labels)
    if len(present) != len(lengths):
        if present == [v for v in lengths if v != "n0"]:
            # only the root edge is missing
            lengths["n0"] = 0.0
        else:
            missing = next(v for v, w in lengths.items() if w is None and v != "n0")
            raise NewickParseError(
                "Branch lengths must be given for all edges or none", positions[missing]
            )
    return PhyloTree(root_name, parents, labels, lengths)


def _quote(label: str) -> str:
    if any(ch in _SPECIAL for ch in label):
        return "'" + label.replace("'", "''") + "'"
    return label


def to_newick(tree: PhyloTree) -> str:
    def write(node: str) -> str:
        kids = tree.children(node)
        text = "(" + ",".join(write(c) for c in kids) + ")" if kids else _quote(tree.labels[node])
        if tree.weights is not None:
            text += f":{tree.weights[node]!r}"
        return text

    return f"({write(tree.top)});"
