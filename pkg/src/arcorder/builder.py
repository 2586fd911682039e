"""Deterministic construction of the ordered tree for a projective dependency tree."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    ROOT,
    DependencyTree,
    Leaf,
    MalformedTreeError,
    Node,
    NonProjectiveError,
    OrderedTree,
    crossing_pairs,
    is_projective,
    iter_nodes,
    walk,
)

Path = tuple[int, ...]


def build(tree: DependencyTree) -> Node:
    """Return the canonical ordered tree for ``tree``.

    Each head becomes one node whose children are, in increasing token
    order, its own leaf and the subtrees of its dependents. The node is
    labelled with the relation on the head's incoming arc.

    Raises :class:`NonProjectiveError` listing the crossing pairs.
    """
    if not is_projective(tree):
        raise NonProjectiveError(crossing_pairs(tree))

    deps = tree.dependents()
    labels = [""] + tree.labels
    forms = tree.sentence.forms
    r = deps[ROOT][0]

    # Explicit post-order so long chains do not hit the recursion limit.
    built: dict[int, Node] = {}
    spans: dict[int, tuple[int, int, int]] = {}  # head -> (first, last, leaf count)
    stack = [(r, False)]
    while stack:
        h, expanded = stack.pop()
        if not expanded:
            stack.append((h, True))
            stack.extend((d, False) for d in deps[h])
            continue
        order = sorted([h] + deps[h])
        children = tuple(Leaf(h, forms[h - 1]) if i == h else built.pop(i) for i in order)
        built[h] = Node(labels[h], h, children)
        parts = [(h, h, 1)] + [spans.pop(d) for d in deps[h]]
        first = min(p[0] for p in parts)
        last = max(p[1] for p in parts)
        count = sum(p[2] for p in parts)
        if last - first + 1 != count:
            raise MalformedTreeError(f"yield of the node anchored at {h} is not contiguous")
        spans[h] = (first, last, count)
    return built[r]


@dataclass
class YieldReport:
    """Leaf-index interval of every node keyed by its path from the root."""

    spans: dict[Path, tuple[int, int]] = field(default_factory=dict)
    violations: list[Path] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def yields(tree: OrderedTree) -> YieldReport:
    report = YieldReport()
    nodes = list(iter_nodes(tree))
    sets: dict[Path, tuple[int, int, int]] = {}  # path -> (min, max, count)
    for path, node in reversed(nodes):
        if isinstance(node, Leaf):
            sets[path] = (node.index, node.index, 1)
            continue
        parts = [sets[path + (k,)] for k in range(len(node.children))]
        if not parts:
            raise MalformedTreeError(f"node at {path} has no children")
        lo = min(p[0] for p in parts)
        hi = max(p[1] for p in parts)
        sets[path] = (lo, hi, sum(p[2] for p in parts))
    for path, _ in nodes:
        lo, hi, count = sets[path]
        report.spans[path] = (lo, hi)
        if hi - lo + 1 != count:
            report.violations.append(path)
    return report


def first_gap(tree: OrderedTree) -> OrderedTree | None:
    """The first node (post-order) whose yield is not contiguous, or None. Linear time."""
    info: dict[int, tuple[int, int, int]] = {}
    for node in reversed(list(walk(tree))):
        if isinstance(node, Leaf):
            info[id(node)] = (node.index, node.index, 1)
            continue
        if not node.children:
            return node
        parts = [info[id(c)] for c in node.children]
        first = min(p[0] for p in parts)
        last = max(p[1] for p in parts)
        count = sum(p[2] for p in parts)
        if last - first + 1 != count:
            return node
        info[id(node)] = (first, last, count)
    return None


def node_at(tree: OrderedTree, path: Path) -> OrderedTree:
    node = tree
    for k in path:
        assert isinstance(node, Node)
        node = node.children[k]
    return node
