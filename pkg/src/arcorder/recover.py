"""Reading dependency arcs back off an ordered tree."""

from __future__ import annotations

from typing import Optional

from .builder import first_gap
from .core import ROOT, Arc, DependencyTree, Leaf, MalformedTreeError, Node, OrderedTree, Sentence, walk


def anchor_of(node: OrderedTree) -> int:
    """Index of the node's single direct leaf (a leaf is its own anchor)."""
    if isinstance(node, Leaf):
        return node.index
    lex = [c.index for c in node.children if isinstance(c, Leaf)]
    if len(lex) != 1:
        raise MalformedTreeError(f"node {node.label!r} has {len(lex)} direct leaves {lex}, expected 1")
    return lex[0]


def _check_node(node: Node) -> None:
    anchor = anchor_of(node)
    if anchor != node.anchor:
        raise MalformedTreeError(f"node {node.label!r} declares anchor {node.anchor} but its leaf is {anchor}")


def recover(tree: OrderedTree, sentence: Optional[Sentence] = None) -> DependencyTree:
    """Decode the dependency tree represented by a canonical ordered tree.

    The root node yields the arc from 0; every internal child of a node
    anchored at ``h`` yields an arc from ``h`` to the child's anchor,
    labelled with the child's label. Forms come from ``sentence`` when
    given, otherwise from the leaves.
    """
    if not isinstance(tree, Node):
        raise MalformedTreeError("the root of an ordered tree must be an internal node")
    leaf_nodes = []
    arcs = [Arc(ROOT, tree.anchor, tree.label)]
    for node in walk(tree):
        if isinstance(node, Leaf):
            leaf_nodes.append(node)
            continue
        if not node.children:
            raise MalformedTreeError(f"node {node.label!r} has no children")
        _check_node(node)
        arcs.extend(Arc(node.anchor, c.anchor, c.label) for c in node.children if isinstance(c, Node))

    # Leaves 1..n in pre-order plus contiguous yields imply sibling order.
    indices = [leaf.index for leaf in leaf_nodes]
    if indices != list(range(1, len(indices) + 1)):
        raise MalformedTreeError(f"leaves are not 1..n in surface order: {indices}")
    gap = first_gap(tree)
    if gap is not None:
        raise MalformedTreeError(f"node {gap.label!r} anchored at {gap.anchor} has a non-contiguous yield")

    if sentence is None:
        sentence = Sentence.from_forms(leaf.form for leaf in leaf_nodes)
    elif len(sentence) != len(indices):
        raise MalformedTreeError(f"tree has {len(indices)} leaves but the sentence has {len(sentence)} tokens")
    return DependencyTree(sentence, tuple(arcs))
