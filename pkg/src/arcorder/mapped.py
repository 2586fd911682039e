"""Arc-standard derivations executed as ordered-tree construction.

A mapped configuration keeps, instead of bare token indices, a stack of
partial trees. SHIFT pushes a bare leaf; LEFTARC inserts the lower tree as
the new leftmost dependent of the top tree; RIGHTARC appends the top tree
as the rightmost dependent of the one below it. A head keeps a pending
label until its own incoming arc is made.

Dependent subtrees are complete when attached, so they are frozen into
:class:`~arcorder.core.Node` right away and the head tree only ever holds
finished children.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .core import ROOT, UA, Leaf, Node, OrderedTree, Sentence
from .oracle import LEFTARC, SHIFT, Transition, TransitionError, check_arc_action


class InvariantError(AssertionError):
    """A mapped step broke contiguity or anchoring; signals a bug."""


@dataclass(frozen=True, eq=False)
class BareLeaf:
    """A shifted token that has no dependents yet."""

    anchor: int
    form: str

    @property
    def span(self) -> tuple[int, int]:
        return (self.anchor, self.anchor)


@dataclass(frozen=True, eq=False)
class Anchored:
    """A head with at least one attached dependent. ``label`` is None while pending."""

    anchor: int
    label: Optional[str]
    children: tuple[OrderedTree, ...]
    lo: int
    hi: int
    revision: int = 1

    @property
    def span(self) -> tuple[int, int]:
        return (self.lo, self.hi)


PartialTree = Union[BareLeaf, Anchored]


class _RootSentinel:
    anchor = ROOT

    def __repr__(self) -> str:
        return "root"


ROOT_SENTINEL = _RootSentinel()
StackItem = Union[PartialTree, _RootSentinel]


@dataclass(frozen=True)
class MappedConfiguration:
    sentence: Sentence
    stack: tuple[StackItem, ...]
    buffer: tuple[int, ...]
    result: Optional[Node] = None

    @classmethod
    def initial(cls, sentence: Sentence) -> "MappedConfiguration":
        return cls(sentence, (ROOT_SENTINEL,), tuple(range(1, len(sentence) + 1)))

    @property
    def trees(self) -> frozenset:
        """The live partial trees; exactly the stack minus the root sentinel."""
        return frozenset(self.stack[1:])

    @property
    def terminal(self) -> bool:
        return self.result is not None


def freeze(tree: PartialTree, label: str) -> Node:
    """Finish a dependent subtree under its incoming relation."""
    if isinstance(tree, BareLeaf):
        return Node(label, tree.anchor, (Leaf(tree.anchor, tree.form),))
    return Node(label, tree.anchor, tree.children)


def _extend(head: PartialTree, dep: PartialTree, label: str, leftmost: bool) -> Anchored:
    child = freeze(dep, label)
    if isinstance(head, BareLeaf):
        own: tuple[OrderedTree, ...] = (Leaf(head.anchor, head.form),)
        lo = hi = head.anchor
        revision = 1
    else:
        own = head.children
        lo, hi = head.lo, head.hi
        revision = head.revision + 1
    dlo, dhi = dep.span
    if leftmost:
        if dhi + 1 != lo:
            raise InvariantError(f"dependent {dep.span} not adjacent left of head {(lo, hi)}")
        return Anchored(head.anchor, None, (child,) + own, dlo, hi, revision)
    if hi + 1 != dlo:
        raise InvariantError(f"dependent {dep.span} not adjacent right of head {(lo, hi)}")
    return Anchored(head.anchor, None, own + (child,), lo, dhi, revision)


def _check_anchor(tree: Anchored) -> None:
    lex = [c for c in tree.children if isinstance(c, Leaf)]
    if len(lex) != 1 or lex[0].index != tree.anchor:
        raise InvariantError(f"tree anchored at {tree.anchor} has lexical children {lex}")


def step(config: MappedConfiguration, action: Transition, index: int = 0) -> MappedConfiguration:
    if config.terminal:
        raise TransitionError(index, "action after terminal configuration")
    stack, buffer = config.stack, config.buffer
    if action.kind == SHIFT:
        if not buffer:
            raise TransitionError(index, "SHIFT on empty buffer")
        i = buffer[0]
        t = BareLeaf(i, config.sentence.form(i))
        return MappedConfiguration(config.sentence, stack + (t,), buffer[1:])

    check_arc_action(stack, buffer, action.kind, index, lambda item: item is ROOT_SENTINEL)
    t_i, t_j = stack[-2], stack[-1]
    if t_i is ROOT_SENTINEL:
        # Root attachment: the surviving tree receives its label and the derivation ends.
        final = freeze(t_j, action.label)
        return MappedConfiguration(config.sentence, (ROOT_SENTINEL,), buffer, final)
    if action.kind == LEFTARC:
        new = _extend(t_j, t_i, action.label, leftmost=True)
    else:
        new = _extend(t_i, t_j, action.label, leftmost=False)
    _check_anchor(new)
    return MappedConfiguration(config.sentence, stack[:-2] + (new,), buffer)


def run_mapped(sentence: Sentence, derivation: Iterable[Transition]) -> list[MappedConfiguration]:
    configs = [MappedConfiguration.initial(sentence)]
    for k, action in enumerate(derivation, start=1):
        configs.append(step(configs[-1], action, k))
    if not configs[-1].terminal:
        raise TransitionError(len(configs) - 1, "incomplete derivation")
    return configs


def execute_mapped(sentence: Sentence, derivation: Iterable[Transition]) -> Node:
    config = MappedConfiguration.initial(sentence)
    k = 0
    for k, action in enumerate(derivation, start=1):
        config = step(config, action, k)
    if not config.terminal:
        raise TransitionError(k, "incomplete derivation")
    return config.result


def as_ordered(item: Union[StackItem, Node]) -> OrderedTree:
    """View a partial tree as an ordered tree, pending labels shown as UA."""
    if isinstance(item, Node):
        return item
    if isinstance(item, BareLeaf):
        return Node(UA, item.anchor, (Leaf(item.anchor, item.form),))
    if isinstance(item, Anchored):
        return Node(item.label or UA, item.anchor, item.children)
    raise TypeError(f"no ordered view of {item!r}")
