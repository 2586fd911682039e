"""Pseudo-projective lifting and its inverse, Head encoding scheme.

Lifting reattaches the dependent of a non-projective arc to its
grandparent and records the original head's relation in the label as
``base<sep>mark`` (default separator ``↑``). Decoding searches below the
current head for a node carrying the recorded relation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .core import ROOT, DependencyTree, TreeError, nonprojective_arcs, require_valid, validate

SEP = "↑"
ASCII_SEP = "^"


class DecodingError(TreeError):
    pass


@dataclass(frozen=True)
class LiftedLabel:
    base: str
    mark: Optional[str] = None

    def encode(self, sep: str = SEP) -> str:
        return self.base if self.mark is None else f"{self.base}{sep}{self.mark}"

    @classmethod
    def parse(cls, text: str, sep: str = SEP) -> "LiftedLabel":
        base, found, mark = text.partition(sep)
        return cls(base, mark) if found else cls(text)


def base_label(text: str, sep: str = SEP) -> str:
    return text.partition(sep)[0]


@dataclass
class LiftTrace:
    """How many times each dependent was lifted."""

    lifts: dict[int, int] = field(default_factory=dict)


def lift(tree: DependencyTree, sep: str = SEP, trace: Optional[LiftTrace] = None) -> DependencyTree:
    """Projectivize by lifting the shortest non-projective arc (leftmost dependent on ties) until none is left.

    A dependent lifted for the first time is marked with its head's base
    relation; later lifts keep that first mark.
    """
    require_valid(tree)
    heads = [ROOT] + tree.heads
    labels = [""] + tree.labels
    changed = False
    while True:
        bad = nonprojective_arcs(heads)
        if not bad:
            break
        h, d = min(bad, key=lambda hd: (abs(hd[0] - hd[1]), hd[1]))
        current = LiftedLabel.parse(labels[d], sep)
        mark = current.mark if current.mark is not None else base_label(labels[h], sep)
        labels[d] = LiftedLabel(current.base, mark).encode(sep)
        heads[d] = heads[h]
        changed = True
        if trace is not None:
            trace.lifts[d] = trace.lifts.get(d, 0) + 1
    if not changed:
        return tree
    return tree.with_heads_labels(heads[1:], labels[1:])


@dataclass
class DeliftReport:
    tree: DependencyTree
    unresolved: list[int] = field(default_factory=list)
    ambiguous: list[int] = field(default_factory=list)


def delift_report(tree: DependencyTree, sep: str = SEP) -> DeliftReport:
    """Undo lifting and say which marks could not be resolved or had several candidates."""
    require_valid(tree)
    n = len(tree)
    heads = [ROOT] + tree.heads
    labels = [""] + tree.labels
    report = DeliftReport(tree)
    todo = {d for d in range(1, n + 1) if LiftedLabel.parse(labels[d], sep).mark is not None}

    def depth(v: int) -> int:
        k = 0
        while v != ROOT:
            v = heads[v]
            k += 1
        return k

    while todo:
        d = min(todo, key=lambda x: (depth(heads[x]), x))
        todo.discard(d)
        g = heads[d]
        lab = LiftedLabel.parse(labels[d], sep)
        children: dict[int, list[int]] = {}
        for v in range(1, n + 1):
            children.setdefault(heads[v], []).append(v)
        matches = []
        queue = deque(c for c in children.get(g, []) if c != d)
        while queue:
            v = queue.popleft()
            if base_label(labels[v], sep) == lab.mark:
                matches.append(v)
            queue.extend(c for c in children.get(v, []) if c != d)
        labels[d] = lab.base
        if not matches:
            report.unresolved.append(d)
            continue
        if len(matches) > 1:
            report.ambiguous.append(d)
        heads[d] = matches[0]

    result = tree.with_heads_labels(heads[1:], labels[1:])
    violations = validate(result)
    if violations:
        raise DecodingError(f"decoding produced an invalid tree: {violations}")
    report.tree = result
    report.unresolved.sort()
    report.ambiguous.sort()
    return report


def delift(tree: DependencyTree, sep: str = SEP) -> DependencyTree:
    return delift_report(tree, sep).tree


def is_lifted(tree: DependencyTree, sep: str = SEP) -> bool:
    return any(sep in a.label for a in tree.arcs)

