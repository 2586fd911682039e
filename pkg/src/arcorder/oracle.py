"""Arc-standard transitions, the static oracle and the plain arc-set executor."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import ROOT, Arc, DependencyTree, NonProjectiveError, Sentence, TreeError, crossing_pairs, require_valid

SHIFT = "SHIFT"
LEFTARC = "LEFTARC"
RIGHTARC = "RIGHTARC"


class TransitionError(TreeError):
    def __init__(self, step: int, reason: str):
        self.step = step
        self.reason = reason
        super().__init__(f"step {step}: {reason}")


@dataclass(frozen=True)
class Transition:
    kind: str
    label: Optional[str] = None

    def __post_init__(self):
        if self.kind == SHIFT:
            if self.label is not None:
                raise ValueError("SHIFT carries no label")
        elif self.kind in (LEFTARC, RIGHTARC):
            if self.label is None:
                raise ValueError(f"{self.kind} needs a label")
        else:
            raise ValueError(f"unknown transition {self.kind!r}")

    def __str__(self) -> str:
        return self.kind if self.label is None else f"{self.kind}({self.label})"

    @classmethod
    def parse(cls, text: str) -> "Transition":
        text = text.strip()
        if text == SHIFT:
            return cls(SHIFT)
        m = re.fullmatch(r"(LEFTARC|RIGHTARC)\((.*)\)", text)
        if not m:
            raise ValueError(f"cannot parse transition {text!r}")
        return cls(m.group(1), m.group(2))


Derivation = list[Transition]


def shift() -> Transition:
    return Transition(SHIFT)


def left(label: str) -> Transition:
    return Transition(LEFTARC, label)


def right(label: str) -> Transition:
    return Transition(RIGHTARC, label)


@dataclass(frozen=True)
class Configuration:
    stack: tuple[int, ...]
    buffer: tuple[int, ...]
    arcs: tuple[Arc, ...] = ()

    @classmethod
    def initial(cls, n: int) -> "Configuration":
        return cls((ROOT,), tuple(range(1, n + 1)))

    @property
    def terminal(self) -> bool:
        return self.stack == (ROOT,) and not self.buffer


def check_arc_action(stack: Sequence, buffer: Sequence, kind: str, step: int, is_root) -> None:
    """Shared legality rules for arc actions; ``is_root`` tells whether a stack item is the sentinel."""
    if len(stack) < 2:
        raise TransitionError(step, f"{kind} needs two stack items")
    below = stack[-2]
    if kind == LEFTARC and is_root(below):
        raise TransitionError(step, "LEFTARC would make the root a dependent")
    if kind == RIGHTARC and is_root(below) and (buffer or len(stack) != 2):
        raise TransitionError(step, "root attachment before the end of the sentence")


def apply(config: Configuration, action: Transition, step: int = 0) -> Configuration:
    """One plain arc-standard step: arcs accumulate, trees are not built."""
    stack, buffer = config.stack, config.buffer
    if action.kind == SHIFT:
        if not buffer:
            raise TransitionError(step, "SHIFT on empty buffer")
        return Configuration(stack + (buffer[0],), buffer[1:], config.arcs)
    check_arc_action(stack, buffer, action.kind, step, lambda i: i == ROOT)
    i, j = stack[-2], stack[-1]
    if action.kind == LEFTARC:
        return Configuration(stack[:-2] + (j,), buffer, config.arcs + (Arc(j, i, action.label),))
    return Configuration(stack[:-2] + (i,), buffer, config.arcs + (Arc(i, j, action.label),))


def run_plain(n: int, derivation: Iterable[Transition]) -> list[Configuration]:
    """Every configuration visited, starting with the initial one.

    Errors carry 1-based action numbers.
    """
    configs = [Configuration.initial(n)]
    for step, action in enumerate(derivation, start=1):
        if configs[-1].terminal:
            raise TransitionError(step, "action after terminal configuration")
        configs.append(apply(configs[-1], action, step))
    if not configs[-1].terminal:
        raise TransitionError(len(configs) - 1, "incomplete derivation")
    return configs


def execute_plain(sentence: Sentence, derivation: Iterable[Transition]) -> DependencyTree:
    final = run_plain(len(sentence), derivation)[-1]
    return DependencyTree(sentence, final.arcs)


def derive(tree: DependencyTree) -> Derivation:
    """Canonical derivation: attach as soon as the dependent has all its dependents."""
    require_valid(tree)
    n = len(tree)
    heads = [None] + tree.heads
    labels = [None] + tree.labels
    pending = [0] * (n + 1)
    for h in heads[1:]:
        pending[h] += 1

    stack = [ROOT]
    buf = 1
    out: Derivation = []
    while buf <= n or len(stack) > 1:
        if len(stack) >= 2:
            i, j = stack[-2], stack[-1]
            if i != ROOT and heads[i] == j and pending[i] == 0:
                out.append(left(labels[i]))
                stack.pop(-2)
                pending[j] -= 1
                continue
            if heads[j] == i and pending[j] == 0 and (i != ROOT or buf > n):
                out.append(right(labels[j]))
                stack.pop()
                pending[i] -= 1
                continue
        if buf > n:
            crossing = crossing_pairs(tree)
            if crossing:
                raise NonProjectiveError(crossing)
            raise TransitionError(len(out), "no legal action with nonempty agenda")
        stack.append(buf)
        buf += 1
        out.append(shift())
    return out


def counts(derivation: Sequence[Transition]) -> tuple[int, int]:
    """(number of SHIFTs, number of arc actions)."""
    shifts = sum(1 for t in derivation if t.kind == SHIFT)
    return shifts, len(derivation) - shifts
