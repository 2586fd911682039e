"""Domain types, dependency-tree validation and projectivity.

Token indices run 1..n. The artificial root is index 0; it is never a
:class:`Token`, may appear as an arc head, and never as a dependent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Union

ROOT = 0
UA = "UA"


class TreeError(ValueError):
    """Base class for structural errors raised by this package."""


class InvalidTreeError(TreeError):
    def __init__(self, violations: Sequence["Violation"]):
        self.violations = list(violations)
        super().__init__("invalid dependency tree: " + "; ".join(map(str, self.violations)))


class NonProjectiveError(TreeError):
    def __init__(self, pairs: Sequence[tuple[tuple[int, int], tuple[int, int]]]):
        self.pairs = list(pairs)
        self.pair = self.pairs[0]
        shown = ", ".join(f"{a}x{b}" for a, b in self.pairs)
        super().__init__(f"non-projective tree: crossing arc spans {shown}")


class MalformedTreeError(TreeError):
    """An ordered tree breaks surface order, contiguity or anchoring."""


@dataclass(frozen=True)
class Token:
    index: int
    form: str
    upos: Optional[str] = None


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    comments: tuple[str, ...] = ()

    @classmethod
    def from_forms(cls, forms: Iterable[str], upos: Optional[Iterable[Optional[str]]] = None) -> "Sentence":
        forms = list(forms)
        tags = list(upos) if upos is not None else [None] * len(forms)
        return cls(tuple(Token(i, f, t) for i, (f, t) in enumerate(zip(forms, tags), start=1)))

    def __len__(self) -> int:
        return len(self.tokens)

    def form(self, index: int) -> str:
        return "root" if index == ROOT else self.tokens[index - 1].form

    @property
    def forms(self) -> list[str]:
        return [t.form for t in self.tokens]


@dataclass(frozen=True, order=True)
class Arc:
    head: int
    dependent: int
    label: str

    def span(self) -> tuple[int, int]:
        return (min(self.head, self.dependent), max(self.head, self.dependent))


@dataclass(frozen=True)
class DependencyTree:
    """A sentence plus its arcs, kept sorted by dependent.

    Construction never fails on structural problems; use :func:`validate`.
    """

    sentence: Sentence
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs, key=lambda a: (a.dependent, a.head, a.label))))

    @classmethod
    def from_heads(
        cls,
        heads: Sequence[int],
        labels: Optional[Sequence[str]] = None,
        forms: Optional[Sequence[str]] = None,
        upos: Optional[Sequence[Optional[str]]] = None,
    ) -> "DependencyTree":
        """Build a tree from 1-based parallel lists; ``heads[k]`` is the head of token k+1."""
        n = len(heads)
        if labels is None:
            labels = ["root" if h == ROOT else "dep" for h in heads]
        if forms is None:
            forms = [f"w{i}" for i in range(1, n + 1)]
        sentence = Sentence.from_forms(forms, upos)
        arcs = tuple(Arc(h, d, lab) for d, (h, lab) in enumerate(zip(heads, labels), start=1))
        return cls(sentence, arcs)

    def __len__(self) -> int:
        return len(self.sentence)

    @property
    def heads(self) -> list[int]:
        """Head per token (position k holds the head of token k+1). Assumes single-headedness."""
        out = [ROOT] * len(self)
        for a in self.arcs:
            out[a.dependent - 1] = a.head
        return out

    @property
    def labels(self) -> list[str]:
        out = [""] * len(self)
        for a in self.arcs:
            out[a.dependent - 1] = a.label
        return out

    def arc_of(self, dependent: int) -> Arc:
        return self.arcs[dependent - 1]

    def dependents(self) -> dict[int, list[int]]:
        """Adjacency lists, dependents sorted increasingly, for every index 0..n."""
        deps: dict[int, list[int]] = {i: [] for i in range(len(self) + 1)}
        for a in self.arcs:
            deps[a.head].append(a.dependent)
        for v in deps.values():
            v.sort()
        return deps

    @property
    def root(self) -> int:
        return next(a.dependent for a in self.arcs if a.head == ROOT)

    def with_heads_labels(self, heads: Sequence[int], labels: Sequence[str]) -> "DependencyTree":
        arcs = tuple(Arc(h, d, lab) for d, (h, lab) in enumerate(zip(heads, labels), start=1))
        return DependencyTree(self.sentence, arcs)


class Violation(NamedTuple):
    rule: str
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.rule} at {list(self.indices)}"


def validate(tree: DependencyTree) -> list[Violation]:
    """Return every well-formedness violation; an empty list means the tree is valid."""
    n = len(tree)
    out: list[Violation] = []
    if n == 0:
        return [Violation("empty-sentence", ())]
    bad_tokens = [i for i, t in enumerate(tree.sentence.tokens, start=1) if t.index != i]
    if bad_tokens:
        out.append(Violation("token-index-gap", tuple(bad_tokens)))

    incoming: dict[int, int] = {}
    heads: dict[int, int] = {}
    for a in tree.arcs:
        if not 1 <= a.dependent <= n:
            out.append(Violation("dependent-out-of-range", (a.dependent,)))
            continue
        if not 0 <= a.head <= n:
            out.append(Violation("head-out-of-range", (a.dependent, a.head)))
            continue
        if a.head == a.dependent:
            out.append(Violation("self-loop", (a.dependent,)))
            continue
        incoming[a.dependent] = incoming.get(a.dependent, 0) + 1
        heads[a.dependent] = a.head

    missing = tuple(d for d in range(1, n + 1) if d not in incoming)
    if missing:
        out.append(Violation("no-head", missing))
    multi = tuple(d for d, c in sorted(incoming.items()) if c > 1)
    if multi:
        out.append(Violation("multiple-heads", multi))

    roots = tuple(sorted(d for d, h in heads.items() if h == ROOT))
    if not roots:
        out.append(Violation("no-root-arc", ()))
    elif len(roots) > 1:
        out.append(Violation("multiple-root-arcs", roots))

    # Any token whose head chain never reaches 0 lies on or leads into a cycle.
    if not multi:
        state = {ROOT: 2}  # 1 = on current path, 2 = reaches root
        cycles: set[int] = set()
        for start in range(1, n + 1):
            path: list[int] = []
            v: Optional[int] = start
            while v is not None and v not in state:
                state[v] = 1
                path.append(v)
                v = heads.get(v)
            reaches = v is not None and state[v] == 2
            if v is not None and state[v] == 1:
                cycles.update(path[path.index(v):])
            for p in path:
                state[p] = 2 if reaches else 3
        if cycles:
            out.append(Violation("cycle", tuple(sorted(cycles))))
        detached = tuple(d for d in range(1, n + 1) if state.get(d) == 3 and d not in cycles and d in heads)
        if detached:
            out.append(Violation("unreachable", detached))
    return out


def require_valid(tree: DependencyTree) -> None:
    violations = validate(tree)
    if violations:
        raise InvalidTreeError(violations)


def descendant_sets(tree: DependencyTree) -> list[set[int]]:
    """Descendants (inclusive) for every index 0..n; the tree must be valid."""
    n = len(tree)
    heads = [ROOT] + tree.heads
    desc: list[set[int]] = [{i} for i in range(n + 1)]
    for d in range(1, n + 1):
        v = d
        while v != ROOT:
            v = heads[v]
            desc[v].add(d)
    return desc


def nonprojective_arcs(heads: Sequence[int]) -> list[tuple[int, int]]:
    """(head, dependent) pairs whose span holds an index that does not descend from the head.

    ``heads[d]`` is the head of token d and ``heads[0]`` is ignored. Descent
    is tested with Euler-tour entry times; a sparse table answers the
    min/max entry time inside each span, so the whole check is O(n log n).
    """
    n = len(heads) - 1
    children: list[list[int]] = [[] for _ in range(n + 1)]
    for d in range(1, n + 1):
        children[heads[d]].append(d)
    tin = [0] * (n + 1)
    tout = [0] * (n + 1)
    clock = 0
    stack = [(ROOT, False)]
    while stack:
        v, done = stack.pop()
        if done:
            tout[v] = clock
            continue
        tin[v] = clock
        clock += 1
        stack.append((v, True))
        stack.extend((c, False) for c in reversed(children[v]))

    lo_table = [tin[:]]
    hi_table = [tin[:]]
    width = 1
    while 2 * width <= n + 1:
        prev_lo, prev_hi = lo_table[-1], hi_table[-1]
        lo_table.append([min(prev_lo[i], prev_lo[i + width]) for i in range(n + 2 - 2 * width)])
        hi_table.append([max(prev_hi[i], prev_hi[i + width]) for i in range(n + 2 - 2 * width)])
        width *= 2

    out = []
    for d in range(1, n + 1):
        h = heads[d]
        a, b = min(h, d) + 1, max(h, d) - 1
        if a > b:
            continue
        level = (b - a + 1).bit_length() - 1
        first, last = lo_table[level], hi_table[level]
        lo = min(first[a], first[b - (1 << level) + 1])
        hi = max(last[a], last[b - (1 << level) + 1])
        if lo < tin[h] or hi >= tout[h]:
            out.append((h, d))
    return out


def is_projective(tree: DependencyTree) -> bool:
    """Every index strictly inside an arc's span must descend from the arc's head."""
    require_valid(tree)
    return not nonprojective_arcs([ROOT] + tree.heads)


ArcPair = tuple[tuple[int, int], tuple[int, int]]


def crossing_pairs(tree: DependencyTree) -> list[ArcPair]:
    """All pairs of arc spans (a, b), (c, d) with a < c < b < d, root arc included."""
    require_valid(tree)
    spans = sorted(a.span() for a in tree.arcs)
    out = []
    for i, (a, b) in enumerate(spans):
        for c, d in spans[i + 1:]:
            if c >= b:
                break
            if a < c < b < d:
                out.append(((a, b), (c, d)))
    return out


# Ordered trees ---------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    index: int
    form: str


@dataclass(frozen=True)
class Node:
    """Internal node anchored at token ``anchor``, labelled with the anchor's relation."""

    label: str
    anchor: int
    children: tuple[Union["Node", Leaf], ...] = field(default=())


OrderedTree = Union[Node, Leaf]


def iter_nodes(tree: OrderedTree) -> Iterator[tuple[tuple[int, ...], OrderedTree]]:
    """Pre-order (path, node) pairs; the path lists child positions from the root."""
    stack: list[tuple[tuple[int, ...], OrderedTree]] = [((), tree)]
    while stack:
        path, node = stack.pop()
        yield path, node
        if isinstance(node, Node):
            for k in range(len(node.children) - 1, -1, -1):
                stack.append((path + (k,), node.children[k]))


def walk(tree: OrderedTree) -> Iterator[OrderedTree]:
    """Pre-order traversal without path bookkeeping."""
    stack = [tree]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Node):
            stack.extend(reversed(node.children))


def leaves(tree: OrderedTree) -> list[Leaf]:
    return [n for n in walk(tree) if isinstance(n, Leaf)]


def relabel(tree: DependencyTree, label: str = UA) -> DependencyTree:
    """Replace every non-root label, as in the unlabeled-arc rendering."""
    arcs = tuple(a if a.head == ROOT else Arc(a.head, a.dependent, label) for a in tree.arcs)
    return DependencyTree(tree.sentence, arcs)
