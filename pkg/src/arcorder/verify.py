"""Generators and brute-force oracles for checking the tree correspondence."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Callable, Iterator, NamedTuple

from .builder import build
from .core import ROOT, DependencyTree, Leaf, Node, crossing_pairs, is_projective, validate
from .mapped import execute_mapped
from .oracle import derive, execute_plain
from .recover import recover

LABELS = ("nsubj", "obj", "det", "amod", "advmod", "case")
TAGS = ("NOUN", "VERB", "DET", "ADJ", "ADP")
MAX_ENUM = 6
MAX_SEARCH = 5


def _random_forms(rng: random.Random, n: int) -> tuple[list[str], list[str]]:
    return [f"w{i}" for i in range(1, n + 1)], [rng.choice(TAGS) for _ in range(n)]


def _random_labels(rng: random.Random, heads: list[int]) -> list[str]:
    return ["root" if h == ROOT else rng.choice(LABELS) for h in heads]


def _uniform_heads(rng: random.Random, n: int) -> list[int]:
    """Uniform over the n**(n-1) rooted trees on n tokens (Prüfer code plus a root)."""
    if n == 1:
        return [ROOT]
    code = [rng.randint(1, n) for _ in range(n - 2)]
    degree = [1] * (n + 1)
    for v in code:
        degree[v] += 1
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for v in code:
        leaf = min(u for u in range(1, n + 1) if degree[u] == 1)
        adj[leaf].append(v)
        adj[v].append(leaf)
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = (x for x in range(1, n + 1) if degree[x] == 1)
    adj[u].append(w)
    adj[w].append(u)

    root = rng.randint(1, n)
    heads = [0] * (n + 1)
    seen = {root}
    todo = [root]
    while todo:
        v = todo.pop()
        for c in adj[v]:
            if c not in seen:
                seen.add(c)
                heads[c] = v
                todo.append(c)
    return heads[1:]


def _projective_heads(rng: random.Random, n: int) -> list[int]:
    """Random projective tree: pick a head in each span, cut the sides into contiguous blocks."""
    heads = [0] * (n + 1)
    todo = [(1, n, ROOT)]
    while todo:
        lo, hi, parent = todo.pop()
        h = rng.randint(lo, hi)
        heads[h] = parent
        for a, b in ((lo, h - 1), (h + 1, hi)):
            start = a
            for k in range(a, b + 1):
                if k == b or rng.random() < 0.5:
                    todo.append((start, k, h))
                    start = k + 1
    return heads[1:]


def gen_random_tree(n: int, seed: int, projective_only: bool = False) -> DependencyTree:
    """Deterministic in ``(n, seed)``.

    Unrestricted trees are uniform over rooted trees. Projective trees are
    drawn by recursive span splitting, which is biased but always
    projective; rejection sampling is hopeless beyond n ~ 8.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(f"{n}/{seed}/{int(projective_only)}")
    heads = _projective_heads(rng, n) if projective_only else _uniform_heads(rng, n)
    forms, tags = _random_forms(rng, n)
    tree = DependencyTree.from_heads(heads, _random_labels(rng, heads), forms, tags)
    assert not validate(tree)
    if projective_only:
        assert is_projective(tree)
    return tree


def random_trees(count: int, max_n: int, seed: int, projective_only: bool = False) -> Iterator[DependencyTree]:
    rng = random.Random(seed)
    for k in range(count):
        yield gen_random_tree(rng.randint(1, max_n), rng.getrandbits(32), projective_only)


def _is_tree(heads: tuple[int, ...]) -> bool:
    if heads.count(ROOT) != 1:
        return False
    for d in range(1, len(heads) + 1):
        v, steps = d, 0
        while v != ROOT:
            v = heads[v - 1]
            steps += 1
            if steps > len(heads):
                return False
    return True


def enumerate_trees(n: int) -> list[DependencyTree]:
    """Every single-headed tree over n tokens (labels ``root``/``dep``)."""
    if not 1 <= n <= MAX_ENUM:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_ENUM}")
    out = []
    for heads in itertools.product(range(n + 1), repeat=n):
        if any(h == d for d, h in enumerate(heads, start=1)):
            continue
        if _is_tree(heads):
            out.append(DependencyTree.from_heads(list(heads)))
    return out


def _compositions(lo: int, hi: int) -> Iterator[list[tuple[int, int]]]:
    """All ways to cut [lo, hi] into consecutive nonempty blocks."""
    if lo > hi:
        yield []
        return
    inner = hi - lo
    for mask in range(1 << inner):
        blocks, start = [], lo
        for k in range(inner):
            if mask >> k & 1:
                blocks.append((start, lo + k))
                start = lo + k + 1
        blocks.append((start, hi))
        yield blocks


@lru_cache(maxsize=None)
def _representations(lo: int, hi: int) -> tuple[Node, ...]:
    out = []
    for anchor in range(lo, hi + 1):
        for left in _compositions(lo, anchor - 1):
            for right in _compositions(anchor + 1, hi):
                pools = [_representations(a, b) for a, b in left + right]
                for picks in itertools.product(*pools):
                    k = len(left)
                    children = picks[:k] + (Leaf(anchor, f"w{anchor}"),) + picks[k:]
                    out.append(Node("dep", anchor, children))
    return tuple(out)


def representations(n: int) -> list[Node]:
    """All anchored ordered trees over leaves 1..n with contiguous yields, in canonical form."""
    if not 1 <= n <= MAX_SEARCH:
        raise ValueError(f"representation search supports 1 <= n <= {MAX_SEARCH}")
    return [Node("root", t.anchor, t.children) for t in _representations(1, n)]


@lru_cache(maxsize=None)
def _representable_heads(n: int) -> frozenset:
    return frozenset(tuple(recover(t).heads) for t in representations(n))


def exists_contiguous_representation(tree: DependencyTree) -> bool:
    """Brute force: does some contiguous anchored ordered tree decode to these heads?"""
    if validate(tree):
        raise ValueError("tree must be valid")
    return tuple(tree.heads) in _representable_heads(len(tree))


class CheckResult(NamedTuple):
    name: str
    passed: bool
    cases: int
    detail: str = ""


def _check(name: str, trees, prop: Callable[[DependencyTree], bool]) -> CheckResult:
    cases = 0
    for tree in trees:
        cases += 1
        if not prop(tree):
            return CheckResult(name, False, cases, f"counterexample heads={tree.heads} labels={tree.labels}")
    return CheckResult(name, True, cases)


def run_selftest(max_n: int = MAX_SEARCH) -> list[CheckResult]:
    """Exhaustive checks of the characterization, correspondence and recovery claims."""
    every = [t for n in range(1, max_n + 1) for t in enumerate_trees(n)]
    projective = [t for t in every if is_projective(t)]
    results = [
        _check("characterization", every, lambda t: exists_contiguous_representation(t) == is_projective(t)),
        _check("crossing-agrees", every, lambda t: (not crossing_pairs(t)) == is_projective(t)),
        _check("plain-roundtrip", projective, lambda t: execute_plain(t.sentence, derive(t)) == t),
        _check("correspondence", projective, lambda t: execute_mapped(t.sentence, derive(t)) == build(t)),
        _check("recover-build", projective, lambda t: recover(build(t), t.sentence) == t),
        _check("recover-mapped", projective, lambda t: recover(execute_mapped(t.sentence, derive(t)), t.sentence) == t),
    ]
    return results
