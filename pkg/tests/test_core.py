import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from arcorder.core import (
    Arc,
    DependencyTree,
    InvalidTreeError,
    Sentence,
    crossing_pairs,
    descendant_sets,
    is_projective,
    validate,
)
from arcorder.verify import enumerate_trees, gen_random_tree


def brute_crossings(tree):
    """Independent oracle: test every pair of arcs for strict interleaving of endpoints."""
    spans = [tuple(sorted((a.head, a.dependent))) for a in tree.arcs]
    out = set()
    for s, t in itertools.combinations(spans, 2):
        (a, b), (c, d) = sorted([s, t])
        if a < c < b < d:
            out.add(((a, b), (c, d)))
    return out


def test_book_is_valid(book):
    assert validate(book) == []


def test_single_token_is_valid():
    assert validate(DependencyTree.from_heads([0])) == []


def test_two_cycle_reports_missing_root_and_cycle():
    tree = DependencyTree.from_heads([2, 1], ["x", "y"])
    rules = {v.rule: v.indices for v in validate(tree)}
    assert set(rules) == {"no-root-arc", "cycle"}
    assert rules["cycle"] == (1, 2)


def test_empty_sentence_rejected():
    tree = DependencyTree(Sentence(()), ())
    assert [v.rule for v in validate(tree)] == ["empty-sentence"]


@pytest.mark.parametrize(
    "arcs, rule",
    [
        ([Arc(0, 1, "root"), Arc(0, 2, "root")], "multiple-root-arcs"),
        ([Arc(0, 1, "root")], "no-head"),
        ([Arc(0, 1, "root"), Arc(1, 2, "x"), Arc(0, 2, "y")], "multiple-heads"),
        ([Arc(0, 1, "root"), Arc(2, 2, "x")], "self-loop"),
        ([Arc(0, 1, "root"), Arc(7, 2, "x")], "head-out-of-range"),
        ([Arc(0, 1, "root"), Arc(3, 2, "x"), Arc(2, 3, "x"), Arc(3, 4, "x")], "unreachable"),
    ],
)
def test_violation_rules(arcs, rule):
    sentence = Sentence.from_forms(["a", "b", "c", "d"][: max(2, max(a.dependent for a in arcs))])
    assert rule in {v.rule for v in validate(DependencyTree(sentence, tuple(arcs)))}


def test_projectivity_examples(book, crossing):
    assert is_projective(book)
    assert is_projective(DependencyTree.from_heads([0]))
    assert not is_projective(crossing)


def test_crossing_pairs_examples(book, crossing):
    assert crossing_pairs(book) == []
    # The root arc (0, 3) also interleaves with (2, 4).
    assert brute_crossings(crossing) == {((0, 3), (2, 4)), ((1, 3), (2, 4))}
    assert crossing_pairs(crossing) == [((0, 3), (2, 4)), ((1, 3), (2, 4))]
    assert crossing_pairs(DependencyTree.from_heads([0, 1])) == []


def test_root_arc_counts_as_a_span():
    # 2 is the root; the arc 3 -> 1 spans it, so (0,2) and (1,3) cross.
    tree = DependencyTree.from_heads([3, 0, 2])
    assert crossing_pairs(tree) == [((0, 2), (1, 3))]
    assert not is_projective(tree)


def test_precondition_breach_raises():
    bad = DependencyTree.from_heads([2, 1], ["x", "y"])
    with pytest.raises(InvalidTreeError):
        is_projective(bad)
    with pytest.raises(InvalidTreeError):
        crossing_pairs(bad)


@pytest.mark.parametrize("n", range(1, 6))
def test_two_definitions_agree_exhaustively(n):
    for tree in enumerate_trees(n):
        pairs = crossing_pairs(tree)
        assert set(pairs) == brute_crossings(tree)
        assert is_projective(tree) == (not pairs)


def test_two_definitions_agree_on_random_trees():
    rng = random.Random(11)
    for _ in range(10_000):
        tree = gen_random_tree(rng.randint(1, 12), rng.getrandbits(32))
        assert is_projective(tree) == (not crossing_pairs(tree))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 30), st.integers(0, 2**32))
def test_descendants_contain_every_token_below_root(n, seed):
    tree = gen_random_tree(n, seed)
    desc = descendant_sets(tree)
    assert desc[0] == set(range(n + 1))
    for a in tree.arcs:
        assert desc[a.dependent] <= desc[a.head]
