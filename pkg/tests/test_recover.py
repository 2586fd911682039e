import random

import pytest

from arcorder.builder import build
from arcorder.core import Arc, Leaf, MalformedTreeError, Node, Sentence, is_projective
from arcorder.io import read_brackets
from arcorder.mapped import execute_mapped
from arcorder.oracle import derive
from arcorder.recover import anchor_of, recover
from arcorder.verify import enumerate_trees, gen_random_tree, representations

from conftest import BOOK_BRACKETS, BOOK_UA_BRACKETS


def test_book_brackets_give_book_arcs(book):
    recovered = recover(build(book), book.sentence)
    assert recovered == book
    assert set(recovered.arcs) == {
        Arc(0, 1, "root"),
        Arc(1, 2, "iobj"),
        Arc(5, 3, "det"),
        Arc(5, 4, "compound"),
        Arc(1, 5, "dobj"),
    }


def test_single_node():
    assert recover(Node("ROOT", 1, (Leaf(1, "w1"),))).arcs == (Arc(0, 1, "ROOT"),)


def test_unlabeled_tree(book):
    recovered = recover(read_brackets(BOOK_UA_BRACKETS), book.sentence)
    assert recovered == book.with_heads_labels(book.heads, ["ROOT", "UA", "UA", "UA", "UA"])


def test_bracket_text_with_pos(book):
    recovered = recover(read_brackets(BOOK_BRACKETS, with_pos=True), book.sentence)
    assert recovered.heads == book.heads
    assert recovered.labels == [lab.upper() for lab in book.labels]


def test_anchor_of(book):
    assert anchor_of(build(book).children[2]) == 5
    assert anchor_of(Leaf(3, "x")) == 3
    with pytest.raises(MalformedTreeError):
        anchor_of(Node("X", 1, (Leaf(1, "a"), Leaf(2, "b"))))


@pytest.mark.parametrize(
    "tree",
    [
        Node("R", 1, (Leaf(1, "a"), Leaf(2, "b"))),  # two direct leaves
        Node("R", 1, (Node("X", 2, (Leaf(2, "b"),)),)),  # no direct leaf
        Node("R", 2, (Leaf(1, "a"), Node("X", 2, (Leaf(2, "b"),)))),  # declared anchor disagrees
        Node("R", 1, (Leaf(1, "a"), Node("X", 3, (Leaf(3, "c"),)))),  # leaves are not 1..n
        Node("R", 2, (Node("X", 1, (Leaf(1, "a"), Node("Y", 3, (Leaf(3, "c"),)))), Leaf(2, "b"))),  # gap
    ],
)
def test_malformed_trees_rejected(tree):
    with pytest.raises(MalformedTreeError):
        recover(tree)


def test_leaf_count_must_match_sentence(book):
    with pytest.raises(MalformedTreeError):
        recover(build(book), Sentence.from_forms(["a", "b"]))


@pytest.mark.parametrize("n", range(1, 6))
def test_exact_inversion_exhaustive(n):
    for tree in enumerate_trees(n):
        if is_projective(tree):
            assert recover(build(tree), tree.sentence) == tree
            assert recover(execute_mapped(tree.sentence, derive(tree)), tree.sentence) == tree


def test_exact_inversion_random():
    rng = random.Random(9)
    for _ in range(10_000):
        tree = gen_random_tree(rng.randint(1, 12), rng.getrandbits(32), True)
        out = recover(build(tree), tree.sentence)
        assert out == tree
        assert is_projective(out)


@pytest.mark.parametrize("n", range(1, 5))
def test_build_is_injective(n):
    projective = [t for t in enumerate_trees(n) if is_projective(t)]
    images = {build(t) for t in projective}
    assert len(images) == len(projective)
    # ...and onto the brute-force set of contiguous anchored trees.
    assert images == set(representations(n))
