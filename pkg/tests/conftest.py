import pytest

from arcorder.core import DependencyTree

BOOK_FORMS = ["book", "me", "the", "morning", "flight"]
BOOK_TAGS = ["VB", "PRP", "DT", "NN", "NN"]
BOOK_HEADS = [0, 1, 5, 5, 1]
BOOK_LABELS = ["root", "iobj", "det", "compound", "dobj"]

BOOK_CONLLU = (
    "1\tbook\t_\tVB\t_\t_\t0\troot\t_\t_\n"
    "2\tme\t_\tPRP\t_\t_\t1\tiobj\t_\t_\n"
    "3\tthe\t_\tDT\t_\t_\t5\tdet\t_\t_\n"
    "4\tmorning\t_\tNN\t_\t_\t5\tcompound\t_\t_\n"
    "5\tflight\t_\tNN\t_\t_\t1\tdobj\t_\t_\n"
    "\n"
)

BOOK_BRACKETS = "(ROOT book/VB (IOBJ me/PRP) (DOBJ (DET the/DT) (COMPOUND morning/NN) flight/NN))"
BOOK_UA_BRACKETS = "(ROOT book (UA me) (UA (UA the) (UA morning) flight))"

# heads {1->3, 2->4, 3->0, 4->3}
CROSSING_HEADS = [3, 4, 0, 3]


def book_tree() -> DependencyTree:
    return DependencyTree.from_heads(BOOK_HEADS, BOOK_LABELS, BOOK_FORMS, BOOK_TAGS)


@pytest.fixture
def book() -> DependencyTree:
    return book_tree()


@pytest.fixture
def crossing() -> DependencyTree:
    return DependencyTree.from_heads(CROSSING_HEADS, ["a", "b", "root", "c"])
