import io
import sys

import pytest

from arcorder.cli import main
from arcorder.io import read_conllu, write_conllu
from arcorder.verify import random_trees

from conftest import CROSSING_HEADS, BOOK_CONLLU, BOOK_BRACKETS, book_tree


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


@pytest.fixture
def book_file(tmp_path):
    path = tmp_path / "book.conllu"
    path.write_text(BOOK_CONLLU, encoding="utf-8")
    return str(path)


@pytest.fixture
def mixed_file(tmp_path):
    from arcorder.core import DependencyTree

    crossing = DependencyTree.from_heads(CROSSING_HEADS, ["a", "b", "root", "c"])
    path = tmp_path / "mixed.conllu"
    path.write_text(write_conllu([book_tree(), crossing]), encoding="utf-8")
    return str(path)


def test_build_pos(book_file):
    assert run(["build", "--pos", book_file]) == (0, BOOK_BRACKETS + "\n")


def test_build_ua(book_file):
    code, text = run(["build", "--ua", book_file])
    assert text == "(ROOT book (UA me) (UA (UA the) (UA morning) flight))\n"


def test_build_non_projective_fails(mixed_file, capsys):
    code, text = run(["build", mixed_file])
    assert code == 1 and text.count("\n") == 1
    assert "crossing" in capsys.readouterr().err


def test_derive_actions(book_file):
    code, text = run(["derive", book_file])
    assert code == 0
    assert text.splitlines()[0] == "# sent_id = 1"
    assert text.splitlines()[1:4] == ["SHIFT", "SHIFT", "RIGHTARC(iobj)"]


def test_derive_trace(book_file):
    code, text = run(["derive", "--trace", "mapped", book_file])
    rows = text.strip().splitlines()[1:]
    assert code == 0 and len(rows) == 11
    assert rows[3].split("\t")[1] == "root, t′_book"


def test_derive_needs_lift(mixed_file):
    assert run(["derive", mixed_file])[0] == 1
    assert run(["derive", "--lift", mixed_file])[0] == 0


def test_validate(book_file, tmp_path):
    assert run(["validate", book_file]) == (0, "1\tok\n")
    bad = tmp_path / "bad.conllu"
    bad.write_text("1\ta\t_\t_\t_\t_\t1\tx\t_\t_\n\n")
    code, text = run(["validate", str(bad)])
    assert code == 1 and "self-loop" in text


def test_projectivity_counts(mixed_file):
    code, text = run(["projectivity", mixed_file])
    assert code == 0
    assert text.splitlines()[-1] == "# projective=1 non-projective=1 invalid=0"


def test_roundtrip_projective_corpus(tmp_path):
    path = tmp_path / "proj.conllu"
    path.write_text(write_conllu(list(random_trees(200, 15, 7, True))))
    code, text = run(["roundtrip", str(path)])
    assert code == 0
    assert text.splitlines()[-1].startswith("# sentences=200 exact=200 arc_mismatches=0")


def test_roundtrip_lift(mixed_file):
    code, text = run(["roundtrip", mixed_file])
    assert code == 0 and "skipped-non-projective" in text
    code, text = run(["roundtrip", "--lift", mixed_file])
    assert code == 0 and "skipped_non_projective=0" in text


def test_recover_with_sentences(book_file, tmp_path):
    trees = tmp_path / "trees.txt"
    trees.write_text(BOOK_BRACKETS + "\n")
    code, text = run(["recover", "--pos", "--sentences", book_file, str(trees)])
    assert code == 0
    (tree,), _ = read_conllu(text)
    assert tree.sentence == book_tree().sentence
    assert tree.heads == book_tree().heads
    # Bracket labels are rendered uppercase, so case does not survive.
    assert tree.labels == [lab.upper() for lab in book_tree().labels]


def test_recover_forms_file(tmp_path):
    trees = tmp_path / "trees.txt"
    trees.write_text("(ROOT a (DEP b))\n")
    forms = tmp_path / "forms.txt"
    forms.write_text("x y\n")
    code, text = run(["recover", "--sentences", str(forms), str(trees)])
    assert code == 0 and "1\tx\t" in text


def test_recover_delift(tmp_path):
    from arcorder.core import DependencyTree

    crossing = DependencyTree.from_heads(CROSSING_HEADS, ["a", "b", "root", "c"])
    src = tmp_path / "c.conllu"
    src.write_text(write_conllu([crossing]))
    code, brackets = run(["build", "--lift", "--mark-sep", "^", str(src)])
    assert code == 0 and "^" in brackets
    trees = tmp_path / "t.txt"
    trees.write_text(brackets)
    code, text = run(["recover", "--delift", "--mark-sep", "^", str(trees)])
    assert code == 0
    assert read_conllu(text)[0][0].heads == CROSSING_HEADS


def test_recover_count_mismatch(book_file, tmp_path):
    trees = tmp_path / "trees.txt"
    trees.write_text(BOOK_BRACKETS + "\n" + BOOK_BRACKETS + "\n")
    assert run(["recover", "--pos", "--sentences", book_file, str(trees)])[0] == 2


def test_recover_malformed(tmp_path):
    trees = tmp_path / "trees.txt"
    trees.write_text("(ROOT a (DEP b c))\n")
    assert run(["recover", str(trees)])[0] == 1


def test_missing_file():
    assert run(["validate", "/nonexistent/file.conllu"])[0] == 2


def test_bad_usage():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_stdin(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(BOOK_CONLLU))
    assert run(["build", "-"])[0] == 0


def test_selftest():
    code, text = run(["selftest", "--max-n", "4"])
    assert code == 0
    assert len(text.splitlines()) == 6 and all(line.startswith("PASS") for line in text.splitlines())
