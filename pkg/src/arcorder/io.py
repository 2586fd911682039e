"""CoNLL-U, bracketed ordered trees and derivation traces."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Optional, Sequence, Union

from .core import ROOT, Arc, DependencyTree, Leaf, Node, OrderedTree, Sentence, Token, TreeError, validate
from .mapped import Anchored, BareLeaf, as_ordered, run_mapped
from .oracle import LEFTARC, SHIFT, Transition, run_plain


class FormatError(TreeError):
    pass


# CoNLL-U ---------------------------------------------------------------------


@dataclass
class ConlluSentence:
    """One sentence block: the tree (None if unparseable) and what went wrong."""

    number: int
    tree: Optional[DependencyTree]
    diagnostics: list[str] = field(default_factory=list)

    @property
    def sent_id(self) -> str:
        if self.tree is not None:
            for c in self.tree.sentence.comments:
                m = re.match(r"#\s*sent_id\s*=\s*(.*)", c)
                if m:
                    return m.group(1).strip()
        return str(self.number)


def _blocks(stream: Iterable[str]) -> Iterator[list[str]]:
    block: list[str] = []
    for line in stream:
        line = line.rstrip("\r\n")
        if line.strip():
            block.append(line)
        elif block:
            yield block
            block = []
    if block:
        yield block


def _parse_block(number: int, lines: list[str]) -> ConlluSentence:
    out = ConlluSentence(number, None)
    comments, tokens, arcs = [], [], []
    for lineno, line in enumerate(lines, start=1):
        if line.startswith("#"):
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            out.diagnostics.append(f"line {lineno}: expected 10 columns, found {len(cols)}")
            return out
        tid, form, _lemma, upos, _xpos, _feats, head, deprel = cols[:8]
        if "-" in tid or "." in tid:
            out.diagnostics.append(f"line {lineno}: skipped {'multiword token' if '-' in tid else 'empty node'} {tid}")
            continue
        try:
            index, head_index = int(tid), int(head)
        except ValueError:
            out.diagnostics.append(f"line {lineno}: non-integer ID or HEAD ({tid!r}, {head!r})")
            return out
        tokens.append(Token(index, form, None if upos == "_" else upos))
        arcs.append(Arc(head_index, index, deprel))
    tree = DependencyTree(Sentence(tuple(tokens), tuple(comments)), tuple(arcs))
    out.diagnostics.extend(f"invalid tree: {v}" for v in validate(tree))
    out.tree = tree
    return out


def iter_conllu(stream: Iterable[str]) -> Iterator[ConlluSentence]:
    """Stream sentence blocks one at a time."""
    for number, block in enumerate(_blocks(stream), start=1):
        yield _parse_block(number, block)


def read_conllu(stream: Union[str, Iterable[str]]) -> tuple[list[DependencyTree], list[ConlluSentence]]:
    """Parse a whole CoNLL-U text.

    Returns the parsed trees (structurally invalid ones included, since they
    parse) and the per-sentence records that carry diagnostics. Blocks that
    cannot be parsed are left out of the tree list.
    """
    if isinstance(stream, str):
        stream = stream.splitlines()
    trees, problems = [], []
    for sent in iter_conllu(stream):
        if sent.tree is not None:
            trees.append(sent.tree)
        if sent.diagnostics:
            problems.append(sent)
    return trees, problems


def _field(value: Optional[str], what: str) -> str:
    if value is None or value == "":
        return "_"
    if any(c in value for c in "\t\n\r"):
        raise FormatError(f"{what} {value!r} contains a tab or newline")
    return value


def format_conllu(tree: DependencyTree) -> str:
    violations = validate(tree)
    if violations:
        raise FormatError(f"refusing to write invalid tree: {violations}")
    lines = [c for c in tree.sentence.comments]
    for tok, arc in zip(tree.sentence.tokens, tree.arcs):
        form = _field(tok.form, "form")
        lines.append(
            "\t".join(
                [str(tok.index), form, "_", _field(tok.upos, "upos"), "_", "_", str(arc.head), _field(arc.label, "label"), "_", "_"]
            )
        )
    return "\n".join(lines) + "\n\n"


def write_conllu(trees: Iterable[DependencyTree], out: Optional[IO[str]] = None) -> str:
    text_parts = []
    for tree in trees:
        block = format_conllu(tree)
        if out is not None:
            out.write(block)
        else:
            text_parts.append(block)
    return "".join(text_parts)


# Brackets --------------------------------------------------------------------

_ESCAPES = {"(": "-LRB-", ")": "-RRB-"}
_UNESCAPES = {v: k for k, v in _ESCAPES.items()}


def _escape(form: str) -> str:
    if not form or any(c.isspace() for c in form):
        raise FormatError(f"form {form!r} cannot be written in bracket form")
    return "".join(_ESCAPES.get(c, c) for c in form)


def _unescape(text: str) -> str:
    for escaped, raw in _UNESCAPES.items():
        text = text.replace(escaped, raw)
    return text


def write_brackets(tree: OrderedTree, with_pos: bool = False, sentence: Optional[Sentence] = None) -> str:
    """``(LABEL child ...)`` with uppercased labels; leaves as FORM or FORM/UPOS.

    ``with_pos`` needs ``sentence`` to supply the tags.
    """
    if with_pos and sentence is None:
        raise ValueError("with_pos requires the sentence for its tags")
    parts: list[str] = []
    # Explicit work stack of (kind, node) so deep trees do not recurse.
    todo: list[tuple[str, Optional[OrderedTree]]] = [("node", tree)]
    while todo:
        kind, node = todo.pop()
        if kind == "close":
            parts.append(")")
            continue
        if kind == "space":
            parts.append(" ")
            continue
        if isinstance(node, Leaf):
            text = _escape(node.form)
            if with_pos:
                pos = sentence.tokens[node.index - 1].upos
                text = f"{text}/{pos or '_'}"
            parts.append(text)
            continue
        label = node.label.upper()
        if not label or any(c.isspace() or c in "()" for c in label):
            raise FormatError(f"label {node.label!r} cannot be written in bracket form")
        parts.append("(" + label)
        todo.append(("close", None))
        for child in reversed(node.children):
            todo.append(("node", child))
            todo.append(("space", None))
    return "".join(parts)


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def read_brackets(text: str, with_pos: bool = False) -> Node:
    """Parse one bracketed tree; leaves are numbered left to right from 1.

    Node anchors are taken from each node's single direct leaf (0 if there
    is none; :func:`~arcorder.recover.recover` rejects such trees). With
    ``with_pos`` the tag after the last ``/`` of each leaf is dropped.
    """
    stack: list[tuple[str, list, int]] = []
    result: Optional[Node] = None
    leaf_count = 0
    expect_label = False
    for m in _TOKEN.finditer(text):
        tok, pos = m.group(), m.start()
        if result is not None:
            raise FormatError(f"position {pos}: trailing text after the tree")
        if tok == "(":
            if expect_label:
                raise FormatError(f"position {pos}: missing label")
            expect_label = True
            stack.append(("", [], pos))
        elif tok == ")":
            if expect_label:
                raise FormatError(f"position {pos}: empty node")
            if not stack:
                raise FormatError(f"position {pos}: unbalanced ')'")
            label, children, start = stack.pop()
            if not children:
                raise FormatError(f"position {start}: node {label!r} has no children")
            lex = [c.index for c in children if isinstance(c, Leaf)]
            node = Node(label, lex[0] if len(lex) == 1 else 0, tuple(children))
            if stack:
                stack[-1][1].append(node)
            else:
                result = node
        elif expect_label:
            expect_label = False
            label, children, start = stack.pop()
            stack.append((tok, children, start))
        else:
            if not stack:
                raise FormatError(f"position {pos}: leaf outside of any node")
            if with_pos:
                tok = tok.rpartition("/")[0] or tok
            leaf_count += 1
            stack[-1][1].append(Leaf(leaf_count, _unescape(tok)))
    if stack or result is None:
        raise FormatError(f"position {len(text)}: unbalanced '(' or empty input")
    return result


# Traces ----------------------------------------------------------------------

_PRIME = "′"


def _relation(sentence: Sentence, action: Transition, stack_before: Sequence[int]) -> str:
    if action.kind == SHIFT:
        return ""
    i, j = stack_before[-2], stack_before[-1]
    if i == ROOT:
        return f"(ROOT → {sentence.form(j)})"
    if action.kind == LEFTARC:
        return f"({sentence.form(i)} ← {sentence.form(j)})"
    return f"({sentence.form(i)} → {sentence.form(j)})"


def _tname(item, sentence: Sentence) -> str:
    if isinstance(item, BareLeaf):
        return f"t_{item.form}"
    if isinstance(item, Anchored):
        return f"t{_PRIME * item.revision}_{sentence.form(item.anchor)}"
    return "root"


def write_trace(sentence: Sentence, derivation: Sequence[Transition], mode: str = "plain") -> str:
    """Tab-separated step / stack / buffer / action / relation rows, ending with ``done``."""
    if mode not in ("plain", "mapped"):
        raise ValueError(f"unknown trace mode {mode!r}")
    plain = run_plain(len(sentence), derivation)
    mapped = run_mapped(sentence, derivation) if mode == "mapped" else None
    rows = []
    for k, config in enumerate(plain):
        if mapped is not None:
            stack = ", ".join(_tname(item, sentence) for item in mapped[k].stack)
        else:
            stack = ", ".join(sentence.form(i) for i in config.stack)
        buffer = ", ".join(sentence.form(i) for i in config.buffer)
        if k < len(derivation):
            action = derivation[k]
            rows.append(f"{k}\t{stack}\t{buffer}\t{action}\t{_relation(sentence, action, config.stack)}")
        else:
            rows.append(f"{k}\t{stack}\t{buffer}\tdone\t")
    return "\n".join(rows) + "\n"


def snapshot(item) -> str:
    """Bracketed view of a partial tree, pending labels shown as UA."""
    return write_brackets(as_ordered(item))


def write_derivation(derivation: Iterable[Transition]) -> str:
    return "".join(f"{t}\n" for t in derivation)


def read_derivation(text: str) -> list[Transition]:
    return [Transition.parse(line) for line in text.splitlines() if line.strip()]

