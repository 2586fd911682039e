"""Command-line front end over CoNLL-U streams.

Exit status: 0 success, 1 contract failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from typing import IO, Iterator, Optional

from . import io as formats
from .builder import build
from .core import DependencyTree, NonProjectiveError, Sentence, TreeError, is_projective, relabel, validate
from .mapped import execute_mapped
from .oracle import derive
from .pproj import SEP, delift_report, lift
from .recover import recover
from .verify import run_selftest

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@contextlib.contextmanager
def _open(path: str) -> Iterator[IO[str]]:
    if path == "-":
        yield sys.stdin
        return
    try:
        handle = open(path, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    with handle:
        yield handle


def _warn(msg: str) -> None:
    print(msg, file=sys.stderr)


def _sentences(path: str) -> Iterator[formats.ConlluSentence]:
    with _open(path) as handle:
        yield from formats.iter_conllu(handle)


def _usable(sent: formats.ConlluSentence) -> Optional[DependencyTree]:
    """The tree if it parsed and validates; reports the problem otherwise."""
    if sent.tree is None or validate(sent.tree):
        _warn(f"{sent.sent_id}: invalid: {'; '.join(sent.diagnostics)}")
        return None
    return sent.tree


def _prepare(tree: DependencyTree, args) -> DependencyTree:
    if args.lift:
        return lift(tree, args.mark_sep)
    return tree


def cmd_validate(args, out: IO[str]) -> int:
    bad = 0
    for sent in _sentences(args.input):
        invalid = sent.tree is None or bool(validate(sent.tree))
        bad += invalid
        status = "invalid" if invalid else "ok"
        detail = "; ".join(sent.diagnostics)
        out.write(f"{sent.sent_id}\t{status}" + (f"\t{detail}" if detail else "") + "\n")
    return EXIT_FAIL if bad else EXIT_OK


def cmd_projectivity(args, out: IO[str]) -> int:
    counts = {"projective": 0, "non-projective": 0, "invalid": 0}
    for sent in _sentences(args.input):
        if sent.tree is None or validate(sent.tree):
            verdict = "invalid"
        else:
            verdict = "projective" if is_projective(sent.tree) else "non-projective"
        counts[verdict] += 1
        out.write(f"{sent.sent_id}\t{verdict}\n")
    out.write("# " + " ".join(f"{k}={v}" for k, v in counts.items()) + "\n")
    return EXIT_OK


def cmd_derive(args, out: IO[str]) -> int:
    failed = 0
    for sent in _sentences(args.input):
        tree = _usable(sent)
        if tree is None:
            failed += 1
            continue
        tree = _prepare(tree, args)
        try:
            derivation = derive(tree)
        except NonProjectiveError as exc:
            _warn(f"{sent.sent_id}: {exc} (use --lift)")
            failed += 1
            continue
        out.write(f"# sent_id = {sent.sent_id}\n")
        if args.trace:
            out.write(formats.write_trace(tree.sentence, derivation, args.trace))
        else:
            out.write(formats.write_derivation(derivation))
        out.write("\n")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_build(args, out: IO[str]) -> int:
    failed = 0
    for sent in _sentences(args.input):
        tree = _usable(sent)
        if tree is None:
            failed += 1
            continue
        tree = _prepare(tree, args)
        if args.ua:
            tree = relabel(tree)
        try:
            ordered = build(tree)
            out.write(formats.write_brackets(ordered, args.pos, tree.sentence) + "\n")
        except TreeError as exc:
            _warn(f"{sent.sent_id}: {exc}")
            failed += 1
    return EXIT_FAIL if failed else EXIT_OK


def _read_sentences(path: str) -> list[Optional[Sentence]]:
    """CoNLL-U if any line holds a tab, otherwise one whitespace-tokenized sentence per line."""
    with _open(path) as handle:
        lines = handle.read().splitlines()
    if any("\t" in line for line in lines):
        return [s.tree.sentence if s.tree is not None else None for s in formats.iter_conllu(lines)]
    return [Sentence.from_forms(line.split()) for line in lines if line.strip()]


def cmd_recover(args, out: IO[str]) -> int:
    with _open(args.input) as handle:
        lines = [line.strip() for line in handle if line.strip() and not line.startswith("#")]
    sentences: list[Optional[Sentence]] = [None] * len(lines)
    if args.sentences:
        sentences = _read_sentences(args.sentences)
        if len(sentences) != len(lines):
            raise UsageError(f"{args.input} has {len(lines)} trees but {args.sentences} has {len(sentences)} sentences")
    failed = 0
    for k, (line, sentence) in enumerate(zip(lines, sentences), start=1):
        try:
            tree = recover(formats.read_brackets(line, args.pos), sentence)
            if args.delift:
                report = delift_report(tree, args.mark_sep)
                tree = report.tree
                if report.unresolved:
                    _warn(f"{k}: unresolved lifts at tokens {report.unresolved}")
            out.write(formats.format_conllu(tree))
        except TreeError as exc:
            _warn(f"{k}: {exc}")
            failed += 1
    return EXIT_FAIL if failed else EXIT_OK


def _mismatches(a: DependencyTree, b: DependencyTree) -> int:
    return sum(1 for x, y in zip(a.arcs, b.arcs) if (x.head, x.label) != (y.head, y.label))


def cmd_roundtrip(args, out: IO[str]) -> int:
    total = exact = invalid = skipped = arc_errors = unresolved = 0
    contract_broken = False
    for sent in _sentences(args.input):
        total += 1
        tree = _usable(sent)
        if tree is None:
            invalid += 1
            out.write(f"{sent.sent_id}\tinvalid\n")
            continue
        projective = is_projective(tree)
        if not projective and not args.lift:
            skipped += 1
            out.write(f"{sent.sent_id}\tskipped-non-projective\n")
            continue
        try:
            work = lift(tree, args.mark_sep) if args.lift else tree
            decoded = recover(execute_mapped(work.sentence, derive(work)), tree.sentence)
            if args.lift:
                report = delift_report(decoded, args.mark_sep)
                decoded = report.tree
                unresolved += len(report.unresolved)
            wrong = _mismatches(tree, decoded)
        except TreeError as exc:
            _warn(f"{sent.sent_id}: {exc}")
            wrong = len(tree)
        arc_errors += wrong
        if wrong == 0:
            exact += 1
            out.write(f"{sent.sent_id}\texact\n")
        else:
            out.write(f"{sent.sent_id}\tmismatch\t{wrong}\n")
            contract_broken |= projective
    out.write(
        f"# sentences={total} exact={exact} arc_mismatches={arc_errors} "
        f"unresolved_lifts={unresolved} skipped_non_projective={skipped} invalid={invalid}\n"
    )
    return EXIT_FAIL if contract_broken else EXIT_OK


def cmd_selftest(args, out: IO[str]) -> int:
    ok = True
    for result in run_selftest(args.max_n):
        ok &= result.passed
        status = "PASS" if result.passed else "FAIL"
        out.write(f"{status}\t{result.name}\t{result.cases} trees" + (f"\t{result.detail}" if result.detail else "") + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arcorder", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help, source="input", source_help="CoNLL-U file, '-' for stdin"):
        p = sub.add_parser(name, help=help)
        if source:
            p.add_argument(source, help=source_help)
        p.set_defaults(func=func)
        return p

    def lifting(p, flag=True):
        if flag:
            p.add_argument("--lift", action="store_true", help="projectivize by pseudo-projective lifting first")
        p.add_argument("--mark-sep", default=SEP, help=f"separator in lifted labels (default {SEP}; '^' for ASCII)")

    command("validate", cmd_validate, "report per-sentence validity")
    command("projectivity", cmd_projectivity, "per-sentence projectivity and corpus counts")

    p = command("derive", cmd_derive, "emit the canonical arc-standard derivation")
    p.add_argument("--trace", choices=("plain", "mapped"), help="emit step-by-step traces instead")
    lifting(p)

    p = command("build", cmd_build, "emit the bracketed ordered tree per sentence")
    p.add_argument("--ua", action="store_true", help="replace non-root labels with UA")
    p.add_argument("--pos", action="store_true", help="write leaves as FORM/UPOS")
    lifting(p)

    p = command("recover", cmd_recover, "decode bracketed trees into CoNLL-U", source_help="bracket file, one tree per line")
    p.add_argument("--sentences", help="CoNLL-U or one-sentence-per-line forms supplying tokens")
    p.add_argument("--pos", action="store_true", help="leaves carry /UPOS suffixes")
    p.add_argument("--delift", action="store_true", help="undo pseudo-projective lifting")
    lifting(p, flag=False)

    p = command("roundtrip", cmd_roundtrip, "derive, execute, recover and compare with the input")
    lifting(p)

    p = command("selftest", cmd_selftest, "run the exhaustive correspondence checks", source=None)
    p.add_argument("--max-n", type=int, default=5, choices=range(1, 6), metavar="N", help="largest sentence length (1-5)")
    return parser


def main(argv: Optional[list[str]] = None, out: Optional[IO[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    out = out if out is not None else sys.stdout
    try:
        return args.func(args, out)
    except UsageError as exc:
        _warn(f"arcorder: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
