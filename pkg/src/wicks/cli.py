"""Command-line entry point: ``wicks <subcommand> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
Data goes to stdout (or ``--out``), diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import census as cen
from .canonical import automorphisms, canonicalize, detect_structures
from .corpus import list_examples, load_correction, load_example, verify_example
from .errors import LimitExceeded, MalformedWord, WicksError
from .hyperbolic import (CLOSURE_TOL, develop_polygon, holonomy_deviation, membership_residual,
                         project_to_variety, regular_lengths)
from .surface import build_ordered_graph, invariants, single_face_genus
from .transforms import ALL_MOVES, BASIC_MOVES, enumerate_genus
from .words import WORD_GRAMMAR, SignedWord, parse_word, validate_wicks

MAX_GENUS_LIMIT = 4
log = logging.getLogger("wicks")


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _read_word(path: str) -> SignedWord:
    text = " ".join(line.split("#", 1)[0] for line in _read_text(path).splitlines())
    try:
        return parse_word(text)
    except MalformedWord as exc:
        msg = str(exc)
        if WORD_GRAMMAR not in msg:
            msg += f"\nexpected format: {WORD_GRAMMAR}"
        raise UsageError(f"{path}: {msg}") from exc


def _read_lengths(path: str) -> np.ndarray:
    values = []
    for n, line in enumerate(_read_text(path).splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError as exc:
            raise UsageError(f"{path}:{n}: not a decimal number: {line!r}") from exc
    return np.array(values)


def _emit(obj, out: str | None = None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _positive(value: str) -> float:
    x = float(value)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return x


# -- subcommands ---------------------------------------------------------------


def cmd_validate(args) -> int:
    w = _read_word(args.word)
    report = validate_wicks(w)
    _emit(report.to_dict(w))
    return 0 if report.ok else 1


def cmd_canonicalize(args) -> int:
    w = _read_word(args.word)
    c = canonicalize(w)
    _emit({"canon": c.key, "aut": c.aut_order, "genus": c.genus, "length": c.length})
    return 0


def cmd_aut(args) -> int:
    w = _read_word(args.word)
    rots = automorphisms(w)
    s = detect_structures(w, args.order)
    out = {"aut_order": len(rots), "rotations": rots}
    out.update(s.to_dict(w))
    _emit(out)
    return 0


def cmd_genus(args) -> int:
    w = _read_word(args.word)
    inv = invariants(build_ordered_graph(w))
    out = inv.to_dict()
    try:
        single_face_genus(w)
        out["consistent"] = True
    except WicksError as exc:
        out["consistent"] = False
        print(f"warning: {exc}", file=sys.stderr)
    _emit(out)
    return 0


def census_lines(classes) -> list[str]:
    lines = []
    for c in classes:
        n = c.length
        rec = {"genus": c.genus, "canon": c.key, "aut": c.aut_order,
               "V": n // 3, "E": n // 2, "F": 1}
        lines.append(json.dumps(rec, separators=(",", ":")))
    return lines


def cmd_enumerate(args) -> int:
    if args.limit > MAX_GENUS_LIMIT:
        raise UsageError(f"--limit may not exceed {MAX_GENUS_LIMIT}")
    moves = BASIC_MOVES if args.basic_moves else ALL_MOVES
    try:
        classes = enumerate_genus(args.genus, limit=args.limit, workers=args.workers, moves=moves)
    except LimitExceeded as exc:
        print(f"LimitExceeded: {exc}", file=sys.stderr)
        return 2
    text = "".join(line + "\n" for line in census_lines(classes))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"genus {args.genus}: {len(classes)} classes written to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def cmd_census(args) -> int:
    if args.input:
        try:
            records = cen.read_census(args.input)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read census {args.input}: {exc}") from exc
        stats = cen.stats_from_records(records, args.genus)
    else:
        classes = enumerate_genus(args.genus, limit=MAX_GENUS_LIMIT, workers=args.workers)
        stats = cen.stats_from_orders(args.genus, (c.aut_order for c in classes))
    bounds = cen.check_bounds(stats)
    hist = cen.check_aut_histogram(stats)
    out = {
        "stats": stats.to_dict(),
        "rooted_count": cen.rooted_count(args.genus),
        "main_term": str(cen.asymptotic_main_term(args.genus)),
        "lemma_bounds": cen.lemma_bounds(args.genus).to_dict(),
        "bounds": bounds.to_dict(),
        "aut_histogram_checks": hist.to_dict(),
    }
    _emit(out)
    for name in hist.failed():
        print(f"note: automorphism check failed: {name}", file=sys.stderr)
    if not bounds.passed:
        print(f"census identities failed: {bounds.failed()}", file=sys.stderr)
        return 1
    return 0


def cmd_realize(args) -> int:
    w = _read_word(args.word)
    if args.lengths:
        L = _read_lengths(args.lengths)
        side = None
    else:
        L = regular_lengths(w)
        side = float(L[0])
    dev = develop_polygon(w, L)
    res = membership_residual(w, L)
    out = {
        "side_length": side,
        "holonomy_deviation": holonomy_deviation(dev.holonomy),
        "residual_max": res.max_abs(),
        "residual": res.vector().tolist(),
        "closes": res.max_abs() < args.tol,
        "vertices": dev.vertices.tolist(),
    }
    _emit(out)
    return 0 if out["closes"] else 1


def cmd_project(args) -> int:
    w = _read_word(args.word)
    L0 = _read_lengths(args.lengths)
    if len(L0) != len(w):
        raise UsageError(f"{len(L0)} lengths for a word of length {len(w)}")
    p = project_to_variety(w, L0, tol=args.tol, max_iter=args.max_iter)
    text = "".join(f"{x:.17g}\n" for x in p.lengths)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"converged in {p.iterations} iterations, residual {p.residual:.3e}", file=sys.stderr)
    return 0


def cmd_corpus(args) -> int:
    if args.list or not args.verify:
        for name in list_examples():
            print(name)
        return 0
    try:
        e = load_example(args.verify)
        if args.corrections:
            e = load_correction(args.verify, args.corrections)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    except OSError as exc:
        raise UsageError(f"cannot read corrections: {exc}") from exc
    report = verify_example(e)
    _emit(report)
    return 0


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wicks", description=__doc__.splitlines()[0],
                                epilog=f"word format: {WORD_GRAMMAR}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def word_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("word", help="file holding one cyclic word ('-' for stdin)")
        sp.set_defaults(func=fn)
        return sp

    word_cmd("validate", cmd_validate, "check the Wicks-form conditions")
    word_cmd("canonicalize", cmd_canonicalize, "canonical representative of the class")
    sp = word_cmd("aut", cmd_aut, "automorphisms and the structures they force")
    sp.add_argument("--order", type=int, choices=(2, 3), help="require an automorphism of this order")
    word_cmd("genus", cmd_genus, "surface invariants V, E, F, genus")

    sp = sub.add_parser("enumerate", help="all classes of a given genus as JSON lines")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--out", help="output file (default stdout)")
    sp.add_argument("--workers", type=int, default=1, help="worker processes")
    sp.add_argument("--limit", type=int, default=3, help=f"genus guard (at most {MAX_GENUS_LIMIT})")
    sp.add_argument("--basic-moves", action="store_true",
                    help="use only the alpha, beta, gamma moves (incomplete from genus 2)")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("census", help="counting identities and bounds for a census")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--in", dest="input", help="census JSON lines (default: enumerate now)")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("realize", help="develop the polygon and report closure")
    sp.add_argument("--word", required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--regular", action="store_true", help="use the regular side length (default)")
    g.add_argument("--lengths", help="side lengths, one decimal per line")
    sp.add_argument("--tol", type=_positive, default=CLOSURE_TOL)
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("project", help="project side lengths onto the closure variety")
    sp.add_argument("--word", required=True)
    sp.add_argument("--lengths", required=True)
    sp.add_argument("--out")
    sp.add_argument("--tol", type=_positive, default=CLOSURE_TOL)
    sp.add_argument("--max-iter", type=int, default=100)
    sp.set_defaults(func=cmd_project)

    sp = sub.add_parser("corpus", help="built-in multi-face examples")
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--verify", metavar="NAME")
    sp.add_argument("--corrections", metavar="FILE", help="verify a corrected variant instead")
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WicksError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
