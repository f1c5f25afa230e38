"""Built-in multi-face example words and their verification.

The examples are stored verbatim, one face word per line, in ``data/``.
Nothing is corrected on load; a sidecar file with a proposed correction can
be verified with the same checks and is reported as a corrected variant.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import WicksError
from .hyperbolic import regular_side_length
from .surface import build_ordered_graph, glued_vertex_degrees, invariants
from .words import MultiWord, parse_multiword

EXAMPLE_NAMES = ("f2k12", "f3k10", "f4k9", "f6k8", "f12k7")
_NAME_RE = re.compile(r"^f(\d+)k(\d+)$")


@dataclass(frozen=True)
class ExoticExample:
    name: str
    words: MultiWord
    f: int
    k: int
    variant: str = "as printed"


def _expected(name: str) -> tuple[int, int]:
    m = _NAME_RE.match(name)
    if m is None:
        raise KeyError(f"unknown example {name!r}")
    return int(m.group(1)), int(m.group(2))


def list_examples() -> list[str]:
    return list(EXAMPLE_NAMES)


def load_example(name: str) -> ExoticExample:
    if name not in EXAMPLE_NAMES:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_NAMES)}")
    text = resources.files("wicks.data").joinpath(f"{name}.txt").read_text(encoding="utf-8")
    f, k = _expected(name)
    return ExoticExample(name, parse_multiword(text), f, k)


def load_correction(name: str, path: str | Path) -> ExoticExample:
    f, k = _expected(name)
    text = Path(path).read_text(encoding="utf-8")
    return ExoticExample(name, parse_multiword(text), f, k, variant="corrected variant")


def verify_example(e: ExoticExample) -> dict:
    """Run every check and collect findings; never raises on bad data."""
    words = e.words
    names = words.names
    tokens = [t for face in words for t in face.tokens]
    counts = Counter(t >> 1 for t in tokens)
    signs: dict[int, set[int]] = {}
    for t in tokens:
        signs.setdefault(t >> 1, set()).add(t & 1)
    multiplicity = {names[x]: c for x, c in sorted(counts.items()) if c != 2}
    same_sign = [names[x] for x, c in sorted(counts.items())
                 if c == 2 and len(signs[x]) == 1]
    lengths = [len(face) for face in words]
    findings = []
    if len(words) != e.f:
        findings.append(f"expected {e.f} faces, found {len(words)}")
    bad_len = [i for i, n in enumerate(lengths) if n != e.k]
    for i in bad_len:
        findings.append(f"face {i} has length {lengths[i]}, expected {e.k}")
    for name, c in multiplicity.items():
        findings.append(f"letter {name} occurs {c} times")
    for name in same_sign:
        findings.append(f"letter {name} occurs twice with the same sign")

    report: dict = {
        "name": e.name,
        "variant": e.variant,
        "expected": {"f": e.f, "k": e.k},
        "faces": len(words),
        "face_lengths": lengths,
        "letter_occurrences": len(tokens),
        "letters": len(counts),
        "multiplicity_violations": multiplicity,
        "same_sign_letters": same_sign,
        "orientable": None if multiplicity else not same_sign,
        "invariants": None,
        "euler_relation": None,
        "regular_polygon": None,
        "findings": findings,
    }

    if not multiplicity:
        if same_sign:
            # Reading 1: a misprinted exponent (orientable surface, unknown fix).
            # Reading 2: the printed signs are meant, so those edges are glued
            # with a twist and the surface is non-orientable.
            degrees = glued_vertex_degrees(words)
            V, E, F = len(degrees), len(tokens) // 2, len(words)
            report["readings"] = {
                "misprinted_exponent": "orientable surface; the intended exponent is not "
                                       "reconstructed",
                "twisted_gluing": {"V": V, "E": E, "F": F, "euler_characteristic": V - E + F,
                                   "orientable": False, "cubic": set(degrees) == {3}},
            }
        else:
            try:
                inv = invariants(build_ordered_graph(words))
            except WicksError as exc:
                findings.append(f"surface model rejected the words: {exc}")
            else:
                report["invariants"] = inv.to_dict()
                if not inv.cubic:
                    findings.append("graph is not cubic")
                if inv.k is not None:
                    holds = inv.k == 2 * inv.genus + inv.F - 2
                    report["euler_relation"] = {
                        "k": inv.k, "g": inv.genus, "f": inv.F,
                        "k == 2g + f - 2": holds}
                    if not holds:
                        findings.append("k = 2g + f - 2 fails")
    try:
        side = regular_side_length(e.k)
    except WicksError:
        report["regular_polygon"] = {"feasible": False, "sides": e.k}
        findings.append(f"no regular {e.k}-gon with angles 2pi/3")
    else:
        report["regular_polygon"] = {"feasible": True, "sides": e.k, "side_length": side}
    report["ok"] = not findings
    return report
