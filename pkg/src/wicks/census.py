"""Exact counting formulas, automorphism bounds, and census checks.

All quantities are Python integers or ``Fraction``; nothing is rounded.
``N_k(g)`` is read as the number of classes whose automorphism group has
order exactly ``k``, so the histogram partitions the census.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from pathlib import Path
from typing import Iterable

from .errors import NonInteger


def rooted_count(g: int) -> int:
    """Number of rooted one-face cubic maps of genus g: (12g-6)(6g-4)!/((3g-2)! g! 12^g)."""
    if g < 1:
        raise ValueError(f"genus must be positive, got {g}")
    num = (12 * g - 6) * factorial(6 * g - 4)
    den = factorial(3 * g - 2) * factorial(g) * 12 ** g
    q, r = divmod(num, den)
    if r:
        raise NonInteger(f"rooted count for genus {g} is not an integer")
    return q


def asymptotic_main_term(g: int) -> Fraction:
    """(6g-4)!/((3g-2)! g! 12^g), i.e. rooted_count(g) / (12g - 6)."""
    if g < 1:
        raise ValueError(f"genus must be positive, got {g}")
    return Fraction(factorial(6 * g - 4), factorial(3 * g - 2) * factorial(g) * 12 ** g)


def _seven_product(g: int) -> int:
    n = 12 * g - 6
    return prod(n - 7 * m for m in range(1, n // 7 + 1) if n - 7 * m > 0)


@dataclass(frozen=True)
class LemmaBounds:
    B2: int
    B3: int
    B5_product: int
    Bk: int

    def to_dict(self) -> dict:
        return {"B2": self.B2, "B3": self.B3, "B5_product": self.B5_product, "Bk": self.Bk}


def lemma_bounds(g: int) -> LemmaBounds:
    n = 12 * g - 6
    p7 = _seven_product(g)
    b5 = 1
    m = 1
    while n - 24 * (m - 1) > 0:
        s = 24 * (m - 1)
        b5 *= (n - s) * (n - 2 - s) * (n - 4 - s)
        m += 1
    return LemmaBounds(B2=(g + 1) * p7, B3=2 * g * g * p7, B5_product=b5, Bk=factorial(n // 7))


@dataclass
class CensusStats:
    genus: int
    class_count: int
    rooted_sum: int
    aut_histogram: dict[int, int] = field(default_factory=dict)

    @property
    def trivial_count(self) -> int:
        return self.aut_histogram.get(1, 0)

    @property
    def nontrivial_count(self) -> int:
        return sum(c for k, c in self.aut_histogram.items() if k >= 2)

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "class_count": self.class_count,
            "rooted_sum": self.rooted_sum,
            "aut_histogram": {str(k): v for k, v in sorted(self.aut_histogram.items())},
        }


def stats_from_orders(g: int, aut_orders: Iterable[int]) -> CensusStats:
    n = 12 * g - 6
    hist: dict[int, int] = {}
    total = Fraction(0)
    count = 0
    for a in aut_orders:
        hist[a] = hist.get(a, 0) + 1
        total += Fraction(n, a)
        count += 1
    rooted = total.numerator if total.denominator == 1 else total
    return CensusStats(g, count, rooted, dict(sorted(hist.items())))


def read_census(path: str | Path) -> list[dict]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return records


def stats_from_records(records: list[dict], g: int | None = None) -> CensusStats:
    if g is None:
        gs = {r["genus"] for r in records}
        if len(gs) != 1:
            raise ValueError(f"census mixes genera {sorted(gs)}")
        g = gs.pop()
    return stats_from_orders(g, (r["aut"] for r in records if r["genus"] == g))


@dataclass(frozen=True)
class Check:
    name: str
    lhs: object
    relation: str
    rhs: object
    passed: bool

    def to_dict(self) -> dict:
        def enc(v):
            return str(v) if isinstance(v, Fraction) else v
        return {"name": self.name, "lhs": enc(self.lhs), "relation": self.relation,
                "rhs": enc(self.rhs), "passed": self.passed}


@dataclass
class BoundReport:
    genus: int
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"genus": self.genus, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks]}


def _le(name, a, b):
    return Check(name, a, "<=", b, a <= b)


def check_bounds(stats: CensusStats) -> BoundReport:
    """Rooting identity and the two-sided bounds on the class count."""
    g = stats.genus
    R = rooted_count(g)
    main = asymptotic_main_term(g)
    checks = [
        Check("rooted_sum == R(g)", stats.rooted_sum, "==", R, stats.rooted_sum == R),
        _le("R(g)/(12g-6) <= N(1,g)", main, stats.class_count),
        _le("N(1,g) <= R(g)", stats.class_count, R),
        _le("N_1(g) <= R(g)/(12g-6)", stats.trivial_count, main),
    ]
    return BoundReport(g, checks)


def check_aut_histogram(stats: CensusStats) -> BoundReport:
    """Finite-genus checks of the automorphism-count bounds."""
    g = stats.genus
    n = 12 * g - 6
    b = lemma_bounds(g)
    hist = stats.aut_histogram
    main = asymptotic_main_term(g)
    checks = [
        Check("aut orders divide 12g-6", sorted(hist), "|", n, all(n % k == 0 for k in hist)),
        _le("N_2(g) <= B2", hist.get(2, 0), b.B2),
        _le("N_3(g) <= B3", hist.get(3, 0), b.B3),
        Check("sum_{k>=2} N_k(g) < R(g)/(12g-6)", stats.nontrivial_count, "<", main,
              stats.nontrivial_count < main),
    ]
    return BoundReport(g, checks)
