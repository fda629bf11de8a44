"""Enumeration of multiplicity types satisfying the degree constraints."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from . import typecalc
from .typecalc import HudsonTrace, MultiplicityType


@dataclass(frozen=True)
class SearchRow:
    mults: tuple[int, ...]
    three_uniform: bool
    double_verdict: str | None = None
    trace: HudsonTrace | None = None

    def type(self, degree):
        return MultiplicityType(degree, self.mults)


@dataclass(frozen=True)
class SearchResult:
    degree: int
    rows: tuple[SearchRow, ...]
    note: str | None = None


def _partitions(total, total_sq, bound):
    """Non-increasing positive parts with prescribed sum and square sum."""
    if total == 0:
        if total_sq == 0:
            yield ()
        return
    # remaining parts are positive and at most `bound`, so the square sum
    # left must sit between the sum and bound * sum
    if total_sq < total or total_sq > bound * total:
        return
    for part in range(min(bound, total, isqrt(total_sq)), 0, -1):
        for rest in _partitions(total - part, total_sq - part * part, part):
            yield (part,) + rest


def enumerate_subhomaloidal(s, max_mult=None):
    """All multiplicity vectors with sum 3(s-1) and square sum s(s-1).

    Vectors are sorted non-increasing and listed in descending
    lexicographic order.  Even s admits no solutions on parity grounds;
    the result says so explicitly rather than returning a bare empty list.
    """
    if s < 3:
        raise ValueError("the degree must be at least 3")
    if max_mult is None:
        max_mult = s - 1
    if max_mult < 1:
        raise ValueError("the multiplicity cap must be positive")
    rows = []
    for mults in _partitions(3 * (s - 1), s * (s - 1), max_mult):
        cls = typecalc.classify(MultiplicityType(s, mults))
        assert cls.subhomaloidal_degree == s
        rows.append(SearchRow(mults, cls.three_uniform))
    note = None
    if s % 2 == 0:
        assert not rows
        note = "no solutions exist in even degree"
    return SearchResult(s, tuple(rows), note)


def filter_proper_double(result, step_limit=None):
    """Keep the rows whose doubled type passes the contraction test.

    Each kept row carries the verdict and trace of the test run on the
    doubled type.  Rows reaching the step limit are kept but flagged, so a
    truncated run is never confused with a proper one.
    """
    kept = []
    for row in result.rows:
        doubled = typecalc.double(MultiplicityType(result.degree, row.mults))
        trace = typecalc.hudson_test(doubled, step_limit=step_limit)
        if trace.verdict == typecalc.IMPROPER:
            continue
        kept.append(SearchRow(row.mults, row.three_uniform, trace.verdict, trace))
    return SearchResult(result.degree, tuple(kept), result.note)


@dataclass(frozen=True)
class Row842:
    degree: int
    r8: int
    r4: int
    r2: int
    type: MultiplicityType
    verdict: str
    trace: HudsonTrace


def classify_842(d_max):
    """Solutions of the degree constraints with multiplicities in {8, 4, 2}.

    The two constraints force d = 4t + 1 with r4 and r2 determined by t and
    r8 alone; the search space is finite and empty past d = 17.
    """
    if d_max < 17:
        raise ValueError("d_max below 17 cannot contain every solution family")
    rows = []
    for d in range(5, d_max + 1, 4):
        t = (d - 1) // 4
        for r8 in range(0, t * (t - 1) // 3 + 1):
            r4 = 2 * (t * (t - 1) - 3 * r8)
            r2 = 2 * t * (5 - 2 * t) + 8 * r8
            if r2 < 0:
                continue
            mults = (8,) * r8 + (4,) * r4 + (2,) * r2
            mtype = MultiplicityType(d, mults)
            assert typecalc.classify(mtype).is_homaloidal
            trace = typecalc.hudson_test(mtype)
            rows.append(Row842(d, r8, r4, r2, mtype, trace.verdict, trace))
    return tuple(rows)
