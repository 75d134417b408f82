"""Determinant-sign classification of patterns and small-order censuses.

A pattern is classified by hunting for orthogonal realizations of both
determinant signs.  Verdicts other than AmbiguousFound are evidence of
absence within budget, never impossibility proofs.  The census enumerates
every pattern of a small order up to symmetry and classifies each orbit
representative; for orders up to 4 an ambiguous verdict would contradict the
known uniqueness of the determinant sign, so it aborts the run loudly.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Optional

from .realize import (
    RealizationResult,
    SearchConfig,
    TARGET_ANY,
    refine_from,
    search_realization,
)
from .signpat import SignPattern, UnsupportedOrderError, necessary_check, orbit_of

AMBIGUOUS_FOUND = "AmbiguousFound"
ONLY_PLUS_FOUND = "OnlyPlusFound"
ONLY_MINUS_FOUND = "OnlyMinusFound"
NONE_FOUND = "NoneFound"


class CensusAmbiguityError(RuntimeError):
    """An AmbiguousFound verdict at an order where the determinant sign is
    known to be unique; almost certainly a numerical artifact, so stop."""


@dataclass
class DetSignEvidence:
    """Search evidence for the determinant signs a pattern can realize."""

    pattern: SignPattern
    plus_result: Optional[RealizationResult]
    minus_result: Optional[RealizationResult]
    verdict: str
    budgets: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "pattern": self.pattern.to_text(),
            "verdict": self.verdict,
            "plus": None if self.plus_result is None else self.plus_result.to_json_dict(),
            "minus": None if self.minus_result is None else self.minus_result.to_json_dict(),
            "budgets": self.budgets,
        }


def _verdict(plus, minus) -> str:
    if plus is not None and minus is not None:
        return AMBIGUOUS_FOUND
    if plus is not None:
        return ONLY_PLUS_FOUND
    if minus is not None:
        return ONLY_MINUS_FOUND
    return NONE_FOUND


def classify_det_sign(S: SignPattern, cfg: Optional[SearchConfig] = None, seeds=None,
                      sides=(1, -1)) -> DetSignEvidence:
    """Hunt both determinant signs; optional seed matrices are polished first.

    Each seed lands on the side of its own determinant sign, so a good pair of
    seeds settles the classification without any blind search.  sides narrows
    the blind search to one determinant sign (seeds still count wherever they
    land).
    """
    cfg = cfg or SearchConfig()
    results = {1: None, -1: None}
    budgets: dict = {"seeds_polished": 0}
    for seed in seeds or ():
        polished = refine_from(seed, S, TARGET_ANY, cfg)
        budgets["seeds_polished"] += 1
        if polished is not None and results[polished.det_sign] is None:
            results[polished.det_sign] = polished
    for side, key in ((1, "plus"), (-1, "minus")):
        if results[side] is None and side in sides:
            results[side] = search_realization(S, side, cfg)
            budgets[key] = {
                "restarts": cfg.restarts if results[side] is None else results[side].restart_index + 1,
                "max_iters": cfg.max_iters,
            }
        else:
            budgets[key] = {"restarts": 0, "max_iters": cfg.max_iters}
    return DetSignEvidence(S, results[1], results[-1], _verdict(results[1], results[-1]), budgets)


def exhaustive_2x2_oracle() -> dict:
    """Complete map from every realizable 2x2 pattern to its determinant signs.

    Every 2x2 orthogonal matrix is [[c,-s],[s,c]] (det +1) or [[c,s],[s,-c]]
    (det -1) with c^2 + s^2 = 1, so the realizable patterns are exactly the
    images of the 8 sign combinations of (c, s) other than c = s = 0.  Each
    realizable pattern turns out to admit exactly one determinant sign.
    """
    achievable: dict = {}
    for sc, ss in itertools.product((-1, 0, 1), repeat=2):
        if sc == 0 and ss == 0:
            continue
        rotation = SignPattern.from_rows([[sc, -ss], [ss, sc]])
        reflection = SignPattern.from_rows([[sc, ss], [ss, -sc]])
        achievable.setdefault(rotation, set()).add(1)
        achievable.setdefault(reflection, set()).add(-1)
    return {p: frozenset(s) for p, s in achievable.items()}


@dataclass
class CensusRow:
    pattern: SignPattern
    orbit_size: int
    necessary_pass: bool
    evidence: Optional[DetSignEvidence]

    @property
    def verdict(self) -> str:
        return NONE_FOUND if self.evidence is None else self.evidence.verdict

    def to_json_dict(self) -> dict:
        return {
            "pattern": self.pattern.to_text(),
            "orbit_size": self.orbit_size,
            "necessary_pass": self.necessary_pass,
            "verdict": self.verdict,
            "evidence": None if self.evidence is None else self.evidence.to_json_dict(),
        }


@dataclass
class CensusReport:
    order: int
    rows: list
    margin: float
    elapsed_seconds: float

    @property
    def orbits_examined(self) -> int:
        return len(self.rows)

    @property
    def ambiguous_count(self) -> int:
        return sum(1 for r in self.rows if r.verdict == AMBIGUOUS_FOUND)

    def verdict_of(self, pattern: SignPattern) -> str:
        for r in self.rows:
            if r.pattern == pattern:
                return r.verdict
        raise KeyError("pattern is not a census orbit representative")

    def to_json_dict(self, include_elapsed: bool = False) -> dict:
        out = {
            "order": self.order,
            "orbits_examined": self.orbits_examined,
            "ambiguous_count": self.ambiguous_count,
            "margin": self.margin,
            "rows": [r.to_json_dict() for r in self.rows],
        }
        if include_elapsed:
            out["elapsed_seconds"] = self.elapsed_seconds
        return out


def census_default_config() -> SearchConfig:
    """Per-orbit search budget for the census (smaller than the global default)."""
    return SearchConfig(restarts=20, max_iters=500)


def _orbit_representatives(n: int):
    """(representative, orbit size) for every orbit of n x n patterns,
    in lexicographic order of the representatives."""
    reps = []
    seen: set = set()
    for entries in itertools.product((-1, 0, 1), repeat=n * n):
        S = SignPattern(n, entries)
        if S in seen:
            continue
        orbit = orbit_of(S)
        seen |= orbit
        reps.append((min(orbit, key=lambda p: p.entries), len(orbit)))
    reps.sort(key=lambda t: t[0].entries)
    return reps


def census(n: int, cfg: Optional[SearchConfig] = None, allow_order_4: bool = False) -> CensusReport:
    """Classify every n x n sign pattern up to symmetry (n <= 3 by default).

    Patterns failing the combinatorial necessary check are recorded as
    NoneFound without search.  Raises CensusAmbiguityError on any ambiguous
    verdict: at these orders each realizable pattern admits a single
    determinant sign, so ambiguity means a numerical artifact.
    """
    if n > 4 or (n == 4 and not allow_order_4):
        raise UnsupportedOrderError(
            f"census supports order <= 3 (order 4 behind allow_order_4), got {n}"
        )
    cfg = cfg or census_default_config()
    start = time.monotonic()
    rows = []
    for rep, orbit_size in _orbit_representatives(n):
        if not necessary_check(rep).passed:
            rows.append(CensusRow(rep, orbit_size, False, None))
            continue
        ev = classify_det_sign(rep, cfg)
        if ev.verdict == AMBIGUOUS_FOUND:
            raise CensusAmbiguityError(
                "ambiguous determinant sign reported for an order "
                f"{n} pattern, which contradicts sign uniqueness at this order:\n{rep.to_text()}"
            )
        rows.append(CensusRow(rep, orbit_size, True, ev))
    return CensusReport(n, rows, cfg.margin, time.monotonic() - start)
