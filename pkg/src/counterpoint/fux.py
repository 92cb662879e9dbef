"""Step validation for second-species compositions and the Fux comparison.

The comparison takes every step ``(0 + e1.k1 + e2.t, c2 + e1.k2)`` with
consonant downbeats and asks two questions of it: would Fux accept the upbeat
``t`` (case 1: a dissonant passing tone, case 2: a consonance that is itself a
valid first-species stop), and is ``c2 + e1.k2`` an admitted successor in the
projection model.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

from .dichotomy import StrongDichotomy
from .ring import FirstInterval, Projection, TwoInterval
from .projections import first_species_successors, second_species_projections

__all__ = [
    "Reason",
    "StepVerdict",
    "Composition",
    "CompositionError",
    "StepCandidate",
    "ComparisonReport",
    "PAPER_TABLE",
    "validate_step",
    "validate_composition",
    "is_passing_tone",
    "fux_case1_classify",
    "fux_case2_classify",
    "step_universe",
    "run_comparison",
    "paper_diff",
]


class Reason(str, enum.Enum):
    ADMITTED = "admitted"
    DISSONANT_SOURCE_DOWNBEAT = "dissonant-source-downbeat"
    DISSONANT_TARGET_DOWNBEAT = "dissonant-target-downbeat"
    NOT_IN_ANY_MAXIMAL_DEFORMED_SET = "not-in-any-maximal-deformed-set"


@dataclass(frozen=True)
class StepVerdict:
    index: int
    source: TwoInterval
    target: FirstInterval
    reason: Reason
    projections: tuple[Projection, ...] = ()

    @property
    def admitted(self) -> bool:
        return self.reason is Reason.ADMITTED

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "source": [self.source.c, self.source.x, self.source.y],
            "target": [self.target.c, self.target.x],
            "admitted": self.admitted,
            "reason": self.reason.value,
            "projections": [list(g.params) for g in self.projections],
        }


def validate_step(source: TwoInterval, target: FirstInterval, D: StrongDichotomy, index: int = 0) -> StepVerdict:
    if not (source.modulus == target.modulus == D.modulus):
        raise ValueError("step and dichotomy live in different rings")
    if not D.is_consonant(source.x):
        return StepVerdict(index, source, target, Reason.DISSONANT_SOURCE_DOWNBEAT)
    if not D.is_consonant(target.x):
        return StepVerdict(index, source, target, Reason.DISSONANT_TARGET_DOWNBEAT)
    res = second_species_projections(source.x, source.y, D)
    relative = target.translate(dc=-source.c)
    gs = res.admitting(relative, D.X)
    if not gs:
        return StepVerdict(index, source, target, Reason.NOT_IN_ANY_MAXIMAL_DEFORMED_SET)
    return StepVerdict(index, source, target, Reason.ADMITTED, gs)


class CompositionError(ValueError):
    """Malformed composition document; ``field`` names the offending entry."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


@dataclass(frozen=True)
class Composition:
    """Second-species measures followed by a closing one-note measure."""

    dichotomy: StrongDichotomy
    events: tuple[TwoInterval, ...]
    final: FirstInterval

    def __post_init__(self):
        n = self.dichotomy.modulus
        if any(e.modulus != n for e in self.events) or self.final.modulus != n:
            raise CompositionError("events do not share the composition modulus")

    @property
    def modulus(self) -> int:
        return self.dichotomy.modulus

    @classmethod
    def from_dict(cls, doc: dict) -> Composition:
        if not isinstance(doc, dict):
            raise CompositionError("document must be a JSON object")
        try:
            n = doc["modulus"]
            X = doc["consonances"]
        except KeyError as exc:
            raise CompositionError("missing key", str(exc.args[0])) from None
        D = StrongDichotomy.from_consonances(X, n)
        if "intervals" in doc:
            rows = _int_rows(doc["intervals"], "intervals")
        elif "cantus" in doc and "discantus" in doc:
            rows = _rows_from_notes(doc["cantus"], doc["discantus"], n)
        else:
            raise CompositionError("need 'intervals' or 'cantus' + 'discantus'")
        if not rows:
            raise CompositionError("no measures", "intervals")
        *body, last = rows
        for i, row in enumerate(body):
            if len(row) != 3:
                raise CompositionError("expected [c, x, y]", f"intervals[{i}]")
        if len(last) != 2:
            raise CompositionError("final measure must be [c, x]", f"intervals[{len(rows) - 1}]")
        events = tuple(TwoInterval(*row, modulus=n) for row in body)
        return cls(D, events, FirstInterval(*last, modulus=n))

    @classmethod
    def from_json(cls, path: str | Path) -> Composition:
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise CompositionError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(doc)

    def to_dict(self) -> dict:
        rows = [[e.c, e.x, e.y] for e in self.events] + [[self.final.c, self.final.x]]
        return {"modulus": self.modulus, "consonances": list(self.dichotomy.X), "intervals": rows}

    def transpose(self, t: int) -> Composition:
        return Composition(
            self.dichotomy,
            tuple(e.translate(dc=t) for e in self.events),
            self.final.translate(dc=t),
        )


def _int_rows(rows, name: str) -> list[list[int]]:
    if not isinstance(rows, list):
        raise CompositionError("must be a list", name)
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in row):
            raise CompositionError("expected a list of integers", f"{name}[{i}]")
        out.append(row)
    return out


def _rows_from_notes(cantus, discantus, n: int) -> list[list[int]]:
    """Pitch-class notes to interval rows, sweeping orientation."""
    if not isinstance(cantus, list) or not all(isinstance(c, int) for c in cantus):
        raise CompositionError("expected a list of integers", "cantus")
    notes = _int_rows(discantus, "discantus")
    if len(cantus) != len(notes):
        raise CompositionError(f"{len(cantus)} cantus notes but {len(notes)} discantus measures", "discantus")
    return [[c % n] + [(d - c) % n for d in ds] for c, ds in zip(cantus, notes)]


def validate_composition(comp: Composition) -> list[StepVerdict]:
    """One verdict per step into the next measure's downbeat, the last into ``final``."""
    targets = [e.downbeat for e in comp.events[1:]] + [comp.final]
    return [
        validate_step(src, dst, comp.dichotomy, index=i)
        for i, (src, dst) in enumerate(zip(comp.events, targets))
    ]


# --- the comparison experiment ---------------------------------------------

# published cells: (total, fux_only, proj_only, both)
PAPER_TABLE = {1: (1994, 9, 1447, 301), 2: (2592, 178, 860, 1464)}
PAPER_RATES = {1: 87.663, 2: 89.660}

UNIVERSES = ("all", "fs-valid")


@dataclass(frozen=True)
class StepCandidate:
    """The step ``(0 + e1.k1 + e2.upbeat, c2 + e1.k2)``."""

    k1: int
    upbeat: int
    c2: int
    k2: int


def _circ(a: int, b: int, n: int) -> int:
    d = (a - b) % n
    return min(d, n - d)


def is_passing_tone(a: int, b: int, c: int, n: int, max_step: int = 2) -> bool:
    """Whether pitch class ``b`` moves stepwise from ``a`` and on to ``c``.

    Each move is 1..max_step semitones on the pitch circle and ``b`` must lie
    on the shorter arc from ``a`` to ``c``.
    """
    ab, bc = _circ(a, b, n), _circ(b, c, n)
    return 1 <= ab <= max_step and 1 <= bc <= max_step and _circ(a, c, n) == ab + bc


def _fs_valid(src: FirstInterval, dst: FirstInterval, D: StrongDichotomy) -> bool:
    return dst in first_species_successors(src, D)


def _proj_valid(s: StepCandidate, D: StrongDichotomy) -> bool:
    res = second_species_projections(s.k1, s.upbeat, D)
    return FirstInterval(s.c2, s.k2, D.modulus) in res.successors


def fux_case1_classify(s: StepCandidate, D: StrongDichotomy, require_progression: bool = True) -> tuple[bool, bool]:
    """``(fux_valid, proj_valid)`` for a dissonant upbeat."""
    n = D.modulus
    if D.is_consonant(s.upbeat):
        raise ValueError(f"case 1 needs a dissonant upbeat, got {s.upbeat}")
    fux = is_passing_tone(s.k1, s.upbeat, (s.c2 + s.k2) % n, n)
    if fux and require_progression:
        fux = _fs_valid(FirstInterval(0, s.k1, n), FirstInterval(s.c2, s.k2, n), D)
    return fux, _proj_valid(s, D)


def fux_case2_classify(s: StepCandidate, D: StrongDichotomy) -> tuple[bool, bool]:
    """``(fux_valid, proj_valid)`` for a consonant upbeat, doubling the cantus."""
    n = D.modulus
    if not D.is_consonant(s.upbeat):
        raise ValueError(f"case 2 needs a consonant upbeat, got {s.upbeat}")
    mid = FirstInterval(0, s.upbeat, n)
    fux = _fs_valid(FirstInterval(0, s.k1, n), mid, D) and _fs_valid(mid, FirstInterval(s.c2, s.k2, n), D)
    return fux, _proj_valid(s, D)


def step_universe(case_id: int, universe: str, D: StrongDichotomy):
    """Candidates in ``(k1, upbeat, c2, k2)`` lexicographic order."""
    if universe not in UNIVERSES:
        raise ValueError(f"universe must be one of {UNIVERSES}, got {universe!r}")
    n = D.modulus
    upbeats = D.Y if case_id == 1 else D.X
    for k1, t, c2, k2 in product(D.X, upbeats, range(n), D.X):
        if universe == "fs-valid" and not _fs_valid(FirstInterval(0, k1, n), FirstInterval(c2, k2, n), D):
            continue
        yield StepCandidate(k1, t, c2, k2)


@dataclass
class ComparisonReport:
    case_id: int
    universe: str
    modulus: int
    consonances: tuple[int, ...]
    total: int = 0
    fux_only: int = 0
    proj_only: int = 0
    both: int = 0
    neither: int = 0
    repetitions: int = 0
    options: dict = field(default_factory=dict)

    @property
    def admission_rate(self) -> float:
        """Percentage of steps admitted by the projection model."""
        return 100.0 * (self.proj_only + self.both) / self.total if self.total else 0.0

    @property
    def fux_only_rate(self) -> float:
        return 100.0 * self.fux_only / self.total if self.total else 0.0

    def cells(self) -> tuple[int, int, int, int]:
        return (self.total, self.fux_only, self.proj_only, self.both)

    def to_dict(self) -> dict:
        return {
            "case": self.case_id,
            "universe": self.universe,
            "modulus": self.modulus,
            "consonances": list(self.consonances),
            "options": dict(self.options),
            "total": self.total,
            "fux_only": self.fux_only,
            "proj_only": self.proj_only,
            "both": self.both,
            "neither": self.neither,
            "repetitions": self.repetitions,
            "admission_rate": round(self.admission_rate, 3),
        }


def run_comparison(case_id: int, universe: str, D: StrongDichotomy, require_progression: bool = True) -> ComparisonReport:
    if case_id not in (1, 2):
        raise ValueError(f"case must be 1 or 2, got {case_id}")
    report = ComparisonReport(case_id, universe, D.modulus, D.X)
    if case_id == 1:
        report.options["require_progression"] = require_progression
    for s in step_universe(case_id, universe, D):
        if case_id == 1:
            fux, proj = fux_case1_classify(s, D, require_progression)
        else:
            fux, proj = fux_case2_classify(s, D)
        report.total += 1
        if fux and proj:
            report.both += 1
        elif fux:
            report.fux_only += 1
        elif proj:
            report.proj_only += 1
        else:
            report.neither += 1
        if s.c2 == 0 and s.k2 == s.k1:
            report.repetitions += 1
    assert report.total == report.both + report.fux_only + report.proj_only + report.neither
    return report


def published_rate(case_id: int) -> float:
    total, _, proj_only, both = PAPER_TABLE[case_id]
    return 100.0 * (proj_only + both) / total


def paper_diff(report: ComparisonReport) -> dict | None:
    """Cell-by-cell comparison with the published table (classical Z_12 only)."""
    if report.modulus != 12 or tuple(report.consonances) != (0, 3, 4, 7, 8, 9):
        return None
    total, fux_only, proj_only, both = PAPER_TABLE[report.case_id]
    published = {
        "total": total,
        "fux_only": fux_only,
        "proj_only": proj_only,
        "both": both,
        "neither": total - fux_only - proj_only - both,
        "admission_rate": PAPER_RATES[report.case_id],
    }
    ours = report.to_dict()
    deltas = {}
    for key, want in published.items():
        got = ours[key]
        if key == "admission_rate":
            delta = round(got - want, 3)
            if abs(delta) > 0.001:
                deltas[key] = delta
        elif got != want:
            deltas[key] = got - want
    return {"published": published, "deltas": deltas, "match": not deltas}
