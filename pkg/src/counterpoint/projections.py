"""Counterpoint projections, admitted successors and the successor-count audit.

Searches always run with the cantus firmus at 0 (``t1 = 0``).  A projection
``g`` is kept when

1. the starting 2-interval ``e1.y + e2.z`` is a deformed dissonance, i.e.
   ``y = s*p(l) + t2 + s*w2*z`` for some consonance ``l``;
2. ``g`` intertwines the polarities, ``t2 + s*u*(1 + w2) = u + v*t2``;

and among those the ones with the largest ``|g X[e1, e2.z] ∩ X[e1]|`` form
the result.  The admitted successors are the union of the deformed
consonances of every maximal projection, intersected with ``X[e1]``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .dichotomy import StrongDichotomy, _chi_table, deformed_pairs
from .errors import BoundViolation, DissonantDownbeat
from .ring import FirstInterval, Projection, TwoInterval, units

__all__ = [
    "ProjectionResult",
    "FirstSpeciesResult",
    "AuditReport",
    "comm_condition",
    "t2_from_ell",
    "score",
    "remark_witness",
    "candidates",
    "second_species_projections",
    "second_species_successors",
    "first_species_symmetries",
    "first_species_successors",
    "projection_table",
    "theorem_audit",
]


@dataclass(frozen=True)
class ProjectionResult:
    """Maximal projections for the 2-interval ``0 + e1.y + e2.z``.

    ``successors`` are first-species intervals relative to cantus 0.
    """

    y: int
    z: int
    modulus: int
    max_score: int
    projections: tuple[Projection, ...]
    successors: frozenset[FirstInterval] = field(repr=False)

    def admitting(self, target: FirstInterval, consonances) -> tuple[Projection, ...]:
        """Projections of this result whose deformed consonances contain ``target`` (cantus 0)."""
        if target.x not in consonances:
            return ()
        return tuple(
            g
            for g in self.projections
            if (target.c, target.x) in deformed_pairs(g.s, g.w1, g.w2, g.t2, self.z, consonances, self.modulus)
        )

    def to_dict(self) -> dict:
        return {
            "y": self.y,
            "z": self.z,
            "modulus": self.modulus,
            "max_score": self.max_score,
            "projections": [list(g.params) for g in self.projections],
            "successors": [[e.c, e.x] for e in sorted(self.successors)],
        }

    @classmethod
    def from_dict(cls, d: dict) -> ProjectionResult:
        n = d["modulus"]
        return cls(
            y=d["y"],
            z=d["z"],
            modulus=n,
            max_score=d["max_score"],
            projections=tuple(
                Projection(t1=t1, t2=t2, s=s, w1=w1, w2=w2, modulus=n)
                for t1, t2, s, w1, w2 in d["projections"]
            ),
            successors=frozenset(FirstInterval(c, x, n) for c, x in d["successors"]),
        )


@dataclass(frozen=True)
class FirstSpeciesResult:
    """Maximal counterpoint symmetries for ``0 + e.y`` (projections with ``w2 = 0``)."""

    y: int
    modulus: int
    max_score: int
    symmetries: tuple[Projection, ...]
    successors: frozenset[FirstInterval] = field(repr=False)


def comm_condition(g: Projection, D: StrongDichotomy) -> bool:
    """Whether ``g o p^0 == p^0_Delta o g`` (checked through its closed form)."""
    n, u, v = D.modulus, D.u, D.v
    return (g.t2 + g.s * u * (1 + g.w2) - u - v * g.t2) % n == 0


def t2_from_ell(y: int, s: int, w2: int, z: int, ell: int, D: StrongDichotomy) -> int:
    """The e1-translation making ``e1.y`` the image of the dissonance ``p(ell)``."""
    if not D.is_consonant(ell):
        raise ValueError(f"{ell} is not a consonance of {D.base}")
    return (y - s * (D.polarity(ell) + w2 * z)) % D.modulus


def _fast_score(s: int, w1: int, offset: int, n: int, row: tuple[int, ...]) -> int:
    # sum over r of chi(w1*r + offset, s); the w1*r sweep is handled per gcd class
    if w1 == 0:
        return n * row[offset]
    rho = gcd(w1, n)
    if rho == 1:
        return (n // 2) ** 2
    return rho * sum(row[(j * rho + offset) % n] for j in range(n // rho))


def score(g: Projection, z: int, D: StrongDichotomy) -> int:
    """``|g X[e1, e2.z] ∩ X[e1]|`` through the chi kernel (``g`` canonical)."""
    n = D.modulus
    row = _chi_table(D.X, n)[g.s]
    return _fast_score(g.s, g.w1, (g.t2 + g.s * g.w2 * z) % n, n, row)


def remark_witness(y: int, D: StrongDichotomy) -> Projection:
    """The projection ``s = v, l = y, w1 = w2 = 0`` that always meets both conditions."""
    t2 = t2_from_ell(y, D.v, 0, 0, y, D)
    return Projection(s=D.v, t2=t2, modulus=D.modulus)


def _check_downbeat(y: int, D: StrongDichotomy) -> None:
    if not D.is_consonant(y):
        raise DissonantDownbeat(f"downbeat interval {y % D.modulus} is not in {D.base}")


def candidates(y: int, z: int, D: StrongDichotomy, first_species: bool = False) -> dict[Projection, int]:
    """All projections meeting both conditions, mapped to their scores."""
    _check_downbeat(y, D)
    n, u, v = D.modulus, D.u, D.v
    table = _chi_table(D.X, n)
    images = [D.polarity(l) for l in D.X]
    w2_range = (0,) if first_species else range(n)
    out: dict[Projection, int] = {}
    for s in units(n):
        row = table[s]
        for w2 in w2_range:
            shift = s * w2 * z
            for pl in images:
                t2 = (y - s * pl - shift) % n
                if (t2 + s * u * (1 + w2) - u - v * t2) % n:
                    continue
                offset = (t2 + shift) % n
                for w1 in range(n):
                    g = Projection(s=s, w1=w1, w2=w2, t2=t2, modulus=n)
                    if g not in out:
                        out[g] = _fast_score(s, w1, offset, n, row)
    return out


def _maximize(cands: dict[Projection, int], z: int, D: StrongDichotomy):
    best = max(cands.values())
    chosen = tuple(sorted(g for g, sc in cands.items() if sc == best))
    xs = frozenset(D.X)
    succ = set()
    for g in chosen:
        succ |= {p for p in deformed_pairs(g.s, g.w1, g.w2, g.t2, z, D.X, D.modulus) if p[1] in xs}
    return best, chosen, frozenset(FirstInterval(c, x, D.modulus) for c, x in succ)


@lru_cache(maxsize=4096)
def second_species_projections(y: int, z: int, D: StrongDichotomy) -> ProjectionResult:
    """Maximal projections for ``0 + e1.y + e2.z``; ``z`` may be any residue."""
    n = D.modulus
    y, z = y % n, z % n
    best, chosen, succ = _maximize(candidates(y, z, D), z, D)
    return ProjectionResult(y, z, n, best, chosen, succ)


def second_species_successors(xi: TwoInterval, D: StrongDichotomy) -> frozenset[FirstInterval]:
    """Admitted downbeat successors of ``xi``, at the absolute cantus."""
    _check_downbeat(xi.x, D)
    res = second_species_projections(xi.x, xi.y, D)
    return frozenset(e.translate(dc=xi.c) for e in res.successors)


@lru_cache(maxsize=1024)
def first_species_symmetries(y: int, D: StrongDichotomy) -> FirstSpeciesResult:
    n = D.modulus
    y = y % n
    best, chosen, succ = _maximize(candidates(y, 0, D, first_species=True), 0, D)
    return FirstSpeciesResult(y, n, best, chosen, succ)


def first_species_successors(eta: FirstInterval, D: StrongDichotomy) -> frozenset[FirstInterval]:
    _check_downbeat(eta.x, D)
    res = first_species_symmetries(eta.x, D)
    return frozenset(e.translate(dc=eta.c) for e in res.successors)


def _row(args):
    D, y = args
    return [second_species_projections(y, z, D) for z in range(D.modulus)]


def projection_table(D: StrongDichotomy, threads: int = 1) -> list[ProjectionResult]:
    """Results for every ``(y, z)`` in ``X x Z_n``, ordered by ``(y, z)``.

    ``threads > 1`` fans rows out over a process pool; output is identical.
    """
    jobs = [(D, y) for y in D.X]
    if threads <= 1:
        rows = map(_row, jobs)
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_row, jobs))
    return [r for row in rows for r in row]


@dataclass
class AuditReport:
    modulus: int
    consonances: tuple[int, ...]
    lower: int
    upper: int
    pairs: int
    score_histogram: dict[int, int]
    successor_histogram: dict[int, int]
    score_violations: list[tuple[int, int, int]]
    successor_violations: list[tuple[int, int, int]]

    @property
    def score_range(self) -> tuple[int, int]:
        return min(self.score_histogram), max(self.score_histogram)

    @property
    def successor_range(self) -> tuple[int, int]:
        return min(self.successor_histogram), max(self.successor_histogram)


def theorem_audit(D: StrongDichotomy, results=None, measure: str = "score", strict: bool = True) -> AuditReport:
    """Check every ``(y, z)`` against the bounds ``k^2 <= n <= 2k^2 - k``.

    ``measure="score"`` bounds the admitted set of each maximal projection
    (``max_score``); ``measure="union"`` bounds the aggregated successor set.
    Both are always reported; ``strict`` raises :class:`BoundViolation` for the
    chosen measure.
    """
    if measure not in ("score", "union"):
        raise ValueError(f"unknown measure {measure!r}")
    k = D.k
    lo, hi = k * k, 2 * k * k - k
    if results is None:
        results = projection_table(D)
    scores, sizes = Counter(), Counter()
    bad_score, bad_union = [], []
    for r in results:
        scores[r.max_score] += 1
        sizes[len(r.successors)] += 1
        if not lo <= r.max_score <= hi:
            bad_score.append((r.y, r.z, r.max_score))
        if not lo <= len(r.successors) <= hi:
            bad_union.append((r.y, r.z, len(r.successors)))
    report = AuditReport(
        modulus=D.modulus,
        consonances=D.X,
        lower=lo,
        upper=hi,
        pairs=len(results),
        score_histogram=dict(sorted(scores.items())),
        successor_histogram=dict(sorted(sizes.items())),
        score_violations=bad_score,
        successor_violations=bad_union,
    )
    offenders = bad_score if measure == "score" else bad_union
    if strict and offenders:
        raise BoundViolation(offenders)
    return report
