"""Dichotomies of Z_n, their polarities, and the intersection kernel chi."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import gcd
from typing import Iterable

from .errors import NotAUnit, NotStrong
from .ring import AffineMap, FirstInterval, Projection, check_modulus, units

__all__ = [
    "Dichotomy",
    "StrongDichotomy",
    "CLASSICAL_CONSONANCES",
    "classical",
    "find_polarity",
    "polarity_candidates",
    "enumerate_strong",
    "chi",
    "deformed_set",
    "deformed_pairs",
]

CLASSICAL_CONSONANCES = (0, 3, 4, 7, 8, 9)


@dataclass(frozen=True)
class Dichotomy:
    """A split of Z_n into consonances ``X`` and dissonances ``Y``, each of size n/2."""

    X: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        n = check_modulus(self.modulus)
        xs = tuple(sorted({x % n for x in self.X}))
        if len(xs) != n // 2 or len(xs) != len(self.X):
            raise ValueError(f"consonance set must hold {n // 2} distinct residues mod {n}, got {list(self.X)}")
        object.__setattr__(self, "X", xs)

    @property
    def k(self) -> int:
        return self.modulus // 2

    @property
    def Y(self) -> tuple[int, ...]:
        xs = set(self.X)
        return tuple(a for a in range(self.modulus) if a not in xs)

    def __contains__(self, a: int) -> bool:
        return a % self.modulus in self.X

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.X)) + "}"


@dataclass(frozen=True)
class StrongDichotomy:
    """A dichotomy together with its unique polarity ``T^u.v``."""

    base: Dichotomy
    polarity: AffineMap

    def __post_init__(self):
        if self.polarity.modulus != self.base.modulus:
            raise ValueError("polarity and dichotomy live in different rings")
        found = find_polarity(self.base)
        if found != self.polarity:
            raise ValueError(f"{self.polarity} is not the polarity of {self.base}; expected {found}")

    @classmethod
    def from_consonances(cls, X: Iterable[int], modulus: int) -> StrongDichotomy:
        base = Dichotomy(tuple(X), modulus)
        return cls(base, find_polarity(base))

    @property
    def modulus(self) -> int:
        return self.base.modulus

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def X(self) -> tuple[int, ...]:
        return self.base.X

    @property
    def Y(self) -> tuple[int, ...]:
        return self.base.Y

    @property
    def u(self) -> int:
        return self.polarity.u

    @property
    def v(self) -> int:
        return self.polarity.v

    def is_consonant(self, a: int) -> bool:
        return a in self.base

    def __str__(self) -> str:
        return f"{self.base} {self.polarity}"


def classical() -> StrongDichotomy:
    """The classical consonances {0,3,4,7,8,9} in Z_12 with polarity T^2.5."""
    return StrongDichotomy.from_consonances(CLASSICAL_CONSONANCES, 12)


def polarity_candidates(d: Dichotomy) -> list[AffineMap]:
    """Every affine involution of Z_n mapping X onto Y, by exhaustive scan."""
    n = d.modulus
    xs, ys = frozenset(d.X), frozenset(d.Y)
    found = []
    for v in units(n):
        if v * v % n != 1:
            continue
        for u in range(n):
            if u * (1 + v) % n:
                continue
            if frozenset((v * x + u) % n for x in xs) == ys:
                found.append(AffineMap(u, v, n))
    return found


def find_polarity(d: Dichotomy) -> AffineMap:
    """The unique affine involution exchanging X and Y.

    Raises :class:`NotStrong` with ``reason="none"`` or ``reason="multiple"``.
    The scan covers all ``n * phi(n)`` affine maps; maps that fail ``v^2 = 1``
    or ``u(1+v) = 0`` cannot be involutions and are skipped before the set test.
    """
    found = polarity_candidates(d)
    if not found:
        raise NotStrong("none")
    if len(found) > 1:
        raise NotStrong("multiple", found)
    return found[0]


def _involutions(n: int) -> list[AffineMap]:
    return [
        AffineMap(u, v, n)
        for v in units(n)
        if v * v % n == 1
        for u in range(n)
        if u * (1 + v) % n == 0
    ]


def _transversal_candidates(n: int) -> set[tuple[int, ...]]:
    out = set()
    for p in _involutions(n):
        if any(p(a) == a for a in range(n)):
            continue
        pairs = sorted({tuple(sorted((a, p(a)))) for a in range(n)})
        for picks in product((0, 1), repeat=len(pairs)):
            out.add(tuple(sorted(pair[i] for pair, i in zip(pairs, picks))))
    return out


def enumerate_strong(modulus: int, method: str = "auto") -> list[StrongDichotomy]:
    """All strong dichotomies of Z_n, sorted lexicographically by X.

    ``method="subsets"`` scans every n/2-subset; ``"involutions"`` only scans
    transversals of the orbit pairs of fixed-point-free affine involutions,
    which are the only sets that can have a polarity at all.  ``"auto"``
    switches to the latter above n = 16.
    """
    n = check_modulus(modulus)
    if method == "auto":
        method = "subsets" if n <= 16 else "involutions"
    if method == "subsets":
        pool: Iterable[tuple[int, ...]] = combinations(range(n), n // 2)
    elif method == "involutions":
        pool = sorted(_transversal_candidates(n))
    else:
        raise ValueError(f"unknown method {method!r}")
    result = []
    for xs in pool:
        d = Dichotomy(xs, n)
        found = polarity_candidates(d)
        if len(found) == 1:
            result.append(StrongDichotomy(d, found[0]))
    return result


@lru_cache(maxsize=256)
def _chi_table(X: tuple[int, ...], n: int) -> dict[int, tuple[int, ...]]:
    xs = frozenset(X)
    return {
        s: tuple(sum(1 for x in X if (s * x + t) % n in xs) for t in range(n))
        for s in units(n)
    }


def chi(t: int, s: int, X: Iterable[int], modulus: int) -> int:
    """``|T^t.s X  ∩  X|``: how many consonances stay consonant under ``x -> s*x + t``."""
    n = modulus
    if gcd(s % n, n) != 1:
        raise NotAUnit(f"{s} is not a unit mod {n}")
    return _chi_table(tuple(sorted(set(a % n for a in X))), n)[s % n][t % n]


def deformed_pairs(s: int, w1: int, w2: int, t2: int, z: int, X, n: int) -> set[tuple[int, int]]:
    """Materialized ``g X[e1, e2.z]`` as ``(cantus, interval)`` pairs (t1 = 0)."""
    return {
        (s * c % n, (s * (w1 * c + l + w2 * z) + t2) % n)
        for c in range(n)
        for l in X
    }


def deformed_set(g: Projection, z: int, D: StrongDichotomy, check: bool = False) -> frozenset[FirstInterval]:
    """The deformed consonances ``g(Z_n + e1.X + e2.z)`` in Z_n[e1].

    With ``check=True`` the materialized set is compared against the fibre
    decomposition ``U_r  r + e1.(T^(w1*r + s*w2*z + t2) sX)``.
    """
    n = D.modulus
    if g.modulus != n:
        raise ValueError("projection and dichotomy live in different rings")
    pts = {
        ((g.s * c + g.t1) % n, (g.s * (g.w1 * c + l + g.w2 * z) + g.t2) % n)
        for c in range(n)
        for l in D.X
    }
    if check and g.t1 == 0:
        fibres = {
            (r, (g.s * x + g.w1 * r + g.w2 * g.s * z + g.t2) % n)
            for r in range(n)
            for x in D.X
        }
        assert fibres == pts, "fibre decomposition disagrees with materialized set"
    return frozenset(FirstInterval(c, x, n) for c, x in pts)
