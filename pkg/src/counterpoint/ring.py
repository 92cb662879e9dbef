"""Arithmetic in Z_n, its affine group, and the interval rings Z_n[e1], Z_n[e1, e2].

Residues are plain ``int`` values kept reduced to ``[0, n)``; every container
below carries its modulus and reduces its components on construction.  All
intervals use the sweeping orientation (discantus = cantus + interval).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd


from .errors import ModulusError, ModulusMismatch, NotAUnit

__all__ = [
    "check_modulus",
    "units",
    "inverse_unit",
    "AffineMap",
    "FirstInterval",
    "TwoInterval",
    "Projection",
    "affine_apply",
    "affine_compose",
    "affine_inverse",
    "project_apply",
    "polarity1_apply",
    "polarity2_apply",
]


def check_modulus(n: int) -> int:
    """Return ``n`` if it is an even integer >= 4, else raise :class:`ModulusError`."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise ModulusError(f"modulus must be an integer, got {n!r}")
    if n < 4 or n % 2:
        raise ModulusError(f"modulus must be even and >= 4, got {n}")
    return n


def units(n: int) -> list[int]:
    """Residues coprime to ``n``, ascending."""
    if n < 1:
        raise ModulusError(f"modulus must be positive, got {n}")
    return [a for a in range(n) if gcd(a, n) == 1]


def inverse_unit(a: int, n: int) -> int:
    if gcd(a % n, n) != 1:
        raise NotAUnit(f"{a} is not a unit mod {n}")
    return pow(a % n, -1, n)


def _same(n: int, m: int) -> None:
    if n != m:
        raise ModulusMismatch(f"Z_{n} vs Z_{m}")


@dataclass(frozen=True, order=True)
class AffineMap:
    """The map ``x -> v*x + u`` on Z_n, written ``T^u.v``."""

    u: int
    v: int
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "u", self.u % self.modulus)
        object.__setattr__(self, "v", self.v % self.modulus)
        if gcd(self.v, self.modulus) != 1:
            raise NotAUnit(f"linear part {self.v} is not a unit mod {self.modulus}")

    @classmethod
    def identity(cls, modulus: int) -> AffineMap:
        return cls(0, 1, modulus)

    def __call__(self, x: int) -> int:
        return (self.v * x + self.u) % self.modulus

    def __matmul__(self, other: AffineMap) -> AffineMap:
        """Composition: ``(f @ g)(x) == f(g(x))``."""
        _same(self.modulus, other.modulus)
        return AffineMap(self.v * other.u + self.u, self.v * other.v, self.modulus)

    def inverse(self) -> AffineMap:
        vi = inverse_unit(self.v, self.modulus)
        return AffineMap(-vi * self.u, vi, self.modulus)

    def image(self, xs) -> frozenset[int]:
        return frozenset(self(x) for x in xs)

    def is_involution(self) -> bool:
        return self @ self == AffineMap.identity(self.modulus)

    def __str__(self) -> str:
        return f"T^{self.u}.{self.v}"


def affine_apply(f: AffineMap, x: int) -> int:
    return f(x)


def affine_compose(f: AffineMap, g: AffineMap) -> AffineMap:
    return f @ g


def affine_inverse(f: AffineMap) -> AffineMap:
    return f.inverse()


@dataclass(frozen=True, order=True)
class FirstInterval:
    """``c + e1.x``: cantus tone ``c`` with discantus at interval ``x``."""

    c: int
    x: int
    modulus: int = field(default=12)

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "c", self.c % self.modulus)
        object.__setattr__(self, "x", self.x % self.modulus)

    def translate(self, dc: int = 0, dx: int = 0) -> FirstInterval:
        return FirstInterval(self.c + dc, self.x + dx, self.modulus)

    def __str__(self) -> str:
        return f"{self.c}+e1.{self.x}"


@dataclass(frozen=True, order=True)
class TwoInterval:
    """``c + e1.x + e2.y``: one cantus tone against a downbeat and an upbeat interval."""

    c: int
    x: int
    y: int
    modulus: int = field(default=12)

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "c", self.c % self.modulus)
        object.__setattr__(self, "x", self.x % self.modulus)
        object.__setattr__(self, "y", self.y % self.modulus)

    @property
    def downbeat(self) -> FirstInterval:
        return FirstInterval(self.c, self.x, self.modulus)

    def translate(self, dc: int = 0, dx: int = 0, dy: int = 0) -> TwoInterval:
        return TwoInterval(self.c + dc, self.x + dx, self.y + dy, self.modulus)

    def __str__(self) -> str:
        return f"{self.c}+e1.{self.x}+e2.{self.y}"


@dataclass(frozen=True, kw_only=True)
class Projection:
    """Species projection Z_n[e1, e2] -> Z_n[e1].

    Acts as ``c + e1.x + e2.y  ->  (s*c + t1) + e1.(s*(w1*c + x + w2*y) + t2)``;
    as a matrix on column vectors ``(c, x, y)`` the linear part is
    ``(s 0 0; s*w1 s s*w2)``.  Equality is equality of the reduced parameters.
    """

    s: int
    w1: int = 0
    w2: int = 0
    t2: int = 0
    t1: int = 0
    modulus: int = 12

    def __post_init__(self):
        n = check_modulus(self.modulus)
        for name in ("s", "w1", "w2", "t2", "t1"):
            object.__setattr__(self, name, getattr(self, name) % n)
        if gcd(self.s, n) != 1:
            raise NotAUnit(f"s={self.s} is not a unit mod {n}")

    @classmethod
    def from_matrix(cls, matrix, *, modulus: int, t1: int = 0, t2: int = 0) -> Projection:
        """Build from the printed form ``((s, 0, 0), (s*w1, s, s*w2))``."""
        (s, z0, z1), (a, s2, b) = matrix
        if z0 % modulus or z1 % modulus or (s - s2) % modulus:
            raise ValueError(f"not a species projection matrix: {matrix}")
        si = inverse_unit(s, modulus)
        return cls(s=s, w1=si * a, w2=si * b, t1=t1, t2=t2, modulus=modulus)

    @property
    def params(self) -> tuple[int, int, int, int, int]:
        """``(t1, t2, s, w1, w2)``; also the sort key."""
        return (self.t1, self.t2, self.s, self.w1, self.w2)

    @property
    def matrix(self) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
        n, s = self.modulus, self.s
        return ((s, 0, 0), (s * self.w1 % n, s, s * self.w2 % n))

    def __lt__(self, other: Projection) -> bool:
        return (self.modulus, self.params) < (other.modulus, other.params)

    def __call__(self, xi: TwoInterval) -> FirstInterval:
        _same(self.modulus, xi.modulus)
        s = self.s
        return FirstInterval(
            s * xi.c + self.t1,
            s * (self.w1 * xi.c + xi.x + self.w2 * xi.y) + self.t2,
            self.modulus,
        )

    def precompose_shift(self, t: int) -> Projection:
        """``g o T^(e1.s^-1*w1*t + e2.t)``, i.e. the shifted projection ``g^(t)``."""
        return Projection(
            s=self.s,
            w1=self.w1,
            w2=self.w2,
            t1=self.t1,
            t2=self.t2 + (self.w1 + self.s * self.w2) * t,
            modulus=self.modulus,
        )

    def matrix_str(self) -> str:
        (a, b, c), (d, e, f) = self.matrix
        body = f"({a} {b} {c}; {d} {e} {f})"
        shifts = []
        if self.t1:
            shifts.append(str(self.t1))
        if self.t2:
            shifts.append(f"e1.{self.t2}")
        if shifts:
            return f"T^({'+'.join(shifts)}) o {body}"
        return body

    def __str__(self) -> str:
        return f"(t1={self.t1}, t2={self.t2}, s={self.s}, w1={self.w1}, w2={self.w2})"


def project_apply(g: Projection, xi: TwoInterval) -> FirstInterval:
    return g(xi)


def polarity2_apply(p: AffineMap, c: int, xi: TwoInterval) -> TwoInterval:
    """Apply ``p^c = T^(c(1-v) + e1.u + e2.u) o v`` to a 2-interval."""
    _same(p.modulus, xi.modulus)
    u, v = p.u, p.v
    return TwoInterval(v * xi.c + c * (1 - v), v * xi.x + u, v * xi.y + u, p.modulus)


def polarity1_apply(p: AffineMap, c: int, eta: FirstInterval) -> FirstInterval:
    """Apply the canonical polarity ``T^(c(1-v) + e1.u) o v`` on Z_n[e1]."""
    _same(p.modulus, eta.modulus)
    return FirstInterval(p.v * eta.c + c * (1 - p.v), p.v * eta.x + p.u, p.modulus)
