"""Brute-force reference for the projection search.

Nothing here uses the closed-form conditions or the chi kernel: every
candidate ``(t2, s, w1, w2)`` is tested by applying maps pointwise to the whole
of Z_n[e1, e2] and counting materialized sets.  It exists to cross-check
:mod:`counterpoint.projections`.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .dichotomy import StrongDichotomy
from .errors import DissonantDownbeat
from .projections import FirstSpeciesResult, ProjectionResult
from .ring import FirstInterval, Projection, units


def _params(n: int):
    us = np.array(units(n))
    t2, s, w1, w2 = np.meshgrid(np.arange(n), us, np.arange(n), np.arange(n), indexing="ij")
    return t2.ravel(), s.ravel(), w1.ravel(), w2.ravel()


def _apply(t2, s, w1, w2, c, x, y, n, frame):
    # T^frame o g o T^-frame with the translations acting on the cantus only
    cc = c - frame
    return (s * cc + frame) % n, (s * (w1 * cc + x + w2 * y) + t2) % n


@lru_cache(maxsize=64)
def _commuting(D: StrongDichotomy, frame: int, first_species: bool) -> np.ndarray:
    """Pointwise test of ``g o p^c == p^c_Delta o g`` for every candidate."""
    n, u, v = D.modulus, D.u, D.v
    t2, s, w1, w2 = (a[:, None] for a in _params(n))
    grid = np.indices((n, n, n)).reshape(3, -1)
    if first_species:
        grid[2] = 0
    c, x, y = (a[None, :] for a in grid)
    ok = np.ones(t2.shape[0], dtype=bool)
    # chunk over candidates to keep memory flat
    step = 512
    for lo in range(0, t2.shape[0], step):
        sl = slice(lo, lo + step)
        a = (t2[sl], s[sl], w1[sl], w2[sl])
        pc = (v * c + frame * (1 - v)) % n
        left = _apply(*a, pc, (v * x + u) % n, (v * y + u) % n, n, frame)
        gc, gx = _apply(*a, c, x, y, n, frame)
        right = ((v * gc + frame * (1 - v)) % n, (v * gx + u) % n)
        ok[sl] = np.all((left[0] == right[0]) & (left[1] == right[1]), axis=1)
    if first_species:
        ok &= _params(n)[3] == 0
    return ok


@lru_cache(maxsize=16)
def _deformed_masks(D: StrongDichotomy, z: int, frame: int) -> np.ndarray:
    """Boolean (candidates, n*n) masks of ``g X[e1, e2.z]`` indexed by ``cantus*n + interval``."""
    n = D.modulus
    t2, s, w1, w2 = (a[:, None] for a in _params(n))
    cs, ls = np.meshgrid(np.arange(n), np.array(D.X), indexing="ij")
    c, x = cs.ravel()[None, :], ls.ravel()[None, :]
    gc, gx = _apply(t2, s, w1, w2, c, x, z, n, frame)
    masks = np.zeros((t2.shape[0], n * n), dtype=bool)
    masks[np.arange(t2.shape[0])[:, None], gc * n + gx] = True
    masks.flags.writeable = False
    return masks


def _search(y: int, z: int, D: StrongDichotomy, frame: int, first_species: bool):
    n = D.modulus
    if y % n not in D.X:
        raise DissonantDownbeat(f"downbeat interval {y} is not consonant")
    y, z = y % n, z % n
    t2, s, w1, w2 = _params(n)
    masks = _deformed_masks(D, z, frame)
    consonant = np.zeros(n * n, dtype=bool)
    for c in range(n):
        consonant[c * n + np.array(D.X)] = True
    admitted = masks & consonant
    keep = _commuting(D, frame, first_species) & ~masks[:, frame % n * n + y]
    scores = np.where(keep, admitted.sum(axis=1), -1)
    best = int(scores.max())
    idx = np.flatnonzero(scores == best)
    chosen = tuple(sorted(
        Projection(s=int(s[i]), w1=int(w1[i]), w2=int(w2[i]), t2=int(t2[i]), modulus=n) for i in idx
    ))
    cells = np.flatnonzero(admitted[idx].any(axis=0))
    succ = frozenset(FirstInterval(int(q) // n, int(q) % n, n) for q in cells)
    return best, chosen, succ


def projections_oracle(y: int, z: int, D: StrongDichotomy, cantus: int = 0) -> ProjectionResult:
    """Reference result for the 2-interval ``cantus + e1.y + e2.z``.

    For ``cantus != 0`` each candidate is conjugated by the cantus translation and
    checked against ``p^cantus``; projections are reported by their cantus-0
    parameters and successors at the absolute cantus.
    """
    best, chosen, succ = _search(y, z, D, cantus, first_species=False)
    return ProjectionResult(y % D.modulus, z % D.modulus, D.modulus, best, chosen, succ)


def first_species_oracle(y: int, D: StrongDichotomy) -> FirstSpeciesResult:
    """Reference first-species result: the ``w2 = 0`` slice, upbeat ignored."""
    best, chosen, succ = _search(y, 0, D, 0, first_species=True)
    return FirstSpeciesResult(y % D.modulus, D.modulus, best, chosen, succ)
