from itertools import product

import pytest

from counterpoint.dichotomy import deformed_pairs
from counterpoint.errors import BoundViolation, DissonantDownbeat
from counterpoint.oracle import first_species_oracle
from counterpoint.projections import (
    ProjectionResult,
    candidates,
    comm_condition,
    first_species_successors,
    first_species_symmetries,
    projection_table,
    remark_witness,
    score,
    second_species_projections,
    second_species_successors,
    t2_from_ell,
    theorem_audit,
)
from counterpoint.ring import FirstInterval, Projection, TwoInterval, units

G1 = Projection(s=7, modulus=12)
G2 = Projection(s=1, w1=6, t2=6, modulus=12)
G3 = Projection.from_matrix(((7, 0, 0), (6, 7, 0)), modulus=12, t2=6)
G6 = Projection.from_matrix(((5, 0, 0), (8, 5, 0)), modulus=12, t2=8)
G7 = Projection.from_matrix(((11, 0, 0), (0, 11, 8)), modulus=12)


def test_comm_condition_examples(classical):
    assert comm_condition(G1, classical)
    assert comm_condition(Projection(s=1, modulus=12), classical)
    assert not comm_condition(Projection(s=1, t2=1, modulus=12), classical)


def test_t2_from_ell_examples(classical):
    assert classical.polarity(7) == 1
    assert t2_from_ell(7, 7, 0, 0, 7, classical) == 0 == G1.t2
    assert classical.polarity(4) == 10
    assert t2_from_ell(4, 1, 0, 6, 4, classical) == 6 == G2.t2
    with pytest.raises(ValueError):
        t2_from_ell(4, 1, 0, 6, 5, classical)


@pytest.mark.parametrize("y", [0, 3, 4, 7, 8, 9])
def test_remark_witness(classical, y):
    g = remark_witness(y, classical)
    assert g.t2 == (-classical.v * classical.u) % 12
    assert comm_condition(g, classical)
    for z in range(12):
        # condition 1: the downbeat is a deformed dissonance
        assert (0, y) not in deformed_pairs(g.s, g.w1, g.w2, g.t2, z, classical.X, 12)
        assert g in candidates(y, z, classical)


def test_score_examples(classical):
    assert score(G1, 0, classical) == 60
    assert score(Projection(s=1, modulus=12), 5, classical) == 72
    for s in units(12):
        assert score(Projection(s=s, w1=5, t2=3, modulus=12), 2, classical) == 36


@pytest.mark.parametrize("n", [6, 8])
def test_score_matches_materialized_count_everywhere(n):
    from counterpoint.dichotomy import enumerate_strong

    D = enumerate_strong(n)[0]
    for s, w1, w2, t2, z in product(units(n), range(n), range(n), range(n), range(n)):
        g = Projection(s=s, w1=w1, w2=w2, t2=t2, modulus=n)
        pts = deformed_pairs(s, w1, w2, t2, z, D.X, n)
        assert score(g, z, D) == sum(1 for _, x in pts if x in D.X)


@pytest.mark.parametrize("z", [0, 1, 6, 7])
def test_score_matches_materialized_count_12(classical, z):
    X = set(classical.X)
    for s, w1, w2, t2 in product(units(12), range(12), range(12), range(12)):
        g = Projection(s=s, w1=w1, w2=w2, t2=t2, modulus=12)
        pts = deformed_pairs(s, w1, w2, t2, z, classical.X, 12)
        assert score(g, z, classical) == sum(1 for _, x in pts if x in X)


@pytest.mark.parametrize(
    "y, z, g",
    [(7, 0, G1), (4, 6, G2), (8, 3, G3), (9, 4, G6), (3, 5, G7)],
    ids=["g1", "g2", "g3", "g6", "g7"],
)
def test_published_projections_are_maximal(classical, y, z, g):
    res = second_species_projections(y, z, classical)
    assert g in res.projections
    assert score(g, z, classical) == res.max_score


def test_result_invariants(classical):
    X = set(classical.X)
    for y, z in product(classical.X, range(12)):
        res = second_species_projections(y, z, classical)
        union = set()
        for g in res.projections:
            assert comm_condition(g, classical)
            pts = deformed_pairs(g.s, g.w1, g.w2, g.t2, z, classical.X, 12)
            assert (0, y) not in pts
            assert score(g, z, classical) == res.max_score
            union |= {p for p in pts if p[1] in X}
        assert {(e.c, e.x) for e in res.successors} == union
        assert list(res.projections) == sorted(res.projections)


def test_dissonant_downbeat_rejected(classical):
    with pytest.raises(DissonantDownbeat):
        second_species_projections(2, 0, classical)
    with pytest.raises(DissonantDownbeat):
        second_species_successors(TwoInterval(7, 2, 11), classical)


def test_example_successor(classical):
    succ = second_species_successors(TwoInterval(2, 7, 0), classical)
    assert FirstInterval(5, 4) in succ
    assert all(e.x in classical.X for e in succ)
    assert FirstInterval(4, 11) not in second_species_successors(TwoInterval(5, 9, 4), classical)


def test_successors_translate_with_cantus(classical):
    base = second_species_successors(TwoInterval(0, 3, 5), classical)
    for c in range(12):
        moved = second_species_successors(TwoInterval(c, 3, 5), classical)
        assert moved == {e.translate(dc=c) for e in base}


def test_parallel_fifths(classical):
    succ = first_species_successors(FirstInterval(0, 7), classical)
    assert all(not (e.x == 7 and e.c != 0) for e in succ)
    assert first_species_symmetries(7, classical) == first_species_oracle(7, classical)


def test_first_species_golden(classical):
    # verdict frozen from first_species_oracle: 3+e.4 follows 0+e.7
    assert FirstInterval(3, 4) in first_species_oracle(7, classical).successors
    assert FirstInterval(3, 4) in first_species_successors(FirstInterval(0, 7), classical)


@pytest.mark.parametrize("y", [0, 3, 4, 7, 8, 9])
def test_first_species_is_w2_zero_slice(classical, y):
    fs = first_species_symmetries(y, classical)
    assert all(g.w2 == 0 for g in fs.symmetries)
    for z in range(12):
        sliced = {g: sc for g, sc in candidates(y, z, classical).items() if g.w2 == 0}
        best = max(sliced.values())
        assert best == fs.max_score
        assert tuple(sorted(g for g, sc in sliced.items() if sc == best)) == fs.symmetries


def test_roundtrip_dict(classical):
    res = second_species_projections(4, 6, classical)
    assert ProjectionResult.from_dict(res.to_dict()) == res


def test_projection_table_parallel_matches_serial(classical):
    serial = projection_table(classical)
    assert [(r.y, r.z) for r in serial] == list(product(classical.X, range(12)))
    assert projection_table(classical, threads=2) == serial


def test_audit_scores_within_bounds(classical):
    rep = theorem_audit(classical)
    assert rep.pairs == 72
    assert (rep.lower, rep.upper) == (36, 66)
    lo, hi = rep.score_range
    assert 36 <= lo and hi <= 66
    assert not rep.score_violations


def test_audit_union_measure_raises(classical):
    # the aggregated successor set of some pairs exceeds 2k^2 - k
    with pytest.raises(BoundViolation) as info:
        theorem_audit(classical, measure="union")
    assert all(count > 66 for _, _, count in info.value.offenders)
