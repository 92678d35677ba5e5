from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rosekit import abelian as ab
from rosekit.abelian import FgAbelianGroup
from rosekit.chain import homology
from rosekit.grouppres import catalog, presentation_complex

G = FgAbelianGroup


def test_canonical_form():
    assert G.from_cyclic_orders([6, 4]) == G(0, (2, 12))
    assert G.from_cyclic_orders([0, 3, 1, 0]) == G(2, (3,))
    assert ab.parse_abelian("Z + Z_3") == G(1, (3,))
    with pytest.raises(ValueError):
        G(0, (4, 6))
    with pytest.raises(ValueError):
        ab.parse_abelian("Q_8")


def test_deficiency_examples():
    assert ab.deficiency(G(2)) == 1
    assert ab.deficiency(G(0, (2, 4))) == -1
    assert ab.deficiency(G(0, (9,))) == 0
    assert ab.deficiency((0, (4, 2))) == -1


def test_schur_examples():
    assert ab.schur_multiplicator(G(0, (2, 2))) == G(0, (2,))
    assert ab.schur_multiplicator(G(1)) == G(0)
    assert ab.schur_multiplicator(G(3)) == G(3)


def test_min_generators_examples():
    assert ab.min_generators_h2(G(0, (2, 2))) == 1
    assert ab.min_generators_h2(G(0, (5,))) == 0
    assert ab.min_generators_h2(G(1, (3,))) == 1


def test_betti_examples():
    A = G(1, (3,))
    assert ab.betti(A, 3, 1) == 2
    assert ab.betti(A, 2, 1) == 1
    for r in range(4):
        assert ab.betti(G(r, (2, 4)), "Q", 2) == comb(r, 2)
    with pytest.raises(ValueError):
        ab.betti(A, 4, 1)


def test_gap_examples():
    assert ab.gap(G(0, (5, 5)), 2).gap == 1
    assert ab.gap(G(0, (2, 2)), 3).gap == 1
    assert ab.gap(G(1, (3, 9)), 3).gap == 0  # l = 1
    for p in ("Q", 2, 3):
        assert ab.gap(G(3), p).gap == 0


def test_gap_report_dict():
    d = ab.gap(G(1, (2,)), 2).as_dict()
    assert d == {"group": "Z + Z_2", "r": 1, "d": [2], "field": 2, "b1": 2, "b2": 2,
                 "deficiency": 0, "gap": 0}


def test_relation_gap_examples():
    # both sides evaluated: gap(F_2) = 0, gap(Q) = 1, T_2 = Z_2 so 0 = 1 - 1
    assert ab.gap(G(0, (2, 2)), 2).gap == 0
    assert ab.gap(G(0, (2, 2)), "Q").gap == 1
    assert ab.relation_gap_check(G(0, (2, 2)), 2)
    assert ab.relation_gap_check(G(3), 5)


def test_realizable_examples():
    assert ab.realizable_as(G(1, (3,)), "rose", 2)
    assert not ab.realizable_as(G(2), "rose", 2)
    assert ab.realizable_as(G(0, (6,)), "acyclic", 5)
    assert not ab.realizable_as(G(0, (6,)), "acyclic", 3)
    with pytest.raises(ValueError):
        ab.realizable_as(G(1), "sphere", 2)


def test_oracle_examples():
    H = ab.kunneth_oracle(G(0, (2, 2)))
    assert H.torsion[1] == (2, 2) and H.betti[1] == 0
    assert H.torsion[2] == (2,) and H.betti[2] == 0
    assert ab.kunneth_oracle(G(2)).betti[2] == 1
    H3 = ab.kunneth_oracle(G(0, (3,)), p=3)
    assert H3.betti[1] == H3.betti[2] == 1
    with pytest.raises(ValueError):
        ab.kunneth_oracle(G(1), max_degree=2)


def test_oracle_sees_degree_three():
    # H_3(Z_2 + Z_2) = Z_2^3 (two tensor terms and one Tor term)
    H = ab.kunneth_oracle(G(0, (2, 2)), max_degree=5)
    assert H.betti[3] == 0 and H.torsion[3] == (2, 2, 2)


groups = st.tuples(st.integers(0, 3), st.lists(st.sampled_from([2, 3, 4, 6, 12]), max_size=3)).map(
    lambda t: G(t[0], tuple(sorted(t[1]))) if all(b % a == 0 for a, b in zip(sorted(t[1]), sorted(t[1])[1:]))
    else G.from_cyclic_orders([0] * t[0] + t[1]))


@settings(max_examples=60, deadline=None)
@given(groups, st.sampled_from(["Q", 2, 3, 5, 7]))
def test_gap_consistency(A, field):
    rep = ab.gap(A, field)
    assert rep.gap == rep.b1 - rep.b2 - rep.deficiency >= 0
    if field != "Q":
        assert ab.relation_gap_check(A, field)
        if ab.gap(A, "Q").gap == 0:
            assert rep.gap == 0


@settings(max_examples=40, deadline=None)
@given(groups)
def test_gap_q_zero_iff_free_or_cyclic(A):
    assert (ab.gap(A, "Q").gap == 0) == (A.k == 0 or (A.r == 0 and A.k == 1))


@settings(max_examples=25, deadline=None)
@given(st.tuples(st.integers(0, 2), st.lists(st.sampled_from([2, 3, 4, 6]), max_size=2)))
def test_canonical_presentation_realizes_deficiency(t):
    A = G.from_cyclic_orders([0] * t[0] + t[1])
    P = catalog("abelian", r=A.r, d=A.d)
    assert P.deficiency == ab.deficiency(A)
    H = homology(presentation_complex(P))
    assert (H.betti[1], H.torsion[1]) == (A.r, A.d)
