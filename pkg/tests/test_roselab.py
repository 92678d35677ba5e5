import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rosekit.abelian import FgAbelianGroup
from rosekit.chain import ChainComplex, pseudo_projective_plane
from rosekit.covers import CoverSpec
from rosekit.grouppres import (
    FiniteAbelianGroup,
    FinitePresentation,
    catalog,
    epimorphisms_to,
    parse_epimorphism,
    presentation_complex,
)
from rosekit.roselab import (
    QuotientData,
    deficiency_ledger,
    rose_check,
    screen_d2_conditions,
    verify_carlsson,
    verify_theorem1,
)


def spec(P, text):
    return CoverSpec.from_epimorphism(P, parse_epimorphism(text, P.n))


def cond(report, prefix):
    (c,) = [c for c in report.conditions if c.name.startswith(prefix)]
    return c


# rose_check


def test_wedge_is_rose():
    for p in (2, 3, 5):
        v = rose_check(ChainComplex([1, 3], [[[0, 0, 0]]]), p)
        assert v.is_rose and v.petals == 3 and v.euler == -2
        assert v.h1_free_rank == 3 and v.h1_torsion == () and not v.h1_has_p_torsion


def test_p6_mod5_is_acyclic_not_rose():
    v = rose_check(pseudo_projective_plane(6), 5)
    assert v.is_acyclic and not v.is_rose
    assert v.h1_torsion == (6,)
    assert str(v) == "mod-5: acyclic (betti [1, 0, 0], chi 1)"


def test_torus_not_rose():
    v = rose_check(presentation_complex(catalog("torus")), 2)
    assert not v.is_rose and not v.is_acyclic
    assert v.betti == (1, 2, 1)


def test_disconnected_rejected():
    with pytest.raises(ValueError, match="connected"):
        rose_check(ChainComplex([2, 1], [[[0], [0]]]), 2)
    with pytest.raises(ValueError):
        rose_check(pseudo_projective_plane(2), 4)


def test_rose_check_over_field_complex():
    v = rose_check(ChainComplex([1, 2], [[[0, 0]]], p=3), 3)
    assert v.is_rose and v.h1_free_rank is None


def test_rose_h1_structure():
    # Z x Z_3 rose mod 2: H_1 free rank 1, no 2-torsion
    v = rose_check(presentation_complex(FinitePresentation.from_strings(2, ["b b b"])), 2)
    assert v.is_rose and v.petals == 1 and v.h1_torsion == (3,)


# rose preservation


def test_theorem1_free():
    rep = verify_theorem1(spec(catalog("free", n=2), "Z2: a->1, b->0"), 2)
    assert rep.ok and rep.base.petals == 2 and rep.cover.petals == 3
    assert rep.expected_petals == 3
    assert "petals m: 2 -> 3" in str(rep)


def test_theorem1_circle_with_torsion():
    rep = verify_theorem1(spec(FinitePresentation.from_strings(2, ["b b b"]), "Z2: a->1, b->0"), 2)
    assert rep.ok and rep.base.petals == 1 and rep.cover.petals == 1


def test_theorem1_torus():
    rep = verify_theorem1(spec(catalog("torus"), "Z2: a->1, b->0"), 2)
    assert rep.ok and not rep.base.is_rose and not rep.cover.is_rose


def test_theorem1_requires_elementary_target():
    with pytest.raises(ValueError, match="not"):
        verify_theorem1(spec(catalog("free", n=2), "Z4: a->1, b->0"), 2)
    with pytest.raises(ValueError):
        verify_theorem1(spec(catalog("free", n=2), "Z3: a->1, b->0"), 2)


# Carlsson


def test_carlsson_free_rank2():
    rep = verify_carlsson(spec(catalog("free", n=2), "Z2xZ2: a->(1,0), b->(0,1)"), 2)
    assert rep.ok and rep.b1_cover == 5 and rep.betti_sum == 6
    assert (rep.b1_bound, rep.sum_bound, rep.sharp_value) == (3, 4, 5)


def test_carlsson_circle_boundary_case():
    rep = verify_carlsson(spec(catalog("free", n=1), "Z3: a->1"), 3)
    assert rep.ok and rep.b1_cover == 1 and rep.b1_bound == 1


def test_carlsson_three_generators():
    rep = verify_carlsson(spec(catalog("free", n=3), "Z3xZ3: a->(1,0), b->(0,1), c->(0,0)"), 3)
    assert rep.ok and rep.b1_cover == 19 and rep.sharp_value == 19


def test_carlsson_hypothesis_not_checkable():
    rep = verify_carlsson(spec(catalog("torus"), "Z2: a->1, b->0"), 2)
    assert not rep.hypothesis_checkable and rep.ok
    assert "not checkable" in str(rep)


# ledger


def test_ledger_abelian_supplied():
    P = catalog("abelian", r=0, d=(2, 2))
    rep = deficiency_ledger(P, ["Q"], {"Q": 0})
    (row,) = rep.fields
    assert row.gap_upper_bound == 1 and rep.ok


def test_ledger_free():
    rep = deficiency_ledger(catalog("free", n=2), ["Q", 2])
    for row in rep.fields:
        assert (row.deficiency, row.b2, row.morse_holds) == (2, 0, True)
        assert row.gap_upper_bound is None


def test_ledger_swan():
    P = catalog("swan", k=3)
    rep = deficiency_ledger(P, ["Q", 3, 7])
    assert all(r.deficiency == -6 and r.gap_upper_bound is None for r in rep.fields)
    assert rep.ok


def test_ledger_flags_bad_supplied_value():
    rep = deficiency_ledger(catalog("free", n=2), ["Q"], {"Q": 3})
    assert not rep.ok


presentations = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.tuples(st.integers(0, n - 1), st.sampled_from([1, -1])), max_size=12),
                       max_size=4).map(lambda rels: FinitePresentation(n, tuple(map(tuple, rels)))))


@settings(max_examples=60, deadline=None)
@given(presentations)
def test_morse_inequality_random(P):
    assert deficiency_ledger(P, ["Q", 2, 3, 5]).ok


# screening


def test_screen_free_onto_z2_fails():
    rep = screen_d2_conditions(catalog("free", n=2), QuotientData(abelian=FgAbelianGroup(2)))
    assert rep.fails
    assert cond(rep, "gap(Γ; Q)").status is False
    assert cond(rep, "H_1").status is True


def test_screen_swan_identity_quotient():
    P = catalog("swan", k=1)
    rep = screen_d2_conditions(P, QuotientData(presentation=P))
    assert cond(rep, "H_1").status is True
    for prefix in ("kernel N", "gap(Γ", "b_2(Γ", "def(G) >"):
        c = cond(rep, prefix)
        assert c.status is None and c.provenance == "unchecked"


def test_screen_torus_b2_flag():
    rep = screen_d2_conditions(catalog("torus"), QuotientData(abelian=FgAbelianGroup(2)))
    c = cond(rep, "b_2(G; Q)")
    assert c.status is False and "presentation level" in c.detail


def test_screen_supplied_values():
    P = catalog("free", n=2)
    data = QuotientData(presentation=catalog("torus"), supplied={"gap": {"Q": 1}, "perfect_kernel": True})
    rep = screen_d2_conditions(P, data)
    assert cond(rep, "gap(Γ").provenance == "supplied"
    assert cond(rep, "gap(Γ").status is True
    assert cond(rep, "kernel N").status is True


def test_rose_presentations_have_deficiency_equal_petals():
    bases = [catalog("free", n=1), catalog("free", n=3), catalog("cyclic", m=5),
             FinitePresentation.from_strings(2, ["b b b"]), catalog("abelian", r=1, d=(3,)),
             catalog("klein"), catalog("swan", k=1)]
    for P in bases:
        for p in (2, 3, 5):
            v = rose_check(presentation_complex(P), p)
            if v.is_rose:
                assert P.deficiency == v.petals


@pytest.mark.parametrize("orders", [(2,), (3,), (2, 2)])
def test_theorem1_on_random_specs(orders):
    P = FinitePresentation.from_strings(3, ["a b A B c c", "c^3"])
    G = FiniteAbelianGroup(orders)
    for phi in list(epimorphisms_to(P, G))[:6]:
        assert verify_theorem1(CoverSpec.from_epimorphism(P, phi), orders[0]).ok
