"""The eleven acceptance criteria, each timed against its budget.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary
lists one PASS/FAIL line per criterion.
"""

import itertools
import random

import pytest

from rosekit import abelian as ab
from rosekit.abelian import FgAbelianGroup
from rosekit.chain import betti_numbers, euler_characteristic, homology
from rosekit.covers import CoverSpec, build_cover, deck_action_on_h1, subnormal_series
from rosekit.grouppres import (
    FiniteAbelianGroup,
    FinitePresentation,
    catalog,
    epimorphisms_to,
    epimorphisms_to_cyclic,
    presentation_complex,
    reidemeister_schreier,
)
from rosekit.modrep import cohomology_zp, decompose, regular_block
from rosekit.roselab import deficiency_ledger, rose_check, verify_carlsson

from criteria import criterion

PRIMES = (2, 3, 5)


def catalog_bases():
    bases = [catalog("free", n=n) for n in (1, 2, 3)]
    bases += [catalog("cyclic", m=m) for m in (2, 3, 4, 5, 6)]
    for r, d in [(1, (2,)), (1, (3,)), (0, (6,)), (0, (2, 4)), (2, (2,)), (1, (2, 2)), (0, (3, 3)), (1, (6,))]:
        bases.append(catalog("abelian", r=r, d=d))
    bases += [catalog("torus"), catalog("klein"), FinitePresentation.from_strings(2, ["b b b"], "F1 x Z3")]
    return bases


def invariant_groups(max_len, orders=(2, 3, 4, 6, 12)):
    for k in range(max_len + 1):
        for d in itertools.combinations_with_replacement(orders, k):
            if all(d[i + 1] % d[i] == 0 for i in range(k - 1)):
                yield d


def test_01_petal_formula():
    with criterion(1, "petal formula on free presentations", 1.0):
        count = 0
        for n in (2, 3, 4):
            P = catalog("free", n=n)
            for p in PRIMES:
                for phi in epimorphisms_to_cyclic(P, p):
                    cc = build_cover(CoverSpec.from_epimorphism(P, phi))
                    assert betti_numbers(cc.complex, p) == (1, p * (n - 1) + 1, 0)
                    count += 1
        assert count == sum(p ** n - 1 for n in (2, 3, 4) for p in PRIMES)


def test_02_rose_biconditional():
    with criterion(2, "rose(base) == rose(cover) on catalog x Z_p", 10.0):
        cases = 0
        kinds = set()
        for P in catalog_bases():
            K = presentation_complex(P)
            for p in PRIMES:
                base = rose_check(K, p).is_rose
                for phi in epimorphisms_to_cyclic(P, p):
                    cover = rose_check(build_cover(CoverSpec.from_epimorphism(P, phi)).complex, p).is_rose
                    assert base == cover, (P.name, p, phi.images)
                    kinds.add(base)
                    cases += 1
        assert cases > 100 and kinds == {True, False}


def test_03_euler_relation():
    with criterion(3, "chi(cover) = |G| chi(base), including (Z_p)^2"):
        targets = [FiniteAbelianGroup(o) for o in [(2,), (3,), (5,), (4,), (6,), (2, 2), (3, 3)]]
        seen_rank2 = 0
        for P in catalog_bases():
            chi = euler_characteristic(presentation_complex(P))
            for G in targets:
                for phi in itertools.islice(epimorphisms_to(P, G), 12):
                    cc = build_cover(CoverSpec.from_epimorphism(P, phi))
                    assert euler_characteristic(cc.complex) == G.order * chi
                    assert sum((-1) ** i * b for i, b in enumerate(homology(cc.complex).betti)) == G.order * chi
                    seen_rank2 += len(G.orders) == 2
        assert seen_rank2 > 20


def test_04_subnormal_series():
    with criterion(4, "series of <a,b|> at p=2, depth 4", 5.0):
        stages = subnormal_series(catalog("free", n=2), 2, 4)
        assert [s.b1 for s in stages] == [2, 3, 5, 9, 17]
        assert [s.b2 for s in stages] == [0] * 5


def test_05_carlsson_bounds():
    with criterion(5, "Carlsson bounds for (Z_p)^r, r in {1,2}, p in {2,3}"):
        checked = 0
        for P in catalog_bases():
            K = presentation_complex(P)
            for p in (2, 3):
                if betti_numbers(K, p)[2] != 0:
                    continue
                for r in (1, 2):
                    G = FiniteAbelianGroup((p,) * r)
                    for phi in itertools.islice(epimorphisms_to(P, G), 8):
                        rep = verify_carlsson(CoverSpec.from_epimorphism(P, phi), p)
                        assert rep.hypothesis_checkable and rep.ok, rep.violations
                        assert rep.b1_cover >= 2 ** r - 1 and rep.betti_sum >= 2 ** r
                        m = rose_check(K, p).petals
                        assert rep.sharp_value == p ** r * (m - 1) + 1
                        checked += 1
        assert checked > 30


def test_06_cohomology_table():
    with criterion(6, "H^j(Z_p; R_k) table, p in {2,3,5,7}, j <= 6"):
        for p in (2, 3, 5, 7):
            for k in range(1, p + 1):
                dims = tuple(cohomology_zp(regular_block(k, p), j) for j in range(7))
                assert dims == ((1,) * 7 if k < p else (1,) + (0,) * 6)


def test_07_deck_claim():
    with criterion(7, "deck action on H_1: l_1 = 1, l_p = -chi(base)"):
        checked = 0
        for P in catalog_bases():
            K = presentation_complex(P)
            chi = euler_characteristic(K)
            for p in PRIMES:
                if not rose_check(K, p).is_rose:
                    continue
                for phi in epimorphisms_to_cyclic(P, p):
                    cc = build_cover(CoverSpec.from_epimorphism(P, phi))
                    dec = decompose(deck_action_on_h1(cc, (1,), p))
                    assert dec.multiplicities == (1,) + (0,) * (p - 2) + (-chi,), (P.name, p, phi.images)
                    checked += 1
        assert checked > 50


def test_08_abelian_sweep():
    with criterion(8, "abelian closed forms vs Kunneth oracle", 30.0):
        count = 0
        for r in range(4):
            for d in invariant_groups(3):
                A = FgAbelianGroup(r, d)
                H = ab.kunneth_oracle(A)
                M = ab.schur_multiplicator(A)
                assert (H.betti[1], H.torsion[1]) == (r, d)
                assert (H.betti[2], H.torsion[2]) == (M.r, M.d)
                assert ab.min_generators_h2(A) == M.r + M.k
                assert ab.deficiency(A) == r - (r + len(d)) * (r + len(d) - 1) // 2
                assert ab.betti(A, "Q", 1) == H.betti[1] and ab.betti(A, "Q", 2) == H.betti[2]
                gq = ab.gap(A, "Q")
                for p in (2, 3, 5, 7):
                    Hp = ab.kunneth_oracle(A, p=p)
                    assert (ab.betti(A, p, 1), ab.betti(A, p, 2)) == Hp.betti[1:3]
                    gp = ab.gap(A, p)
                    assert gp.gap == gp.b1 - gp.b2 - gp.deficiency >= 0
                    t2 = sum(1 for x in M.d if x % p == 0)
                    assert gp.gap == gq.gap - t2
                    assert ab.relation_gap_check(A, p)
                count += 1
        assert count == 4 * len(list(invariant_groups(3)))


def test_09_named_values():
    with criterion(9, "named values"):
        assert ab.gap(FgAbelianGroup(0, (2, 2)), 3).gap == 1
        assert ab.deficiency(FgAbelianGroup(0, (2, 4))) == -1
        for r in range(4):
            for d in invariant_groups(3):
                A = FgAbelianGroup(r, d)
                free_or_cyclic = len(d) == 0 or (r == 0 and len(d) == 1)
                assert (ab.gap(A, "Q").gap == 0) == free_or_cyclic


def _random_presentation(rng):
    n = rng.randint(1, 3)
    m = rng.randint(0, 3)
    rels = []
    for _ in range(m):
        length = rng.randint(1, 8)
        rels.append(tuple((rng.randrange(n), rng.choice((1, -1))) for _ in range(length)))
    return FinitePresentation(n, tuple(rels))


RS_TARGETS = [(2,), (3,), (4,), (5,), (6,), (7,), (8,), (9,), (2, 2), (3, 3), (2, 4)]


def test_10_reidemeister_schreier_vs_cover():
    with criterion(10, "RS presentation vs cover complex homology, 20 pairs", 30.0):
        rng = random.Random(20240)
        pairs = 0
        while pairs < 20:
            P = _random_presentation(rng)
            G = FiniteAbelianGroup(rng.choice(RS_TARGETS))
            epis = list(itertools.islice(epimorphisms_to(P, G), 50))
            if not epis:
                continue
            phi = rng.choice(epis)
            H_rs = homology(presentation_complex(reidemeister_schreier(P, phi)))
            H_cov = homology(build_cover(CoverSpec.from_epimorphism(P, phi)).complex)
            assert H_rs.betti[1:3] == H_cov.betti[1:3]
            assert H_rs.torsion[1:3] == H_cov.torsion[1:3]
            pairs += 1


def test_11_morse_inequality():
    with criterion(11, "def <= b_1 - b_2 on 100 random presentations"):
        rng = random.Random(11)
        for _ in range(100):
            n, m = rng.randint(1, 4), rng.randint(0, 4)
            rels = tuple(tuple((rng.randrange(n), rng.choice((1, -1))) for _ in range(rng.randint(1, 12)))
                         for _ in range(m))
            P = FinitePresentation(n, rels)
            rep = deficiency_ledger(P, ["Q", 2, 3])
            assert rep.ok, rep.violations
            for row in rep.fields:
                assert P.deficiency <= row.b1 - row.b2


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
