"""Rose/acyclic detection and the verification harnesses built on top of it.

Harness functions return report objects whose ``violations`` list is empty
when every invariant they check holds. A nonempty list means a bug in this
package: the invariants are theorems.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import abelian
from .abelian import FgAbelianGroup
from .chain import ChainComplex, betti_numbers, euler_characteristic, homology, reduce_mod_p
from .covers import CoverSpec, build_cover
from .exactla import is_prime
from .grouppres import FinitePresentation, presentation_complex

__all__ = [
    "RoseVerdict",
    "rose_check",
    "Theorem1Report",
    "verify_theorem1",
    "CarlssonReport",
    "verify_carlsson",
    "FieldLedger",
    "Condition",
    "ScreeningReport",
    "QuotientData",
    "deficiency_ledger",
    "screen_d2_conditions",
    "field_label",
]


def field_label(field) -> str:
    return "Q" if field in (None, "Q", 0) else f"F_{int(field)}"


def _norm_field(field) -> int | None:
    if field in (None, "Q", 0):
        return None
    p = int(field)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


@dataclass(frozen=True)
class RoseVerdict:
    p: int
    is_rose: bool
    is_acyclic: bool
    petals: int  # b_1 over F_p
    euler: int
    betti: tuple[int, ...]
    h1_free_rank: int | None = None  # integral complexes only
    h1_torsion: tuple[int, ...] | None = None
    h1_has_p_torsion: bool | None = None

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "is_rose": self.is_rose,
            "is_acyclic": self.is_acyclic,
            "petals": self.petals if self.is_rose else None,
            "betti": list(self.betti),
            "euler": self.euler,
            "h1_free_rank": self.h1_free_rank,
            "h1_torsion": None if self.h1_torsion is None else list(self.h1_torsion),
            "h1_has_p_torsion": self.h1_has_p_torsion,
        }

    def __str__(self) -> str:
        noun = "petal" if self.petals == 1 else "petals"
        kind = f"rose with {self.petals} {noun}" if self.is_rose else (
            "acyclic" if self.is_acyclic else "not a rose")
        return f"mod-{self.p}: {kind} (betti {list(self.betti)}, chi {self.euler})"


def rose_check(C: ChainComplex, p: int) -> RoseVerdict:
    """Is ``C`` a mod-p homology rose? m = 0 is reported as acyclic, not a rose."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if C.p is not None and C.p != p:
        raise ValueError(f"complex has F_{C.p} coefficients, cannot test mod {p}")
    b = homology(C if C.p == p else reduce_mod_p(C, p)).betti
    if b[0] != 1:
        raise ValueError(f"complex is not connected (b_0 = {b[0]})")
    higher_zero = all(x == 0 for x in b[2:])
    m = b[1] if len(b) > 1 else 0
    is_rose = higher_zero and m >= 1
    free = tors = ptors = None
    if C.p is None:
        H = homology(C)
        free = H.betti[1] if len(H.betti) > 1 else 0
        tors = H.torsion[1] if len(H.torsion) > 1 else ()
        ptors = any(d % p == 0 for d in tors)
        if is_rose and (free != m or ptors):
            raise AssertionError(f"mod-{p} rose whose H_1 is Z^{free} + {tors}")
    return RoseVerdict(p, is_rose, higher_zero and m == 0, m, euler_characteristic(C), b,
                       free, tors, ptors)


# ---------------------------------------------------------------------------


@dataclass
class Theorem1Report:
    spec: CoverSpec
    p: int
    base: RoseVerdict
    cover: RoseVerdict
    expected_petals: int | None
    euler_base: int
    euler_cover: int
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "target": list(self.spec.target.orders),
            "base": self.base.as_dict(),
            "cover": self.cover.as_dict(),
            "expected_petals": self.expected_petals,
            "euler": {"base": self.euler_base, "cover": self.euler_cover},
            "violations": list(self.violations),
        }

    def __str__(self) -> str:
        lines = [f"base:  {self.base}", f"cover: {self.cover}"]
        if self.base.is_rose and self.cover.is_rose:
            lines.append(f"petals m: {self.base.petals} -> {self.cover.petals}"
                         f" (expected {self.expected_petals})")
        lines.append(f"chi: {self.euler_base} -> {self.euler_cover}")
        lines += [f"VIOLATION: {v}" for v in self.violations]
        return "\n".join(lines)


def verify_theorem1(spec: CoverSpec, p: int) -> Theorem1Report:
    """Base is a mod-p rose iff the (Z_p)^r cover is; petal and Euler counts when both are."""
    G = spec.target
    if not G.is_elementary(p) or not G.orders:
        raise ValueError(f"target {G} is not (Z_{p})^r with r >= 1")
    cc = build_cover(spec)
    K = presentation_complex(spec.base)
    base, cover = rose_check(K, p), rose_check(cc.complex, p)
    order = G.order
    chi_k, chi_x = euler_characteristic(K), euler_characteristic(cc.complex)
    violations = []
    if base.is_rose != cover.is_rose:
        violations.append(f"rose biconditional fails: base {base.is_rose}, cover {cover.is_rose}")
    if chi_x != order * chi_k:
        violations.append(f"chi(cover) = {chi_x} != |G| chi(base) = {order * chi_k}")
    expected = None
    if base.is_rose:
        expected = order * (base.petals - 1) + 1
        if cover.is_rose and cover.petals != expected:
            violations.append(f"cover has {cover.petals} petals, expected {expected}")
    return Theorem1Report(spec, p, base, cover, expected, chi_k, chi_x, violations)


@dataclass
class CarlssonReport:
    spec: CoverSpec
    p: int
    r: int
    hypothesis_checkable: bool
    b1_cover: int | None = None
    betti_sum: int | None = None
    b1_bound: int | None = None  # 2^r - 1
    sum_bound: int | None = None  # 2^r
    sharp_value: int | None = None  # p^r (m - 1) + 1 when the base is a rose
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in (
            "p", "r", "hypothesis_checkable", "b1_cover", "betti_sum", "b1_bound", "sum_bound",
            "sharp_value")} | {"target": list(self.spec.target.orders), "violations": list(self.violations)}

    def __str__(self) -> str:
        if not self.hypothesis_checkable:
            return "hypothesis not checkable: b_2(base; F_p) != 0"
        lines = [f"b_1(cover) = {self.b1_cover} >= 2^{self.r} - 1 = {self.b1_bound}",
                 f"sum b_i(cover) = {self.betti_sum} >= 2^{self.r} = {self.sum_bound}"]
        if self.sharp_value is not None:
            lines.append(f"sharp value p^r(m-1)+1 = {self.sharp_value}")
        lines += [f"VIOLATION: {v}" for v in self.violations]
        return "\n".join(lines)


def verify_carlsson(spec: CoverSpec, p: int) -> CarlssonReport:
    G = spec.target
    if not G.is_elementary(p) or not G.orders:
        raise ValueError(f"target {G} is not (Z_{p})^r with r >= 1")
    r = len(G.orders)
    K = presentation_complex(spec.base)
    bK = betti_numbers(K, p)
    if len(bK) > 2 and bK[2] != 0:
        return CarlssonReport(spec, p, r, False)
    cc = build_cover(spec)
    bX = betti_numbers(cc.complex, p)
    rep = CarlssonReport(spec, p, r, True, bX[1], sum(bX), 2 ** r - 1, 2 ** r)
    if rep.b1_cover < rep.b1_bound:
        rep.violations.append(f"b_1 = {rep.b1_cover} < {rep.b1_bound}")
    if rep.betti_sum < rep.sum_bound:
        rep.violations.append(f"betti sum = {rep.betti_sum} < {rep.sum_bound}")
    base = rose_check(K, p)
    if base.is_rose:
        rep.sharp_value = p ** r * (base.petals - 1) + 1
        if rep.b1_cover != rep.sharp_value:
            rep.violations.append(f"b_1 = {rep.b1_cover} != p^r(m-1)+1 = {rep.sharp_value}")
    return rep


# ---------------------------------------------------------------------------
# deficiency ledger and D(2) screening


@dataclass(frozen=True)
class FieldLedger:
    field: int | None
    deficiency: int
    b1: int
    b2: int
    morse_holds: bool
    supplied_group_b2: int | None = None
    gap_upper_bound: int | None = None

    def as_dict(self) -> dict:
        return {
            "field": "Q" if self.field is None else self.field,
            "deficiency": self.deficiency,
            "b1": self.b1,
            "b2": self.b2,
            "morse_holds": self.morse_holds,
            "supplied_group_b2": self.supplied_group_b2,
            "gap_upper_bound": self.gap_upper_bound,
        }


@dataclass(frozen=True)
class Condition:
    """One line of the screening checklist.

    ``status`` is True/False when decided, None when it could not be checked.
    ``provenance`` is "computed", "supplied" (taken from the caller) or
    "unchecked".
    """

    name: str
    status: bool | None
    provenance: str
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "provenance": self.provenance,
                "detail": self.detail}


@dataclass
class ScreeningReport:
    presentation: FinitePresentation
    fields: list[FieldLedger]
    conditions: list[Condition] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def fails(self) -> bool:
        """Some computed or supplied condition is false."""
        return any(c.status is False for c in self.conditions)

    def as_dict(self) -> dict:
        return {
            "presentation": self.presentation.to_json(),
            "fields": [f.as_dict() for f in self.fields],
            "conditions": [c.as_dict() for c in self.conditions],
            "fails": self.fails,
            "violations": list(self.violations),
        }

    def __str__(self) -> str:
        lines = [f"presentation: {self.presentation}"]
        for f in self.fields:
            line = (f"  {field_label(f.field)}: def {f.deficiency}, b1 {f.b1}, b2 {f.b2}, "
                    f"morse {'ok' if f.morse_holds else 'FAILS'}")
            if f.gap_upper_bound is not None:
                line += f", gap <= {f.gap_upper_bound}"
            lines.append(line)
        for c in self.conditions:
            mark = {True: "yes", False: "NO", None: "?"}[c.status]
            lines.append(f"  [{mark:>3}] {c.name} ({c.provenance}){': ' + c.detail if c.detail else ''}")
        lines += [f"VIOLATION: {v}" for v in self.violations]
        return "\n".join(lines)


def _int_betti(K: ChainComplex, p: int | None) -> tuple[int, int]:
    b = betti_numbers(K, "Q" if p is None else p)
    b = tuple(b) + (0, 0, 0)
    return b[1], b[2]


def deficiency_ledger(P: FinitePresentation, fields: Sequence = ("Q", 2, 3),
                      supplied_b2: dict | None = None) -> ScreeningReport:
    """def(P), b_1 and b_2 of the presentation complex per field.

    ``supplied_b2`` maps a field to a known b_2(G; F); the ledger then reports
    b_2(K_P; F) - b_2(G; F) as an upper bound for gap(G; F).
    """
    K = presentation_complex(P)
    supplied = {_norm_field(k): v for k, v in (supplied_b2 or {}).items()}
    rows, violations = [], []
    for fld in fields:
        p = _norm_field(fld)
        b1, b2 = _int_betti(K, p)
        morse = P.deficiency <= b1 - b2
        if not morse:
            violations.append(f"def {P.deficiency} > b1 - b2 = {b1 - b2} over {field_label(p)}")
        sb = supplied.get(p)
        bound = None if sb is None else b2 - sb
        if bound is not None and bound < 0:
            violations.append(f"supplied b_2(G; {field_label(p)}) = {sb} exceeds b_2(K_P) = {b2}")
        rows.append(FieldLedger(p, P.deficiency, b1, b2, morse, sb, bound))
    return ScreeningReport(P, rows, [], violations)


@dataclass(frozen=True)
class QuotientData:
    """What is known about the quotient Γ = G/N.

    Give ``abelian`` when Γ is abelian (everything is then computed from
    closed forms), or ``presentation`` for a finite presentation of Γ (only
    H_1 and b_1 are then computable). ``supplied`` holds caller-provided
    values keyed like ``{"b2": {"Q": 0}, "gap": {"Q": 2}, "def": -1,
    "perfect_kernel": True}``.
    """

    abelian: FgAbelianGroup | None = None
    presentation: FinitePresentation | None = None
    supplied: dict = field(default_factory=dict)


def _h1(P: FinitePresentation) -> FgAbelianGroup:
    H = homology(presentation_complex(P))
    return FgAbelianGroup(H.betti[1], H.torsion[1])


def _supplied(data: dict, key: str, p: int | None):
    val = data.get(key)
    if isinstance(val, dict):
        for k, v in val.items():
            if _norm_field(k) == p:
                return v
        return None
    return val


def screen_d2_conditions(P: FinitePresentation, quotient: QuotientData,
                         fields: Sequence = ("Q",)) -> ScreeningReport:
    """Checklist for an extension 1 -> N -> G -> Γ -> 1 with G = π_1(K_P).

    Conditions that need unbounded searches (perfectness of N, the true gap
    or deficiency of a nonabelian Γ) are never computed; they are either
    taken from ``quotient.supplied`` or marked unchecked.
    """
    report = deficiency_ledger(P, fields)
    K = presentation_complex(P)
    conds = report.conditions
    sup = quotient.supplied
    A = quotient.abelian
    h1_G = _h1(P)

    perfect = sup.get("perfect_kernel")
    conds.append(Condition("kernel N is perfect", perfect,
                           "supplied" if perfect is not None else "unchecked"))

    if A is not None:
        h1_gamma = A
    elif quotient.presentation is not None:
        h1_gamma = _h1(quotient.presentation)
    else:
        h1_gamma = None
    if h1_gamma is not None:
        same = h1_gamma == h1_G
        conds.append(Condition("H_1(Γ; Z) = H_1(G; Z)", same, "computed",
                               f"{h1_gamma} vs {h1_G}"))
    else:
        conds.append(Condition("H_1(Γ; Z) = H_1(G; Z)", None, "unchecked"))

    for fld in fields:
        p = _norm_field(fld)
        F = field_label(p)
        b1K, b2K = _int_betti(K, p)
        # G side: b_2(K_P)=0 forces b_2(G)=0 and gap(G)=0
        if b2K == 0:
            conds.append(Condition(f"b_2(G; {F}) = 0", True, "computed", "b_2(K_P) = 0"))
            conds.append(Condition(f"gap(G; {F}) = 0", True, "computed", "b_2(K_P) = 0"))
            conds.append(Condition(f"def(G) = b_1(G; {F})", True, "computed",
                                   f"def(G) = def(P) = {P.deficiency}"))
        else:
            conds.append(Condition(f"b_2(G; {F}) = 0", False, "computed",
                                   f"presentation level: b_2(K_P; {F}) = {b2K}"))
            conds.append(Condition(f"gap(G; {F}) = 0", None, "unchecked"))
            conds.append(Condition(f"def(G) = b_1(G; {F})", None, "unchecked"))

        # Γ side
        if A is not None:
            rep = abelian.gap(A, p)
            conds.append(Condition(f"b_2(Γ; {F}) = 0", rep.b2 == 0, "computed", f"b_2 = {rep.b2}"))
            conds.append(Condition(f"gap(Γ; {F}) > 0", rep.gap > 0, "computed", f"gap = {rep.gap}"))
            conds.append(Condition(f"b_1(G; {F}) = b_1(Γ; {F})", rep.b1 == b1K, "computed",
                                   f"{b1K} vs {rep.b1}"))
            if b2K == 0:
                conds.append(Condition("def(G) > def(Γ)", P.deficiency > rep.deficiency, "computed",
                                       f"{P.deficiency} vs {rep.deficiency}"))
            else:
                conds.append(Condition("def(G) > def(Γ)", None, "unchecked"))
            continue
        b2g = _supplied(sup, "b2", p)
        conds.append(Condition(f"b_2(Γ; {F}) = 0", None if b2g is None else b2g == 0,
                               "unchecked" if b2g is None else "supplied"))
        gg = _supplied(sup, "gap", p)
        conds.append(Condition(f"gap(Γ; {F}) > 0", None if gg is None else gg > 0,
                               "unchecked" if gg is None else "supplied"))
        if quotient.presentation is not None:
            b1g, _ = _int_betti(presentation_complex(quotient.presentation), p)
            conds.append(Condition(f"b_1(G; {F}) = b_1(Γ; {F})", b1g == b1K, "computed",
                                   f"{b1K} vs {b1g}"))
        else:
            conds.append(Condition(f"b_1(G; {F}) = b_1(Γ; {F})", None, "unchecked"))
        dg = sup.get("def")
        if dg is not None and b2K == 0:
            conds.append(Condition("def(G) > def(Γ)", P.deficiency > dg, "supplied",
                                   f"{P.deficiency} vs supplied {dg}"))
        else:
            conds.append(Condition("def(G) > def(Γ)", None, "unchecked"))
    return report
