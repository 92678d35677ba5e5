"""Closed-form invariants of finitely generated abelian groups.

A = Z^r + Z_{d_1} + ... + Z_{d_k} with 1 < d_1 | d_2 | ... | d_k. Covers the
deficiency, the Schur multiplicator H_2(A; Z), Betti numbers over Q and F_p
in degrees 0..2, and the F-gap b_1 - b_2 - def. :func:`kunneth_oracle`
recomputes H_* from chain complexes, independently of the formulas.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from math import comb
from typing import Iterable

from .chain import ChainComplex, HomologyProfile, circle, homology, point, reduce_mod_p, tensor_product
from .exactla import IntegerMatrix, invariant_factors, is_prime

__all__ = [
    "FgAbelianGroup",
    "parse_abelian",
    "GapReport",
    "deficiency",
    "schur_multiplicator",
    "min_generators_h2",
    "betti",
    "gap",
    "relation_gap_check",
    "realizable_as",
    "kunneth_oracle",
    "kunneth_complex",
    "periodic_complex",
]


@dataclass(frozen=True)
class FgAbelianGroup:
    r: int
    d: tuple[int, ...] = ()

    def __post_init__(self):
        d = tuple(int(x) for x in self.d)
        object.__setattr__(self, "d", d)
        if self.r < 0:
            raise ValueError("free rank must be nonnegative")
        if any(x < 2 for x in d) or any(d[i + 1] % d[i] for i in range(len(d) - 1)):
            raise ValueError(f"invariant factors {d} are not a chain 1 < d_1 | d_2 | ...")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "FgAbelianGroup":
        """Canonical form of a direct sum of cyclic groups (order 0 means Z)."""
        orders = [abs(int(x)) for x in orders]
        r = sum(1 for x in orders if x == 0)
        finite = [x for x in orders if x != 0]
        if not finite:
            return cls(r, ())
        diag = IntegerMatrix([[x if i == j else 0 for j in range(len(finite))] for i, x in enumerate(finite)])
        return cls(r, tuple(x for x in invariant_factors(diag) if x > 1))

    @property
    def k(self) -> int:
        return len(self.d)

    def __str__(self) -> str:
        parts = ["Z"] * self.r + [f"Z_{x}" for x in self.d]
        return " + ".join(parts) or "0"


def parse_abelian(text: str) -> FgAbelianGroup:
    """Read ``"Z^2 + Z_2 + Z_4"``, ``"Z2xZ2"`` or ``"0"``; factors may come in any order."""
    text = text.strip()
    if text in ("", "0", "1"):
        return FgAbelianGroup(0)
    orders: list[int] = []
    for part in re.split(r"\s*(?:\+|x|⊕)\s*", text):
        m = re.fullmatch(r"Z(?:_?(\d+))?(?:\^(\d+))?", part.strip())
        if not m:
            raise ValueError(f"bad abelian group factor {part!r}")
        orders += [int(m.group(1) or 0)] * int(m.group(2) or 1)
    if any(x == 1 for x in orders):
        orders = [x for x in orders if x != 1]
    return FgAbelianGroup.from_cyclic_orders(orders)


def _canon(A) -> FgAbelianGroup:
    if isinstance(A, FgAbelianGroup):
        return A
    r, d = A
    return FgAbelianGroup.from_cyclic_orders([0] * r + list(d))


def _field(field) -> int | None:
    if field in (None, "Q", 0):
        return None
    p = int(field)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


def _first_divisible(A: FgAbelianGroup, p: int) -> int | None:
    """1-based index l of the first d_i divisible by p, or None."""
    for i, x in enumerate(A.d, start=1):
        if x % p == 0:
            return i
    return None


def deficiency(A) -> int:
    A = _canon(A)
    return A.r - comb(A.r + A.k, 2)


def schur_multiplicator(A) -> FgAbelianGroup:
    """H_2(A) = Z^{C(r,2)} + sum_j Z_{d_j}^{r+k-j}."""
    A = _canon(A)
    orders = [0] * comb(A.r, 2)
    for j, x in enumerate(A.d, start=1):
        orders += [x] * (A.r + A.k - j)
    return FgAbelianGroup.from_cyclic_orders(orders)


def min_generators_h2(A) -> int:
    A = _canon(A)
    return comb(A.r + A.k, 2)


def betti(A, field, i: int) -> int:
    """b_i(A; F) for i in 0, 1, 2 from the closed forms."""
    A = _canon(A)
    p = _field(field)
    r, k = A.r, A.k
    if i == 0:
        return 1
    if i not in (1, 2):
        raise ValueError("closed forms cover degrees 0..2 only")
    if p is None:
        return r if i == 1 else comb(r, 2)
    l = _first_divisible(A, p)
    if l is None:
        return r if i == 1 else comb(r, 2)
    if i == 1:
        return r + k - l + 1
    return (k - l + 1) + comb(r, 2) + sum(r + k - j for j in range(l, k + 1))


@dataclass(frozen=True)
class GapReport:
    group: FgAbelianGroup
    field: int | None  # None = Q
    b1: int
    b2: int
    deficiency: int
    gap: int

    def as_dict(self) -> dict:
        return {
            "group": str(self.group),
            "r": self.group.r,
            "d": list(self.group.d),
            "field": "Q" if self.field is None else self.field,
            "b1": self.b1,
            "b2": self.b2,
            "deficiency": self.deficiency,
            "gap": self.gap,
        }


def _gap_closed_form(A: FgAbelianGroup, p: int | None) -> int:
    r, k = A.r, A.k
    if p is None:
        return comb(r + k, 2) - comb(r, 2)
    if k == 0:
        return 0
    l = _first_divisible(A, p)
    if l is not None:
        twice = (2 * r + 2 * k - l) * (l - 1)
        return twice // 2
    return comb(r + k, 2) - comb(r, 2)


def gap(A, field) -> GapReport:
    A = _canon(A)
    p = _field(field)
    b1, b2, dfc = betti(A, p, 1), betti(A, p, 2), deficiency(A)
    g = _gap_closed_form(A, p)
    if g != b1 - b2 - dfc or g < 0:
        raise AssertionError(f"gap closed form {g} disagrees with b1 - b2 - def for {A}")
    return GapReport(A, p, b1, b2, dfc, g)


def relation_gap_check(A, p: int) -> bool:
    """gap(A; F_p) == gap(A; Q) - dim(T_2 ⊗ F_p) with T_2 the torsion of H_2(A)."""
    A = _canon(A)
    T2 = schur_multiplicator(A).d
    dim_t2 = sum(1 for x in T2 if x % p == 0)
    return gap(A, p).gap == gap(A, None).gap - dim_t2


def realizable_as(A, role: str, p: int) -> bool:
    """``role`` is ``"rose"`` (fundamental group of a mod-p homology rose)
    or ``"acyclic"`` (of a mod-p acyclic space)."""
    A = _canon(A)
    no_p_torsion = all(x % p for x in A.d)
    if role == "rose":
        return A.r == 1 and no_p_torsion
    if role == "acyclic":
        return A.r == 0 and no_p_torsion
    raise ValueError(f"unknown role {role!r}")


# ---------------------------------------------------------------------------
# chain-level oracle


def periodic_complex(d: int, top: int) -> ChainComplex:
    """Cellular chains of the infinite lens space K(Z_d, 1) truncated at ``top``:
    Z in each degree, boundaries 0, d, 0, d, ... starting from d_1."""
    bds = [[[0 if i % 2 else d]] for i in range(1, top + 1)]
    return ChainComplex([1] * (top + 1), bds)


def kunneth_complex(A, max_degree: int = 4) -> ChainComplex:
    """Tensor product of one circle per Z summand and one truncated lens-space
    complex per Z_{d_i}, cut at ``max_degree``."""
    A = _canon(A)
    factors = [circle() for _ in range(A.r)] + [periodic_complex(x, max_degree) for x in A.d]
    return reduce(lambda X, Y: tensor_product(X, Y, max_degree), factors, point())


def kunneth_oracle(A, max_degree: int = 4, p: int | None = None) -> HomologyProfile:
    """Homology of A in degrees below ``max_degree``, integral or over F_p.

    Degree ``max_degree`` itself is only a guard (its chains are truncated)
    and is dropped from the profile.
    """
    if max_degree < 3:
        raise ValueError("truncation degree must be at least 3 to see H_2")
    C = kunneth_complex(A, max_degree)
    H = homology(C if p is None else reduce_mod_p(C, p))
    keep = max_degree
    betti_ = (H.betti + (0,) * keep)[:keep]
    torsion = (H.torsion + ((),) * keep)[:keep]
    return HomologyProfile(p, betti_, torsion)
