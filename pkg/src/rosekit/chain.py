"""Finite chain complexes over Z or F_p and their homology."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .exactla import IntegerMatrix, PrimeFieldMatrix, invariant_factors, is_prime, rank_mod_p

__all__ = [
    "ChainComplex",
    "HomologyProfile",
    "homology",
    "betti_numbers",
    "euler_characteristic",
    "tensor_product",
    "reduce_mod_p",
    "point",
    "circle",
    "pseudo_projective_plane",
    "complex_to_json",
    "complex_from_json",
]


def _field_label(p: int | None) -> str:
    return "Z" if p is None else f"F_{p}"


class ChainComplex:
    """Chain groups of ranks ``dims[0..N]`` with ``boundaries[i-1]`` the
    matrix of the map from degree ``i`` to degree ``i - 1``.

    ``p is None`` means integer coefficients. ``d∘d = 0`` is checked on
    construction unless ``check=False``.
    """

    __slots__ = ("p", "dims", "boundaries")

    def __init__(self, dims: Sequence[int], boundaries: Sequence, p: int | None = None,
                 check: bool = True):
        if p is not None and not is_prime(p):
            raise ValueError(f"coefficient modulus {p} is not prime")
        dims = tuple(int(d) for d in dims)
        if not dims or any(d < 0 for d in dims):
            raise ValueError("dims must be a nonempty list of nonnegative ranks")
        if len(boundaries) != len(dims) - 1:
            raise ValueError(f"expected {len(dims) - 1} boundary matrices, got {len(boundaries)}")
        mats = []
        for i, b in enumerate(boundaries, start=1):
            rows = b.rows if isinstance(b, IntegerMatrix) else b
            m = IntegerMatrix(rows, dims[i])
            if m.nrows != dims[i - 1]:
                raise ValueError(f"boundary {i} has shape {m.shape}, expected {(dims[i - 1], dims[i])}")
            if p is not None:
                m = IntegerMatrix(PrimeFieldMatrix(p, m.rows, dims[i]).rows, dims[i])
            mats.append(m)
        self.p = p
        self.dims = dims
        self.boundaries = tuple(mats)
        if check:
            for i in range(1, len(mats)):
                prod = mats[i - 1] @ mats[i]
                if p is not None:
                    bad = any(x % p for r in prod.rows for x in r)
                else:
                    bad = not prod.is_zero()
                if bad:
                    raise ValueError(f"boundary∘boundary is nonzero in degree {i + 1}")

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def boundary(self, i: int) -> IntegerMatrix:
        """Matrix of d_i : C_i -> C_{i-1}; zero outside the stored range."""
        if 1 <= i <= self.top_degree:
            return self.boundaries[i - 1]
        rows = self.dims[i - 1] if 1 <= i <= self.top_degree + 1 else 0
        cols = self.dims[i] if 0 <= i <= self.top_degree else 0
        return IntegerMatrix.zeros(rows, cols)

    def boundary_mod(self, i: int, p: int) -> PrimeFieldMatrix:
        b = self.boundary(i)
        return PrimeFieldMatrix(p, b.rows, b.ncols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return (self.p, self.dims, self.boundaries) == (other.p, other.dims, other.boundaries)

    def __repr__(self) -> str:
        return f"ChainComplex(dims={list(self.dims)}, coeff={_field_label(self.p)})"


@dataclass(frozen=True)
class HomologyProfile:
    """Betti numbers per degree plus integral torsion (empty tuples over F_p)."""

    p: int | None
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def group(self, i: int) -> str:
        if i >= len(self.betti):
            return "0"
        parts = []
        base = "Z" if self.p is None else f"F_{self.p}"
        if self.betti[i]:
            parts.append(base if self.betti[i] == 1 else f"{base}^{self.betti[i]}")
        parts += [f"Z_{d}" for d in self.torsion[i]]
        return " + ".join(parts) or "0"

    def __str__(self) -> str:
        return ", ".join(f"H_{i} = {self.group(i)}" for i in range(len(self.betti)))

    def as_dict(self) -> dict:
        return {
            "coeff": "Z" if self.p is None else {"p": self.p},
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
        }


def _rank(C: ChainComplex, i: int, p: int | None) -> int:
    if not 1 <= i <= C.top_degree:
        return 0
    b = C.boundaries[i - 1]
    if p is None:
        return len(invariant_factors(b))
    return rank_mod_p(PrimeFieldMatrix(p, b.rows, b.ncols))


def homology(C: ChainComplex) -> HomologyProfile:
    """Homology in degrees ``0..top_degree`` with the complex's own coefficients."""
    N = C.top_degree
    if C.p is not None:
        ranks = [0] + [_rank(C, i, C.p) for i in range(1, N + 1)] + [0]
        betti = tuple(C.dims[i] - ranks[i] - ranks[i + 1] for i in range(N + 1))
        return HomologyProfile(C.p, betti, tuple(() for _ in betti))
    factors = [()] + [invariant_factors(b) for b in C.boundaries] + [()]
    betti = tuple(C.dims[i] - len(factors[i]) - len(factors[i + 1]) for i in range(N + 1))
    torsion = tuple(tuple(d for d in factors[i + 1] if d > 1) for i in range(N + 1))
    return HomologyProfile(None, betti, torsion)


def betti_numbers(C: ChainComplex, field: int | str | None) -> tuple[int, ...]:
    """Betti numbers over ``field``: ``"Q"``/``None``/``0`` for the rationals or a prime."""
    if field in (None, "Q", 0):
        if C.p is not None:
            raise ValueError("rational Betti numbers need an integral complex")
        return homology(C).betti
    p = int(field)
    if C.p is not None and C.p != p:
        raise ValueError(f"complex has F_{C.p} coefficients, asked for F_{p}")
    return homology(C if C.p == p else reduce_mod_p(C, p)).betti


def euler_characteristic(C: ChainComplex) -> int:
    return sum((-1) ** i * d for i, d in enumerate(C.dims))


def reduce_mod_p(C: ChainComplex, p: int) -> ChainComplex:
    if C.p is not None:
        raise ValueError("complex already has prime-field coefficients")
    return ChainComplex(C.dims, C.boundaries, p=p, check=False)


def tensor_product(C: ChainComplex, D: ChainComplex, max_degree: int | None = None) -> ChainComplex:
    """Tensor product with d(x⊗y) = dx⊗y + (-1)^|x| x⊗dy.

    The basis of (C⊗D)_n lists the blocks C_i⊗D_{n-i} for increasing i, each
    block ordered as ``a * dim D_j + b``. ``max_degree`` truncates the result,
    which is exact in every degree below the cut.
    """
    if C.p != D.p:
        raise ValueError("tensor product needs matching coefficients")
    top = C.top_degree + D.top_degree
    if max_degree is not None:
        top = min(top, max_degree)
    offsets = []  # per degree n: {i: offset of block C_i⊗D_{n-i}}
    dims = []
    for n in range(top + 1):
        off, pos = {}, 0
        for i in range(max(0, n - D.top_degree), min(n, C.top_degree) + 1):
            off[i] = pos
            pos += C.dims[i] * D.dims[n - i]
        offsets.append(off)
        dims.append(pos)
    boundaries = []
    for n in range(1, top + 1):
        out = [[0] * dims[n] for _ in range(dims[n - 1])]
        for i, col0 in offsets[n].items():
            j = n - i
            dj, sign = D.dims[j], (-1) ** i
            dC = C.boundary(i) if i >= 1 else None
            dD = D.boundary(j) if j >= 1 else None
            for a in range(C.dims[i]):
                for b in range(dj):
                    col = col0 + a * dj + b
                    if dC is not None and i - 1 in offsets[n - 1]:
                        row0 = offsets[n - 1][i - 1]
                        for a2 in range(C.dims[i - 1]):
                            x = dC.rows[a2][a]
                            if x:
                                out[row0 + a2 * dj + b][col] += x
                    if dD is not None and i in offsets[n - 1]:
                        row0 = offsets[n - 1][i]
                        dj2 = D.dims[j - 1]
                        for b2 in range(dj2):
                            y = dD.rows[b2][b]
                            if y:
                                out[row0 + a * dj2 + b2][col] += sign * y
        boundaries.append(out)
    return ChainComplex(dims, boundaries, p=C.p)


# ---------------------------------------------------------------------------
# small standard complexes


def point(p: int | None = None) -> ChainComplex:
    return ChainComplex([1], [], p=p)


def circle(p: int | None = None) -> ChainComplex:
    return ChainComplex([1, 1], [[[0]]], p=p)


def pseudo_projective_plane(m: int, p: int | None = None) -> ChainComplex:
    """Mapping cone of a degree-``m`` self-map of the circle: cells in degrees 0, 1, 2."""
    return ChainComplex([1, 1, 1], [[[0]], [[m]]], p=p)


# ---------------------------------------------------------------------------
# JSON: {"coeff": "Z" | {"p": int}, "dims": [...], "boundaries": [[[...]]]}
# integers are written as decimal strings so no precision is lost in transit


def complex_to_json(C: ChainComplex) -> dict:
    return {
        "coeff": "Z" if C.p is None else {"p": C.p},
        "dims": list(C.dims),
        "boundaries": [[[str(x) for x in row] for row in b.rows] for b in C.boundaries],
    }


def complex_from_json(data: dict | str) -> ChainComplex:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise ValueError("chain complex JSON must be an object")
    try:
        coeff, dims, bds = data["coeff"], data["dims"], data["boundaries"]
    except KeyError as exc:
        raise ValueError(f"chain complex JSON is missing key {exc.args[0]!r}") from None
    if coeff == "Z":
        p = None
    elif isinstance(coeff, dict) and "p" in coeff:
        p = int(coeff["p"])
    else:
        raise ValueError(f"unrecognised coeff {coeff!r}")
    dims = [int(d) for d in dims]
    mats = []
    for i, b in enumerate(bds, start=1):
        rows = [[int(x) for x in row] for row in b]
        if not rows:
            rows = [[] for _ in range(dims[i - 1])] if i - 1 < len(dims) else []
        mats.append(rows)
    return ChainComplex(dims, mats, p=p)
