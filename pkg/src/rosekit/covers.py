"""Regular finite abelian covers of presentation complexes.

For an epimorphism φ from π_1(K_P) onto a finite abelian group G the cover has
one cell per (cell of K_P, element of G). Translating by g ∈ G permutes the
cells; that is the deck action. Boundary blocks are the Fox derivatives of
the relators, pushed into Z[G] and written out in the regular representation.

Cell layout: degree-d cell number ``c * |G| + index(g)`` for base cell ``c``,
with group elements in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .chain import ChainComplex, betti_numbers
from .exactla import IntegerMatrix, PrimeFieldMatrix, kernel_basis_mod_p, rref_mod_p
from .grouppres import (
    Epimorphism,
    FiniteAbelianGroup,
    FinitePresentation,
    epimorphisms_to_cyclic,
    fox_derivative,
    presentation_complex,
    reidemeister_schreier,
)

__all__ = [
    "CoverSpec",
    "CoverComplex",
    "build_cover",
    "deck_action_on_h1",
    "augment_blocks",
    "subnormal_series",
    "SeriesStage",
]


@dataclass(frozen=True)
class CoverSpec:
    base: FinitePresentation
    target: FiniteAbelianGroup
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        epi = Epimorphism(self.target, tuple(tuple(g) for g in self.images))
        object.__setattr__(self, "target", epi.target)
        object.__setattr__(self, "images", epi.images)

    @classmethod
    def from_epimorphism(cls, base: FinitePresentation, phi: Epimorphism) -> "CoverSpec":
        return cls(base, phi.target, phi.images)

    @property
    def epimorphism(self) -> Epimorphism:
        return Epimorphism(self.target, self.images)

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), **self.epimorphism.to_json()}


@dataclass(frozen=True)
class CoverComplex:
    spec: CoverSpec
    complex: ChainComplex

    @property
    def group(self) -> FiniteAbelianGroup:
        return self.spec.target

    def deck_permutation(self, g: Sequence[int]) -> list[list[int]]:
        """Per degree, ``perm[c]`` is the image of cell ``c`` under translation by g."""
        G = self.group
        els = G.elements()
        shift = [G.index(G.add(h, g)) for h in els]
        order = len(els)
        perms = []
        for d in self.complex.dims:
            cells = d // order
            perms.append([c * order + shift[i] for c in range(cells) for i in range(order)])
        return perms

    def deck_matrix(self, g: Sequence[int], degree: int) -> IntegerMatrix:
        perm = self.deck_permutation(g)[degree]
        n = len(perm)
        out = [[0] * n for _ in range(n)]
        for src, dst in enumerate(perm):
            out[dst][src] = 1
        return IntegerMatrix(out, n)


def build_cover(spec: CoverSpec) -> CoverComplex:
    """Cellular chain complex of the regular cover defined by ``spec``."""
    P, phi = spec.base, spec.epimorphism
    phi.validate(P)
    G = phi.target
    els = G.elements()
    order = len(els)
    index = {g: i for i, g in enumerate(els)}
    # d_1: edge (j, g) runs from g to g + phi(a_j)
    d1 = [[0] * (P.n * order) for _ in range(order)]
    for j, img in enumerate(phi.images):
        for i, g in enumerate(els):
            col = j * order + i
            d1[index[G.add(g, img)]][col] += 1
            d1[i][col] -= 1
    # d_2: block (j, i) is multiplication by d r_i / d a_j
    d2 = [[0] * (P.m * order) for _ in range(P.n * order)]
    for i, r in enumerate(P.relators):
        for j in range(P.n):
            fd = fox_derivative(r, j, phi)
            for h, c in fd.coeffs.items():
                for gi, g in enumerate(els):
                    d2[j * order + index[G.add(g, h)]][i * order + gi] += c
    return CoverComplex(spec, ChainComplex([order, P.n * order, P.m * order], [d1, d2]))


def augment_blocks(cc: CoverComplex) -> list[IntegerMatrix]:
    """Apply the augmentation Z[G] -> Z to every block of every boundary.

    Each block is a multiplication matrix, so its column sums are constant;
    summing column 0 of each block recovers the base boundary entry.
    """
    order = cc.group.order
    out = []
    for b in cc.complex.boundaries:
        nr, nc = b.nrows // order, b.ncols // order
        out.append(IntegerMatrix(
            [[sum(b.rows[bi * order + r][bj * order] for r in range(order)) for bj in range(nc)]
             for bi in range(nr)], nc))
    return out


# ---------------------------------------------------------------------------
# deck action on H_1(cover; F_p)


def _h1_basis(C: ChainComplex, p: int):
    """Cycle representatives of an F_p-basis of H_1, plus the data to read off coordinates.

    Cycles are the deterministic rref kernel basis of d_1; a cycle is kept
    when it is independent of the boundaries and of the cycles kept before it.
    """
    d1 = C.boundary_mod(1, p)
    d2 = C.boundary_mod(2, p)
    cycles = kernel_basis_mod_p(d1)
    boundaries = [list(col) for col in zip(*d2.rows)] if d2.ncols else []
    span_rows, _ = rref_mod_p(boundaries, p, C.dims[1]) if boundaries else ([], [])
    kept: list[tuple[int, ...]] = []
    current = [list(r) for r in span_rows]
    rank = len(current)
    for z in cycles:
        trial = current + [list(z)]
        reduced, _ = rref_mod_p(trial, p, C.dims[1])
        if len(reduced) > rank:
            kept.append(z)
            current = reduced
            rank = len(reduced)
    return kept, [list(r) for r in span_rows]


def _coordinates(vec: Sequence[int], reps: list, span_rows: list, p: int) -> list[int]:
    """Coefficients c with vec = boundary + sum c_k reps[k] (mod p)."""
    nb, nr = len(span_rows), len(reps)
    n = len(vec)
    # columns: boundary basis, then reps; solve [B | R] x = vec
    cols = span_rows + [list(r) for r in reps]
    aug = [[cols[c][i] for c in range(nb + nr)] + [vec[i]] for i in range(n)]
    reduced, pivots = rref_mod_p(aug, p, nb + nr + 1)
    if nb + nr in pivots:
        raise ValueError("vector is not a cycle")
    x = [0] * (nb + nr)
    for row, c in zip(reduced, pivots):
        x[c] = row[-1]
    return x[nb:]


def deck_action_on_h1(cc: CoverComplex, g: Sequence[int], p: int) -> PrimeFieldMatrix:
    """Matrix of translation by ``g`` on H_1(cover; F_p); column k is the image of basis vector k."""
    g = cc.group.reduce(g)
    C = cc.complex
    reps, span_rows = _h1_basis(C, p)
    perm = cc.deck_permutation(g)[1]
    cols = []
    for z in reps:
        moved = [0] * len(z)
        for src, x in enumerate(z):
            if x:
                moved[perm[src]] = x
        cols.append(_coordinates(moved, reps, span_rows, p))
    k = len(reps)
    return PrimeFieldMatrix(p, [[cols[c][r] for c in range(k)] for r in range(k)], k)


# ---------------------------------------------------------------------------
# iterated Z_p covers


@dataclass(frozen=True)
class SeriesStage:
    presentation: FinitePresentation
    b1: int
    b2: int
    epimorphism: Epimorphism | None  # used to pass to the next stage


def subnormal_series(P: FinitePresentation, p: int, depth: int) -> list[SeriesStage]:
    """Iterate index-p kernels ``depth`` times, always taking the first
    surjection onto Z_p in lexicographic order of generator images."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    stages = []
    current = P
    for i in range(depth + 1):
        b = betti_numbers(presentation_complex(current), p)
        phi = None
        if i < depth:
            phi = next(epimorphisms_to_cyclic(current, p), None)
            if phi is None:
                raise ValueError(f"stage {i} has no epimorphism onto Z_{p} (b_1 mod {p} = {b[1]})")
        stages.append(SeriesStage(current, b[1], b[2], phi))
        if phi is not None:
            current = reidemeister_schreier(current, phi)
    return stages
