"""Modules over F_p[Z_p] = F_p[x]/x^p with x = t - 1.

Every finite-dimensional module splits into Jordan blocks R_k (1 <= k <= p)
on which x acts by the nilpotent block N_k. Block multiplicities come from
the ranks of powers of x; group cohomology H^j(Z_p; M) from the ranks of x
and x^{p-1} via the 2-periodic resolution.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactla import PrimeFieldMatrix, is_prime, rank_mod_p

__all__ = [
    "ModuleDecomposition",
    "nilpotent_block",
    "regular_block",
    "block_diagonal",
    "decompose",
    "cohomology_zp",
    "regular_cohomology_table",
]


@dataclass(frozen=True)
class ModuleDecomposition:
    p: int
    multiplicities: tuple[int, ...]  # l_1, ..., l_p

    def __post_init__(self):
        if len(self.multiplicities) != self.p:
            raise ValueError("need exactly p multiplicities")
        if any(l < 0 for l in self.multiplicities):
            raise ValueError("multiplicities are nonnegative")

    def l(self, k: int) -> int:
        return self.multiplicities[k - 1]

    @property
    def dimension(self) -> int:
        return sum(k * l for k, l in enumerate(self.multiplicities, start=1))

    def __str__(self) -> str:
        parts = [f"R_{k}^{l}" if l > 1 else f"R_{k}" for k, l in enumerate(self.multiplicities, 1) if l]
        return " + ".join(parts) or "0"


def nilpotent_block(k: int, p: int) -> PrimeFieldMatrix:
    """k x k matrix with ones on the subdiagonal."""
    if not 1 <= k <= p:
        raise ValueError(f"block size {k} outside 1..{p}")
    return PrimeFieldMatrix(p, [[int(i == j + 1) for j in range(k)] for i in range(k)], k)


def regular_block(k: int, p: int) -> PrimeFieldMatrix:
    """Action of the generator t = 1 + x on R_k."""
    return PrimeFieldMatrix.identity(p, k) + nilpotent_block(k, p)


def block_diagonal(blocks: list[PrimeFieldMatrix], p: int) -> PrimeFieldMatrix:
    n = sum(b.nrows for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            out[off + i][off:off + b.ncols] = row
        off += b.nrows
    return PrimeFieldMatrix(p, out, n)


def _check_order_p(T: PrimeFieldMatrix) -> PrimeFieldMatrix:
    if T.nrows != T.ncols:
        raise ValueError("module action must be a square matrix")
    p = T.p
    if T ** p != PrimeFieldMatrix.identity(p, T.nrows):
        raise ValueError(f"matrix does not satisfy T^{p} = I over F_{p}")
    return T - PrimeFieldMatrix.identity(p, T.nrows)


def decompose(T: PrimeFieldMatrix) -> ModuleDecomposition:
    """Jordan-type multiplicities of the module given by T (T^p = I).

    With r_j = rank (T - I)^j, the number of blocks of size k is
    r_{k-1} - 2 r_k + r_{k+1}.
    """
    x = _check_order_p(T)
    p, n = T.p, T.nrows
    ranks = [n]
    power = PrimeFieldMatrix.identity(p, n)
    for _ in range(p + 1):
        power = power @ x
        ranks.append(rank_mod_p(power))
    mult = tuple(ranks[k - 1] - 2 * ranks[k] + ranks[k + 1] for k in range(1, p + 1))
    return ModuleDecomposition(p, mult)


def cohomology_zp(T: PrimeFieldMatrix, j: int) -> int:
    """dim H^j(Z_p; M) for the module M given by T.

    Cochains are M in every degree with coboundaries alternating x, x^{p-1}:
    H^0 = ker x, H^odd = ker x^{p-1} / im x, H^even = ker x / im x^{p-1}.
    """
    if j < 0:
        raise ValueError("negative cohomological degree")
    x = _check_order_p(T)
    n = T.nrows
    rx = rank_mod_p(x)
    rn = rank_mod_p(x ** (T.p - 1))
    if j == 0:
        return n - rx
    if j % 2:
        return (n - rn) - rx
    return (n - rx) - rn


def regular_cohomology_table(p: int, max_degree: int = 6) -> list[tuple[int, tuple[int, ...]]]:
    """``[(k, (dim H^0, ..., dim H^max_degree)) for k in 1..p]`` for the blocks R_k."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    out = []
    for k in range(1, p + 1):
        T = regular_block(k, p)
        out.append((k, tuple(cohomology_zp(T, j) for j in range(max_degree + 1))))
    return out
