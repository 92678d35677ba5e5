"""Exact linear algebra over the integers and over prime fields.

Matrices are dense and hold Python integers, so there is no overflow anywhere.
Everything downstream (homology, covers, module decompositions) goes through
the handful of routines here: Smith normal form over Z, and row reduction,
rank and kernels over F_p.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "IntegerMatrix",
    "PrimeFieldMatrix",
    "SmithForm",
    "smith_normal_form",
    "invariant_factors",
    "rank_mod_p",
    "kernel_basis_mod_p",
    "rref_mod_p",
    "is_prime",
]


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    q = 3
    while q * q <= p:
        if p % q == 0:
            return False
        q += 2
    return True


def _check_rect(rows: Sequence[Sequence[int]], ncols: int | None) -> tuple[tuple[tuple[int, ...], ...], int]:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise ValueError("ragged matrix rows")
    if ncols is None:
        ncols = widths.pop() if widths else 0
    elif widths and widths.pop() != ncols:
        raise ValueError(f"rows do not have {ncols} columns")
    return out, ncols


class IntegerMatrix:
    """Immutable dense matrix of arbitrary-precision integers (row-major)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence[int]], ncols: int | None = None):
        data, ncols = _check_rect(list(rows), ncols)
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("IntegerMatrix is immutable")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntegerMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix) or isinstance(other, PrimeFieldMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        return f"IntegerMatrix({[list(r) for r in self.rows]!r}, ncols={self.ncols})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                             self.nrows)

    T = property(transpose)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
        return IntegerMatrix(out, other.ncols)

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntegerMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                             self.ncols)

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntegerMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                             self.ncols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def mod(self, p: int) -> "PrimeFieldMatrix":
        return PrimeFieldMatrix(p, self.rows, self.ncols)

    def determinant(self) -> int:
        """Fraction-free (Bareiss) determinant."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


class PrimeFieldMatrix(IntegerMatrix):
    """Dense matrix over F_p with entries kept in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int, rows: Iterable[Sequence[int]], ncols: int | None = None):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        object.__setattr__(self, "p", p)
        super().__init__([[x % p for x in r] for r in rows], ncols)

    @classmethod
    def zeros(cls, p: int, nrows: int, ncols: int) -> "PrimeFieldMatrix":  # type: ignore[override]
        return cls(p, [[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, p: int, n: int) -> "PrimeFieldMatrix":  # type: ignore[override]
        return cls(p, [[int(i == j) for j in range(n)] for i in range(n)], n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PrimeFieldMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.p, self.shape, self.rows))

    def __repr__(self) -> str:
        return f"PrimeFieldMatrix({self.p}, {[list(r) for r in self.rows]!r}, ncols={self.ncols})"

    def _same_field(self, other) -> None:
        if not isinstance(other, PrimeFieldMatrix) or other.p != self.p:
            raise ValueError("operands live over different fields")

    def transpose(self) -> "PrimeFieldMatrix":
        return PrimeFieldMatrix(self.p, IntegerMatrix.transpose(self).rows, self.nrows)

    T = property(transpose)

    def __matmul__(self, other: "PrimeFieldMatrix") -> "PrimeFieldMatrix":
        self._same_field(other)
        return PrimeFieldMatrix(self.p, IntegerMatrix.__matmul__(self, other).rows, other.ncols)

    def __add__(self, other: "PrimeFieldMatrix") -> "PrimeFieldMatrix":
        self._same_field(other)
        return PrimeFieldMatrix(self.p, IntegerMatrix.__add__(self, other).rows, self.ncols)

    def __sub__(self, other: "PrimeFieldMatrix") -> "PrimeFieldMatrix":
        self._same_field(other)
        return PrimeFieldMatrix(self.p, IntegerMatrix.__sub__(self, other).rows, self.ncols)

    def __pow__(self, k: int) -> "PrimeFieldMatrix":
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = PrimeFieldMatrix.identity(self.p, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def rank(self) -> int:
        return rank_mod_p(self)

    def kernel(self) -> list[tuple[int, ...]]:
        return kernel_basis_mod_p(self)

    def lift(self) -> IntegerMatrix:
        return IntegerMatrix(self.rows, self.ncols)


# ---------------------------------------------------------------------------
# F_p elimination


def rref_mod_p(rows: Sequence[Sequence[int]], p: int, ncols: int | None = None):
    """Reduced row echelon form over F_p.

    Returns ``(reduced_rows, pivot_columns)``; only nonzero rows are kept and
    pivots are scanned in column order, so the output is deterministic.
    """
    a = [[x % p for x in r] for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    nrows = len(a)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        row = a[r]
        inv = pow(row[c], -1, p)
        if inv != 1:
            row = a[r] = [(x * inv) % p for x in row]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    other = a[i]
                    a[i] = [(x - f * y) % p for x, y in zip(other, row)]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rank_rows(rows: list[list[int]], p: int) -> int:
    # forward elimination only; cheaper than a full rref
    a = [[x % p for x in r] for r in rows]
    a = [r for r in a if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        row = a[rank]
        inv = pow(row[c], -1, p)
        for i in range(rank + 1, len(a)):
            f = a[i][c]
            if f:
                f = f * inv % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], row)]
        rank += 1
        if rank == len(a):
            break
    return rank


def rank_mod_p(A: PrimeFieldMatrix) -> int:
    """Rank of ``A`` as an F_p-linear map."""
    if A.nrows == 0 or A.ncols == 0:
        return 0
    # eliminate along the shorter side
    rows = A.rows if A.nrows <= A.ncols else tuple(zip(*A.rows))
    return _rank_rows([list(r) for r in rows], A.p)


def kernel_basis_mod_p(A: PrimeFieldMatrix) -> list[tuple[int, ...]]:
    """Basis of ker A from the rref: one vector per free column, in column order."""
    p, n = A.p, A.ncols
    reduced, pivots = rref_mod_p(A.rows, p, n)
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [0] * n
        v[f] = 1
        for row, c in zip(reduced, pivots):
            if row[f]:
                v[c] = (-row[f]) % p
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """``left @ A @ right`` is diagonal with entries ``diag`` then zeros."""

    diag: tuple[int, ...]
    left: IntegerMatrix | None
    right: IntegerMatrix | None
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.diag)

    def diagonal_matrix(self) -> IntegerMatrix:
        m, n = self.shape
        out = [[0] * n for _ in range(m)]
        for i, d in enumerate(self.diag):
            out[i][i] = d
        return IntegerMatrix(out, n)


def _snf(a: list[list[int]], m: int, n: int, track: bool):
    L = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    R = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        rs, rd = a[src], a[dst]
        a[dst] = [x - q * y for x, y in zip(rd, rs)]
        if track:
            L[dst] = [x - q * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in a:
            row[dst] -= q * row[src]
        if track:
            for row in R:
                row[dst] -= q * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        # minimal |entry| pivot limits coefficient growth
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    add_row(i, t, x // piv)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                x = a[t][j]
                if x:
                    add_col(j, t, x // piv)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot survived; move it up and retry
                best = None
                for i in range(t, m):
                    x = a[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, t)
                for j in range(t, n):
                    x = a[t][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), t, j)
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # divisibility: fold an offending row into the pivot row
            bad = None
            for i in range(t + 1, m):
                if any(x % piv for x in a[i][t + 1:]):
                    bad = i
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                L[t] = [-x for x in L[t]]
        diag.append(a[t][t])
        t += 1
    return diag, L, R


def smith_normal_form(A: IntegerMatrix, with_transforms: bool = True) -> SmithForm:
    """Smith normal form with unimodular ``left``, ``right`` such that
    ``left @ A @ right`` equals the diagonal form.

    >>> smith_normal_form(IntegerMatrix([[2, 0], [0, 3]])).diag
    (1, 6)
    """
    m, n = A.shape
    diag, L, R = _snf([list(r) for r in A.rows], m, n, with_transforms)
    left = IntegerMatrix(L, m) if with_transforms else None
    right = IntegerMatrix(R, n) if with_transforms else None
    return SmithForm(tuple(diag), left, right, (m, n))


def invariant_factors(A: IntegerMatrix) -> tuple[int, ...]:
    """Nonzero Smith diagonal of ``A`` (includes the 1s)."""
    return smith_normal_form(A, with_transforms=False).diag


def gcd_all(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g
