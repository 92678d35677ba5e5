"""Free-group words, finite presentations and their presentation complexes.

Also here: finite abelian quotient groups, Fox derivatives evaluated in the
integral group ring of such a quotient, Reidemeister-Schreier rewriting for
the kernel of an epimorphism, and a small catalog of named presentations.

Words are tuples of ``(generator_index, ±1)`` letters. In text form a word is
a space-separated list of generator names, capitals meaning inverses, e.g.
``"a b A B"``; a ``^k`` suffix repeats a letter (``"a^3 b^-1"``).
"""

from __future__ import annotations

import itertools
import json
import re
from collections import deque
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

from .chain import ChainComplex
from .exactla import IntegerMatrix

__all__ = [
    "Word",
    "reduce_word",
    "word_inverse",
    "word_power",
    "commutator",
    "parse_word",
    "format_word",
    "generator_name",
    "exponent_sum",
    "FinitePresentation",
    "FiniteAbelianGroup",
    "Epimorphism",
    "GroupRingElement",
    "presentation_complex",
    "fox_derivative",
    "reidemeister_schreier",
    "catalog",
    "CATALOG_NAMES",
    "parse_epimorphism",
]

Letter = tuple[int, int]
Word = tuple[Letter, ...]


def reduce_word(letters: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for g, e in letters:
        if e not in (1, -1):
            raise ValueError(f"letter exponent must be ±1, got {e}")
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def word_inverse(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def word_power(w: Word, k: int) -> Word:
    base = w if k >= 0 else word_inverse(w)
    return reduce_word(base * abs(k))


def gen(j: int, k: int = 1) -> Word:
    e = 1 if k >= 0 else -1
    return ((j, e),) * abs(k)


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u v u^-1 v^-1."""
    return reduce_word(u + v + word_inverse(u) + word_inverse(v))


def exponent_sum(w: Word, j: int) -> int:
    return sum(e for g, e in w if g == j)


def generator_name(j: int) -> str:
    return chr(ord("a") + j) if j < 26 else f"g{j + 1}"


_TOKEN = re.compile(r"^([a-zA-Z])$|^([gG])(\d+)$")


def _parse_letter(tok: str) -> Letter:
    m = _TOKEN.match(tok)
    if not m:
        raise ValueError(f"bad generator token {tok!r}")
    if m.group(1):
        ch = m.group(1)
        return (ord(ch.lower()) - ord("a"), 1 if ch.islower() else -1)
    idx = int(m.group(3)) - 1
    if idx < 26:
        raise ValueError(f"{tok!r}: numbered names start at g27; use the letter instead")
    return (idx, 1 if m.group(2) == "g" else -1)


def parse_word(text: str, n: int | None = None) -> Word:
    letters: list[Letter] = []
    for tok in text.split():
        base, _, power = tok.partition("^")
        g, e = _parse_letter(base)
        k = int(power) if power else 1
        if n is not None and g >= n:
            raise ValueError(f"generator {base!r} out of range for {n} generators")
        letters.extend([(g, e if k > 0 else -e)] * abs(k))
    return reduce_word(letters)


def format_word(w: Word) -> str:
    toks = []
    for g, e in w:
        name = generator_name(g)
        toks.append(name if e > 0 else name.upper())
    return " ".join(toks)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FinitePresentation:
    n: int
    relators: tuple[Word, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative generator count")
        rels = tuple(reduce_word(r) for r in self.relators)
        for r in rels:
            for g, _ in r:
                if not 0 <= g < self.n:
                    raise ValueError(f"relator uses generator {g} outside 0..{self.n - 1}")
        object.__setattr__(self, "relators", rels)

    @classmethod
    def from_strings(cls, n: int, relators: Sequence[str], name: str = "") -> "FinitePresentation":
        return cls(n, tuple(parse_word(r, n) for r in relators), name)

    @property
    def m(self) -> int:
        return len(self.relators)

    @property
    def deficiency(self) -> int:
        return self.n - self.m

    def exponent_matrix(self) -> IntegerMatrix:
        """Rows are generators, columns relators."""
        return IntegerMatrix([[exponent_sum(r, j) for r in self.relators] for j in range(self.n)], self.m)

    def to_json(self) -> dict:
        return {"generators": self.n, "relators": [format_word(r) for r in self.relators]}

    @classmethod
    def from_json(cls, data: dict | str) -> "FinitePresentation":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "generators" not in data:
            raise ValueError("presentation JSON needs a 'generators' count")
        return cls.from_strings(int(data["generators"]), list(data.get("relators", [])))

    def __str__(self) -> str:
        gens = ", ".join(generator_name(j) for j in range(self.n))
        rels = ", ".join(format_word(r) or "1" for r in self.relators)
        return f"< {gens} | {rels} >"


def presentation_complex(P: FinitePresentation) -> ChainComplex:
    """One vertex, one 1-cell per generator, one 2-cell per relator."""
    return ChainComplex([1, P.n, P.m], [[[0] * P.n], P.exponent_matrix()])


# ---------------------------------------------------------------------------
# finite abelian quotients


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z_{d_1} + ... + Z_{d_k}; elements are coordinate tuples.

    The factors need not form a divisibility chain, so (Z_p)^r is written as
    ``(p,) * r``. The trivial group has no factors.
    """

    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(d) for d in self.orders))
        if any(d < 1 for d in self.orders):
            raise ValueError("cyclic factor orders must be positive")

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)

    def elements(self) -> list[tuple[int, ...]]:
        """All elements in lexicographic order of coordinates."""
        return list(itertools.product(*(range(d) for d in self.orders)))

    def index(self, g: Sequence[int]) -> int:
        i = 0
        for x, d in zip(g, self.orders):
            i = i * d + x % d
        return i

    def reduce(self, g: Sequence[int]) -> tuple[int, ...]:
        if len(g) != len(self.orders):
            raise ValueError(f"element {tuple(g)} has wrong length for {self}")
        return tuple(x % d for x, d in zip(g, self.orders))

    def add(self, g, h) -> tuple[int, ...]:
        return tuple((x + y) % d for x, y, d in zip(g, h, self.orders))

    def neg(self, g) -> tuple[int, ...]:
        return tuple((-x) % d for x, d in zip(g, self.orders))

    def scale(self, g, k: int) -> tuple[int, ...]:
        return tuple((k * x) % d for x, d in zip(g, self.orders))

    def element_order(self, g) -> int:
        o = 1
        for x, d in zip(g, self.orders):
            o = o * (d // gcd(d, x)) // gcd(o, d // gcd(d, x))
        return o

    def span(self, gens: Sequence[Sequence[int]]) -> set[tuple[int, ...]]:
        seen = {self.zero}
        todo = [self.zero]
        gens = [self.reduce(g) for g in gens]
        while todo:
            h = todo.pop()
            for g in gens:
                k = self.add(h, g)
                if k not in seen:
                    seen.add(k)
                    todo.append(k)
        return seen

    def is_generated_by(self, gens: Sequence[Sequence[int]]) -> bool:
        return len(self.span(gens)) == self.order

    def is_elementary(self, p: int) -> bool:
        return all(d == p for d in self.orders)

    def __str__(self) -> str:
        return " + ".join(f"Z_{d}" for d in self.orders) or "1"


@dataclass(frozen=True)
class Epimorphism:
    """Images of the generators in a finite abelian group.

    Construction only reduces coordinates; use :meth:`validate` against a
    presentation to check that relators die and the images generate.
    """

    target: FiniteAbelianGroup
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        tgt = self.target if isinstance(self.target, FiniteAbelianGroup) else FiniteAbelianGroup(self.target)
        object.__setattr__(self, "target", tgt)
        object.__setattr__(self, "images", tuple(tgt.reduce(g) for g in self.images))

    def __call__(self, w: Word) -> tuple[int, ...]:
        G = self.target
        h = G.zero
        for g, e in w:
            h = G.add(h, self.images[g] if e > 0 else G.neg(self.images[g]))
        return h

    def validate(self, P: FinitePresentation) -> None:
        if len(self.images) != P.n:
            raise ValueError(f"epimorphism gives {len(self.images)} images for {P.n} generators")
        for i, r in enumerate(P.relators):
            if self(r) != self.target.zero:
                raise ValueError(f"relator {i} ({format_word(r)}) does not map to the identity")
        if not self.target.is_generated_by(self.images):
            raise ValueError(f"images do not generate {self.target}; map is not surjective")

    def to_json(self) -> dict:
        return {"target": list(self.target.orders), "images": [list(g) for g in self.images]}

    @classmethod
    def from_json(cls, data: dict | str) -> "Epimorphism":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(FiniteAbelianGroup(tuple(data["target"])), tuple(tuple(g) for g in data["images"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad epimorphism JSON: {exc}") from None


_EPI_HEAD = re.compile(r"^\s*(Z[^:]*):(.*)$")


def parse_epimorphism(text: str, n: int) -> Epimorphism:
    """Parse ``"Z2: a->1, b->0"`` or ``"Z2xZ2: a->(1,0), b->(0,1)"`` (also ``Z3^2``).

    Generators left out map to zero. JSON input is accepted as well.
    """
    text = text.strip()
    if text.startswith("{"):
        return Epimorphism.from_json(text)
    m = _EPI_HEAD.match(text)
    if not m:
        raise ValueError(f"cannot parse epimorphism {text!r}")
    orders: list[int] = []
    for part in re.split(r"\s*(?:x|\+|⊕)\s*", m.group(1).strip()):
        mm = re.fullmatch(r"Z_?(\d+)(?:\^(\d+))?", part.strip())
        if not mm:
            raise ValueError(f"bad cyclic factor {part!r}")
        orders += [int(mm.group(1))] * int(mm.group(2) or 1)
    G = FiniteAbelianGroup(tuple(orders))
    images = [G.zero] * n
    body = m.group(2)
    for a in re.finditer(r"([a-zA-Z]\w*)\s*->\s*(\([^)]*\)|-?\d+)", body):
        g, _ = _parse_letter(a.group(1))
        if g >= n:
            raise ValueError(f"generator {a.group(1)!r} out of range")
        val = a.group(2).strip("()")
        coords = tuple(int(x) for x in val.split(",")) if val.strip() else ()
        if len(coords) != len(orders):
            raise ValueError(f"image of {a.group(1)} has {len(coords)} coordinates, target needs {len(orders)}")
        images[g] = G.reduce(coords)
    return Epimorphism(G, tuple(images))


# ---------------------------------------------------------------------------
# group ring and Fox calculus


class GroupRingElement:
    """Finitely supported integer combination of elements of a finite abelian group."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteAbelianGroup, coeffs: dict | None = None):
        self.group = group
        self.coeffs = {}
        for g, c in (coeffs or {}).items():
            g = group.reduce(g)
            c = self.coeffs.get(g, 0) + c
            if c:
                self.coeffs[g] = c
            else:
                self.coeffs.pop(g, None)

    @classmethod
    def element(cls, group: FiniteAbelianGroup, g, c: int = 1) -> "GroupRingElement":
        return cls(group, {tuple(g): c})

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElement(self.group, out)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.group, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        out: dict = {}
        G = self.group
        for g, c in self.coeffs.items():
            for h, d in other.coeffs.items():
                k = G.add(g, h)
                out[k] = out.get(k, 0) + c * d
        return GroupRingElement(G, out)

    def augmentation(self) -> int:
        return sum(self.coeffs.values())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.coeffs == ({self.group.zero: other} if other else {})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group == other.group and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{g}" for g, c in sorted(self.coeffs.items()))

    def regular_matrix(self) -> list[list[int]]:
        """Matrix of multiplication by this element on Z[G], basis in lex order."""
        G = self.group
        els = G.elements()
        n = len(els)
        out = [[0] * n for _ in range(n)]
        for col, g in enumerate(els):
            for h, c in self.coeffs.items():
                out[G.index(G.add(g, h))][col] += c
        return out


def fox_derivative(w: Word, j: int, phi: Epimorphism) -> GroupRingElement:
    """Left Fox derivative d w / d a_j pushed into Z[G] along ``phi``."""
    n = len(phi.images)
    if not 0 <= j < n:
        raise ValueError(f"generator index {j} out of range 0..{n - 1}")
    G = phi.target
    coeffs: dict = {}
    h = G.zero  # image of the prefix read so far
    for g, e in w:
        img = phi.images[g]
        if e > 0:
            if g == j:
                coeffs[h] = coeffs.get(h, 0) + 1
            h = G.add(h, img)
        else:
            h = G.add(h, G.neg(img))
            if g == j:
                coeffs[h] = coeffs.get(h, 0) - 1
    return GroupRingElement(G, coeffs)


# ---------------------------------------------------------------------------
# Reidemeister-Schreier


def schreier_tree(phi: Epimorphism) -> dict:
    """Breadth-first spanning tree of the Cayley graph of the target.

    Returns ``{element: (parent, generator)}`` for every non-identity element,
    using only forward edges g -> g + phi(a_j), scanned in generator order.
    """
    G = phi.target
    tree = {}
    seen = {G.zero}
    queue = deque([G.zero])
    while queue:
        h = queue.popleft()
        for j, img in enumerate(phi.images):
            k = G.add(h, img)
            if k not in seen:
                seen.add(k)
                tree[k] = (h, j)
                queue.append(k)
    return tree


def reidemeister_schreier(P: FinitePresentation, phi: Epimorphism) -> FinitePresentation:
    """Presentation of ker(phi) on the non-tree Schreier generators.

    Schreier generators are the edges (g, j) of the Cayley graph; those in
    :func:`schreier_tree` are trivial and dropped. Surviving generators are
    numbered in order of (element in lex order, generator index). Relators
    are the lifts of every relator at every coset, |G|*m of them, some of
    which may reduce to the empty word.
    """
    phi.validate(P)
    G = phi.target
    tree = schreier_tree(phi)
    tree_edges = {(parent, j) for parent, j in tree.values()}
    numbering = {}
    for g in G.elements():
        for j in range(P.n):
            if (g, j) not in tree_edges:
                numbering[(g, j)] = len(numbering)
    relators = []
    for g in G.elements():
        for r in P.relators:
            h = g
            out = []
            for a, e in r:
                img = phi.images[a]
                if e > 0:
                    idx = numbering.get((h, a))
                    if idx is not None:
                        out.append((idx, 1))
                    h = G.add(h, img)
                else:
                    h = G.add(h, G.neg(img))
                    idx = numbering.get((h, a))
                    if idx is not None:
                        out.append((idx, -1))
            relators.append(reduce_word(out))
    name = f"RS({P.name or 'P'}; {G})"
    return FinitePresentation(len(numbering), tuple(relators), name)


def epimorphisms_to_cyclic(P: FinitePresentation, p: int) -> Iterator[Epimorphism]:
    """All surjections onto Z_p, images in lexicographic order."""
    E = P.exponent_matrix().rows
    G = FiniteAbelianGroup((p,))
    for imgs in itertools.product(range(p), repeat=P.n):
        if not any(imgs):
            continue
        if all(sum(E[j][i] * imgs[j] for j in range(P.n)) % p == 0 for i in range(P.m)):
            yield Epimorphism(G, tuple((x,) for x in imgs))


def epimorphisms_to(P: FinitePresentation, target: FiniteAbelianGroup) -> Iterator[Epimorphism]:
    """All epimorphisms onto ``target``, images in lexicographic order."""
    E = P.exponent_matrix().rows
    els = target.elements()
    for imgs in itertools.product(els, repeat=P.n):
        ok = True
        for i in range(P.m):
            acc = target.zero
            for j in range(P.n):
                if E[j][i]:
                    acc = target.add(acc, target.scale(imgs[j], E[j][i]))
            if acc != target.zero:
                ok = False
                break
        if ok and target.is_generated_by(imgs):
            yield Epimorphism(target, tuple(imgs))


# ---------------------------------------------------------------------------
# catalog


def free(n: int) -> FinitePresentation:
    return FinitePresentation(n, (), f"F{n}")


def cyclic(m: int) -> FinitePresentation:
    """<a | a^m>, whose complex is the pseudo-projective plane P_m."""
    return FinitePresentation(1, (gen(0, m),), f"P{m}")


def torus() -> FinitePresentation:
    return FinitePresentation(2, (commutator(gen(0), gen(1)),), "torus")


def klein_bottle() -> FinitePresentation:
    return FinitePresentation.from_strings(2, ["a b a B"], "klein")


def abelian(r: int, d: Sequence[int]) -> FinitePresentation:
    """Canonical presentation of Z^r + Z_{d_1} + ... + Z_{d_k}.

    Generators a_1..a_r then b_1..b_k; relators b_j^{d_j}, then [a_i, a_i'],
    [b_j, b_j'], [a_i, b_j].
    """
    d = tuple(int(x) for x in d)
    if r < 0 or any(x < 2 for x in d) or any(d[i + 1] % d[i] for i in range(len(d) - 1)):
        raise ValueError(f"need r >= 0 and a divisibility chain of factors > 1, got r={r}, d={d}")
    k = len(d)
    a = list(range(r))
    b = list(range(r, r + k))
    rels = [gen(b[j], d[j]) for j in range(k)]
    rels += [commutator(gen(x), gen(y)) for x, y in itertools.combinations(a, 2)]
    rels += [commutator(gen(x), gen(y)) for x, y in itertools.combinations(b, 2)]
    rels += [commutator(gen(x), gen(y)) for x in a for y in b]
    label = " + ".join((["Z"] * r) + [f"Z_{x}" for x in d]) or "1"
    return FinitePresentation(r + k, tuple(rels), f"P_A({label})")


def _crt_r(k: int, l: int) -> int:
    for r in range(k * l):
        if (r + 1) % k == 0 and (r - 1) % l == 0:
            return r
    raise ValueError(f"no r with r = -1 mod {k} and r = 1 mod {l}")


def q_group(n: int, k: int, l: int, r: int | None = None) -> FinitePresentation:
    """Q(8n, k, l) = <x, y, z | x^2 = (xy)^2 = y^{2n}, z^{kl}, x z x^-1 = z^r, y z y^-1 = z^-1>.

    ``r`` defaults to the least nonnegative solution of r = -1 mod k, r = 1 mod l.
    """
    if n < 1 or k < 1 or l < 1:
        raise ValueError("Q(8n,k,l) needs positive n, k, l")
    if gcd(8 * n, k) != 1 or gcd(8 * n, l) != 1 or gcd(k, l) != 1:
        raise ValueError(f"8n={8 * n}, k={k}, l={l} are not pairwise coprime")
    if r is None:
        r = _crt_r(k, l)
    elif (r + 1) % k or (r - 1) % l:
        raise ValueError(f"r={r} does not satisfy r = -1 mod {k} and r = 1 mod {l}")
    x, y, z = gen(0), gen(1), gen(2)
    xy2 = word_power(x + y, 2)
    rels = [
        reduce_word(gen(0, 2) + word_inverse(xy2)),
        reduce_word(xy2 + gen(1, -2 * n)),
        gen(2, k * l),
        reduce_word(x + z + word_inverse(x) + gen(2, -r)),
        reduce_word(y + z + word_inverse(y) + z),
    ]
    return FinitePresentation(3, tuple(rels), f"Q({8 * n},{k},{l})")


def swan(k: int) -> FinitePresentation:
    """Z_3 acting on (Z_7)^k by y -> y^2: generators x, y_1..y_k.

    Relators x^3, y_i^7, [y_i, y_j] (i < j), x y_i x^-1 y_i^-2.
    """
    if k < 1:
        raise ValueError("Swan group needs k >= 1")
    x = gen(0)
    ys = [gen(i + 1) for i in range(k)]
    rels = [gen(0, 3)]
    rels += [gen(i + 1, 7) for i in range(k)]
    rels += [commutator(u, v) for u, v in itertools.combinations(ys, 2)]
    rels += [reduce_word(x + y + word_inverse(x) + word_power(y, -2)) for y in ys]
    return FinitePresentation(k + 1, tuple(rels), f"Swan({k})")


CATALOG_NAMES = ("free", "cyclic", "torus", "klein", "abelian", "Q", "swan")


def catalog(name: str, **params) -> FinitePresentation:
    """Named presentations: ``free(n)``, ``cyclic(m)``, ``torus``, ``klein``,
    ``abelian(r, d)``, ``Q(n, k, l[, r])`` for Q(8n,k,l), ``swan(k)``."""
    builders = {
        "free": lambda n: free(int(n)),
        "cyclic": lambda m: cyclic(int(m)),
        "torus": torus,
        "klein": klein_bottle,
        "abelian": lambda r=0, d=(): abelian(int(r), tuple(d)),
        "Q": lambda n, k, l, r=None: q_group(int(n), int(k), int(l), None if r is None else int(r)),
        "swan": lambda k: swan(int(k)),
    }
    if name not in builders:
        raise ValueError(f"unknown catalog entry {name!r}; choose from {', '.join(CATALOG_NAMES)}")
    try:
        return builders[name](**params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name!r}: {exc}") from None
