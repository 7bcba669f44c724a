"""Simple root systems over the simple-root basis.

Roots are integer tuples of coefficients over the simple roots
``alpha_1 .. alpha_r`` (Bourbaki numbering).  Coweights are rational tuples
over the simple coroots.  The Cartan matrix is stored with the convention

    cartan[i][j] = <alpha_j, alpha_i^vee>

so that ``s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i``.  For C_3 this
gives ``cartan[1][2] = <alpha_3, alpha_2^vee> = -2`` (0-based indices): the
long root ``alpha_3 = 2 e_3`` pairs with the short coroot ``alpha_2^vee =
e_2 - e_3`` to ``-2``.

Weyl words are sequences of 1-based node indices.  A word acts on a vector
by applying its letters from left to right: the first letter acts first.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import _linalg

Root = tuple[int, ...]
WeylWord = tuple[int, ...]

TYPES = "ABCDEFG"


@dataclass(frozen=True)
class Coweight:
    """An element of the coweight space in simple-coroot coordinates."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def coroot(cls, rank: int, i: int) -> "Coweight":
        """The simple coroot ``alpha_i^vee`` (1-based)."""
        return cls(tuple(1 if j == i - 1 else 0 for j in range(rank)))

    def __add__(self, other: "Coweight") -> "Coweight":
        return Coweight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Coweight":
        return Coweight(tuple(-a for a in self.coords))

    def __sub__(self, other: "Coweight") -> "Coweight":
        return self + (-other)

    def __repr__(self):
        return f"Coweight({[str(c) for c in self.coords]})"


class RootSystemError(ValueError):
    pass


def _check_type(type_label: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if type_label not in ok or not isinstance(rank, int) or not ok[type_label]:
        raise RootSystemError(f"no simple root system of type {type_label}{rank}")


def dynkin_edges(type_label: str, rank: int) -> list[tuple[int, int]]:
    """Edges of the Dynkin graph (1-based, unordered, multiplicity ignored)."""
    _check_type(type_label, rank)
    if type_label == "D":
        edges = [(i, i + 1) for i in range(1, rank - 1)]
        edges.append((rank - 2, rank))
        return edges
    if type_label == "E":
        edges = [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, rank)]
        return edges
    return [(i, i + 1) for i in range(1, rank)]


def cartan_matrix(type_label: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with entry (i, j) = <alpha_j, alpha_i^vee>."""
    _check_type(type_label, rank)
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for a, b in dynkin_edges(type_label, rank):
        c[a - 1][b - 1] = c[b - 1][a - 1] = -1
    r = rank - 1
    if type_label == "B":
        # alpha_r short
        c[r][r - 1] = -2
    elif type_label == "C":
        # alpha_r long
        c[r - 1][r] = -2
    elif type_label == "F":
        # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        c[2][1] = -2
    elif type_label == "G":
        # alpha_1 short, alpha_2 long
        c[0][1] = -3
    return tuple(tuple(row) for row in c)


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    roots: tuple[Root, ...] = field(repr=False)

    @functools.cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.roots)

    @functools.cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(b for b in self.roots if sum(b) > 0)

    @functools.cached_property
    def root_index(self) -> dict[Root, int]:
        return {b: k for k, b in enumerate(self.roots)}

    @functools.cached_property
    def lengths(self) -> tuple[int, ...]:
        """Squared lengths of the simple roots, scaled to coprime integers."""
        n = self.rank
        d: list = [None] * n
        d[0] = Fraction(1)
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if d[j] is None and self.cartan[i][j] != 0:
                    d[j] = d[i] * Fraction(self.cartan[i][j], self.cartan[j][i])
                    stack.append(j)
        den = 1
        for x in d:
            den = den * x.denominator // _gcd(den, x.denominator)
        ints = [int(x * den) for x in d]
        g = 0
        for x in ints:
            g = _gcd(g, x)
        return tuple(x // g for x in ints)

    @property
    def dimension(self) -> int:
        """Dimension of the corresponding simple group."""
        return len(self.roots) + self.rank

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(unit(self.rank, i) for i in range(1, self.rank + 1))

    def norm(self, x: Sequence[int]) -> Fraction:
        """Twice-scaled inner product ``(x, x)`` in the units of ``lengths``."""
        return self.inner(x, x)

    def inner(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        n = self.rank
        total = Fraction(0)
        for i in range(n):
            if x[i] == 0:
                continue
            di = self.lengths[i]
            row = self.cartan[i]
            s = 0
            for j in range(n):
                if y[j] and row[j]:
                    s += row[j] * y[j]
            total += Fraction(di * x[i] * s, 2)
        return total

    def coroot(self, beta: Sequence[int]) -> Coweight:
        """``beta^vee`` in simple-coroot coordinates."""
        nb = self.norm(beta)
        return Coweight(tuple(Fraction(b * self.lengths[i]) / nb for i, b in enumerate(beta)))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def unit(rank: int, i: int) -> Root:
    return tuple(1 if j == i - 1 else 0 for j in range(rank))


def _reflect_root(cartan, beta: Root, i: int) -> Root:
    row = cartan[i]
    p = 0
    for j, b in enumerate(beta):
        if b:
            p += b * row[j]
    if p == 0:
        return beta
    out = list(beta)
    out[i] -= p
    return tuple(out)


@functools.lru_cache(maxsize=None)
def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Build the root system of the given type by closing the simple roots
    under simple reflections.  Roots are sorted lexicographically."""
    cartan = cartan_matrix(type_label, rank)
    simple = [unit(rank, i) for i in range(1, rank + 1)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(rank):
            img = _reflect_root(cartan, beta, i)
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return RootSystem(type_label, rank, cartan, tuple(sorted(seen)))


def expected_root_count(type_label: str, rank: int) -> int:
    _check_type(type_label, rank)
    r = rank
    return {
        "A": r * (r + 1),
        "B": 2 * r * r,
        "C": 2 * r * r,
        "D": 2 * r * (r - 1),
        "E": {6: 72, 7: 126, 8: 240}.get(r, 0),
        "F": 48,
        "G": 12,
    }[type_label]


def _check_index(sys: RootSystem, i: int) -> None:
    if not 1 <= i <= sys.rank:
        raise IndexError(f"node index {i} out of range 1..{sys.rank}")


def cartan_pairing(sys: RootSystem, beta: Sequence[int], i: int) -> int:
    """``<beta, alpha_i^vee>`` for an integer vector ``beta``."""
    _check_index(sys, i)
    row = sys.cartan[i - 1]
    return sum(b * row[j] for j, b in enumerate(beta))


def coweight_pairing(sys: RootSystem, beta: Sequence[int], lam: Coweight) -> Fraction:
    """``<beta, lam>`` for a root-lattice vector and a coweight."""
    total = Fraction(0)
    for j, lj in enumerate(lam.coords):
        if lj:
            row = sys.cartan[j]
            total += lj * sum(b * row[k] for k, b in enumerate(beta) if b)
    return total


def simple_pairings(sys: RootSystem, lam: Coweight) -> tuple[Fraction, ...]:
    """``(<alpha_1, lam>, ..., <alpha_r, lam>)``."""
    n = sys.rank
    out = [Fraction(0)] * n
    for j, lj in enumerate(lam.coords):
        if lj:
            row = sys.cartan[j]
            for i in range(n):
                if row[i]:
                    out[i] += lj * row[i]
    return tuple(out)


def is_root(sys: RootSystem, vector: Sequence[int]) -> bool:
    if len(vector) != sys.rank:
        raise ValueError(f"vector length {len(vector)} != rank {sys.rank}")
    return tuple(vector) in sys.root_set


def reflect(sys: RootSystem, x, i: int):
    """Simple reflection ``s_i`` applied to a root vector or a coweight."""
    _check_index(sys, i)
    if isinstance(x, Coweight):
        p = simple_pairings(sys, x)[i - 1]
        if p == 0:
            return x
        coords = list(x.coords)
        coords[i - 1] -= p
        return Coweight(tuple(coords))
    return _reflect_root(sys.cartan, tuple(x), i - 1)


def apply_weyl(sys: RootSystem, word: Iterable[int], x: Union[Sequence[int], Coweight]):
    """Apply the letters of ``word`` to ``x`` in order (first letter first)."""
    word = tuple(word)
    for i in word:
        _check_index(sys, i)
    if isinstance(x, Coweight):
        for i in word:
            x = reflect(sys, x, i)
        return x
    v = tuple(x)
    for i in word:
        v = _reflect_root(sys.cartan, v, i - 1)
    return v


def reflect_in_root(sys: RootSystem, x: Sequence[int], beta: Sequence[int]) -> Root:
    """``s_beta(x) = x - <x, beta^vee> beta`` for an arbitrary root ``beta``."""
    bv = sys.coroot(beta).coords
    p = sum(bv[i] * cartan_pairing(sys, x, i + 1) for i in range(sys.rank) if bv[i])
    if p.denominator != 1:
        raise ArithmeticError("non-integral Cartan pairing")
    p = int(p)
    return tuple(a - p * b for a, b in zip(x, beta))


def subsystem(sys: RootSystem, generators: Iterable[Sequence[int]]) -> frozenset[Root]:
    """Smallest reflection-closed subset of roots containing ``generators``."""
    gens = [tuple(g) for g in generators]
    for g in gens:
        if g not in sys.root_set:
            raise ValueError(f"{g} is not a root")
    out = set(gens) | {tuple(-a for a in g) for g in gens}
    queue = deque(out)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = reflect_in_root(sys, x, g)
            if y not in out:
                out.add(y)
                queue.append(y)
    return frozenset(out)


def support_subsystem(sys: RootSystem, support: Iterable[int]) -> frozenset[Root]:
    """Roots whose support lies in the given node set (the standard Levi subsystem)."""
    s = set(support)
    return frozenset(b for b in sys.roots if all(c == 0 or (k + 1) in s for k, c in enumerate(b)))


@functools.lru_cache(maxsize=None)
def _longest_cached(type_label: str, rank: int, support: tuple[int, ...]) -> WeylWord:
    sys = build_root_system(type_label, rank)
    cartan = sys.cartan
    idx = [i - 1 for i in support]
    # g holds the inverse of the current element as columns over the support;
    # appending s_j right-multiplies g by S_j, touching only columns adjacent to j.
    g = {k: {k: 1} for k in idx}
    word: list[int] = []
    while True:
        for j in idx:
            col = g[j]
            if all(v >= 0 for v in col.values()):
                break
        else:
            return tuple(word)
        word.append(j + 1)
        gj = dict(g[j])
        for k in idx:
            c = cartan[j][k]
            if k == j:
                g[k] = {a: -v for a, v in gj.items()}
            elif c:
                col = dict(g[k])
                for a, v in gj.items():
                    col[a] = col.get(a, 0) - c * v
                g[k] = {a: v for a, v in col.items() if v}


def longest_element(sys: RootSystem, support: Iterable[int] | None = None) -> WeylWord:
    """Reduced word for the longest element of the parabolic subgroup on ``support``.

    Greedy: repeatedly append the lowest-index simple reflection that still
    increases the number of positive roots sent to negative ones.
    """
    if support is None:
        support = range(1, sys.rank + 1)
    sup = tuple(sorted(set(support)))
    for i in sup:
        _check_index(sys, i)
    return _longest_cached(sys.type_label, sys.rank, sup)


def weyl_matrix(sys: RootSystem, word: Iterable[int], coweight: bool = False) -> tuple[tuple[int, ...], ...]:
    """Integer matrix of the word's action; column k is the image of the k-th basis vector."""
    n = sys.rank
    cols = []
    for k in range(1, n + 1):
        if coweight:
            img = apply_weyl(sys, word, Coweight.coroot(n, k)).coords
            cols.append(tuple(int(c) for c in img))
        else:
            cols.append(apply_weyl(sys, word, unit(n, k)))
    return tuple(tuple(cols[k][i] for k in range(n)) for i in range(n))


def lattice_rank(coweights: Iterable[Union[Coweight, Sequence]]) -> int:
    rows = [c.coords if isinstance(c, Coweight) else tuple(c) for c in coweights]
    if not rows:
        return 0
    return _linalg.rank(rows)


def to_json(roots: Iterable[Root]) -> list[list[int]]:
    return [list(b) for b in sorted(roots)]
