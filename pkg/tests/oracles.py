"""Independent oracles: partition combinatorics and Euclidean root realizations.

Nothing here imports the package; the tests compare its output against
these values.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from fractions import Fraction


# -- partitions -------------------------------------------------------------------

def partitions(n: int, largest: int | None = None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 0, -1):
        for rest in partitions(n - p, p):
            yield (p,) + rest


@functools.lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    return sum(1 for _ in partitions(n))


def _mults(p):
    return Counter(p)


def symplectic_count(r: int) -> int:
    """Partitions of 2r whose odd parts have even multiplicity."""
    return sum(1 for p in partitions(2 * r) if all(m % 2 == 0 for k, m in _mults(p).items() if k % 2))


def orthogonal_partitions(n: int):
    """Partitions of n whose even parts have even multiplicity."""
    return [p for p in partitions(n) if all(m % 2 == 0 for k, m in _mults(p).items() if k % 2 == 0)]


def odd_orthogonal_count(r: int) -> int:
    return len(orthogonal_partitions(2 * r + 1))


def even_orthogonal_count(r: int) -> int:
    """Classes in type D: very even partitions (all parts even) count twice."""
    total = 0
    for p in orthogonal_partitions(2 * r):
        total += 2 if all(k % 2 == 0 for k in p) else 1
    return total


def distinct_parts(n: int, parity: int) -> int:
    """Partitions of n into distinct parts all congruent to ``parity`` mod 2."""
    return sum(1 for p in partitions(n) if len(set(p)) == len(p) and all(k % 2 == parity for k in p))


def conjugate(p):
    return tuple(sum(1 for k in p if k > i) for i in range(p[0])) if p else ()


def type_a_dimension(p) -> int:
    """dim of the unipotent class of SL_n with Jordan type p."""
    n = sum(p)
    return n * n - sum(c * c for c in conjugate(p))


def type_a_partition(component_lengths, rank: int):
    """Jordan type of the regular unipotent of a Levi with the given A-components."""
    parts = [ell + 1 for ell in component_lengths]
    parts += [1] * (rank + 1 - sum(parts))
    return tuple(sorted(parts, reverse=True))


# -- Euclidean realizations ---------------------------------------------------

def _e(n, *pairs):
    v = [Fraction(0)] * n
    for i, c in pairs:
        v[i] += Fraction(c)
    return tuple(v)


def simple_roots_euclidean(t: str, r: int):
    if t == "A":
        return [_e(r + 1, (i, 1), (i + 1, -1)) for i in range(r)]
    if t in "BCD":
        base = [_e(r, (i, 1), (i + 1, -1)) for i in range(r - 1)]
        last = {"B": _e(r, (r - 1, 1)), "C": _e(r, (r - 1, 2)), "D": _e(r, (r - 2, 1), (r - 1, 1))}[t]
        return base + [last]
    if t == "G":
        return [_e(3, (0, 1), (1, -1)), _e(3, (0, -2), (1, 1), (2, 1))]
    if t == "F":
        h = Fraction(1, 2)
        return [_e(4, (1, 1), (2, -1)), _e(4, (2, 1), (3, -1)), _e(4, (3, 1)), _e(4, (0, h), (1, -h), (2, -h), (3, -h))]
    if t == "E":
        h = Fraction(1, 2)
        e8 = [
            _e(8, (0, h), (1, -h), (2, -h), (3, -h), (4, -h), (5, -h), (6, -h), (7, h)),
            _e(8, (0, 1), (1, 1)),
            _e(8, (0, -1), (1, 1)),
            _e(8, (1, -1), (2, 1)),
            _e(8, (2, -1), (3, 1)),
            _e(8, (3, -1), (4, 1)),
            _e(8, (4, -1), (5, 1)),
            _e(8, (5, -1), (6, 1)),
        ]
        return e8[:r]
    raise ValueError(t)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def euclidean_cartan(t: str, r: int):
    """Entry (i, j) = 2 (alpha_j, alpha_i) / (alpha_i, alpha_i)."""
    s = simple_roots_euclidean(t, r)
    return [[int(2 * dot(s[j], s[i]) / dot(s[i], s[i])) for j in range(r)] for i in range(r)]


def euclidean_roots(t: str, r: int):
    """Close the simple roots under Euclidean reflections."""
    simple = simple_roots_euclidean(t, r)
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for a in simple:
                w = tuple(x - 2 * dot(v, a) / dot(a, a) * y for x, y in zip(v, a))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def to_euclidean(t: str, r: int, coeffs):
    simple = simple_roots_euclidean(t, r)
    n = len(simple[0])
    return tuple(sum(c * s[k] for c, s in zip(coeffs, simple)) for k in range(n))


def root_count_formula(t: str, r: int) -> int:
    return {
        "A": r * (r + 1),
        "B": 2 * r * r,
        "C": 2 * r * r,
        "D": 2 * r * (r - 1),
        "G": 12,
        "F": 48,
        "E": {6: 72, 7: 126, 8: 240}.get(r, 0),
    }[t]


# -- subsets ---------------------------------------------------------------------------

def subsets(n: int):
    for k in range(n + 1):
        yield from itertools.combinations(range(1, n + 1), k)
