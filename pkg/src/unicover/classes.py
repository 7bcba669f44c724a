"""Unipotent classes as Bala-Carter pairs (I, J) and their invariants.

A class is a pair J <= I <= {1..r}: I is the node set of a standard Levi,
J the node set of a distinguished parabolic of [L_I, L_I].  In the class
DSL each node is written '.' (not in I), '0' (in J) or '2' (in I - J), so
``C6:22.20.`` is I = {1,2,4,5}, J = {4}.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _linalg
from .diagram import (
    MarkedDiagram,
    components,
    neighbors,
    very_even_pair,
)
from .root_system import (
    RootSystem,
    RootSystemError,
    _check_type,
    apply_weyl,
    build_root_system,
    longest_element,
    unit,
)

PREDICATE_RANK_CAP = 12


class ClassError(ValueError):
    pass


@dataclass(frozen=True)
class BalaCarterClass:
    type_label: str
    rank: int
    levi: frozenset[int]
    parabolic: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        try:
            _check_type(self.type_label, self.rank)
        except RootSystemError as exc:
            raise ClassError(str(exc)) from None
        levi, par = frozenset(self.levi), frozenset(self.parabolic)
        if not par <= levi:
            raise ClassError(f"parabolic {sorted(par)} is not inside levi {sorted(levi)}")
        if any(not 1 <= i <= self.rank for i in levi):
            raise ClassError(f"levi {sorted(levi)} outside 1..{self.rank}")
        object.__setattr__(self, "levi", levi)
        object.__setattr__(self, "parabolic", par)

    @property
    def system(self) -> RootSystem:
        return build_root_system(self.type_label, self.rank)

    @property
    def levi_diagram(self) -> MarkedDiagram:
        return MarkedDiagram(self.type_label, self.rank, self.levi)

    @property
    def is_identity(self) -> bool:
        return not self.levi

    def __str__(self):
        return render_class(self)


@dataclass(frozen=True)
class DistinguishedDiagram:
    """A distinguished parabolic of the whole group, marked at its label-2 nodes."""

    diagram: MarkedDiagram
    family: str | None = None
    m: int | None = None
    blocks: tuple[int, ...] = ()

    @property
    def parabolic(self) -> frozenset[int]:
        return frozenset(range(1, self.diagram.rank + 1)) - self.diagram.marked


# -- DSL ---------------------------------------------------------------------

def parse_class(text: str) -> BalaCarterClass:
    m = re.fullmatch(r"([A-G])(\d+):(.*)", text, re.S)
    if not m:
        raise ClassError(f"cannot parse class {text!r}: expected TYPE RANK ':' LABELS (at position 0)")
    t, rank, labels = m.group(1), int(m.group(2)), m.group(3)
    start = m.start(3)
    for k, ch in enumerate(labels):
        if ch not in ".02":
            raise ClassError(f"bad label {ch!r} at position {start + k}")
    if len(labels) != rank:
        raise ClassError(
            f"expected {rank} labels, got {len(labels)} (at position {start + min(len(labels), rank)})"
        )
    levi = {k + 1 for k, ch in enumerate(labels) if ch != "."}
    par = {k + 1 for k, ch in enumerate(labels) if ch == "0"}
    return BalaCarterClass(t, rank, frozenset(levi), frozenset(par))


def render_class(c: BalaCarterClass) -> str:
    def ch(i):
        if i not in c.levi:
            return "."
        return "0" if i in c.parabolic else "2"

    return f"{c.type_label}{c.rank}:" + "".join(ch(i) for i in range(1, c.rank + 1))


# -- distinguished parabolics ---------------------------------------------

def _support(beta: Sequence[int]) -> frozenset[int]:
    return frozenset(k + 1 for k, c in enumerate(beta) if c)


def is_distinguished_parabolic(system: RootSystem, I: Iterable[int], J: Iterable[int]) -> bool:
    """dim L_J == dim Q_J / [Q_J, Q_J] computed inside the subsystem on I."""
    I, J = frozenset(I), frozenset(J)
    if not J <= I:
        raise ClassError(f"J = {sorted(J)} is not a subset of I = {sorted(I)}")
    return _distinguished_cached(system.type_label, system.rank, I, J)


@functools.lru_cache(maxsize=1 << 16)
def _distinguished_cached(type_label: str, rank: int, I: frozenset[int], J: frozenset[int]) -> bool:
    pos = _positive_array(type_label, rank)
    outside = [k for k in range(rank) if k + 1 not in I]
    outer = [i - 1 for i in I - J]
    inside = pos[:, outside].sum(axis=1) == 0 if outside else np.ones(len(pos), dtype=bool)
    level = pos[inside][:, outer].sum(axis=1) if outer else np.zeros(int(inside.sum()), dtype=np.int64)
    n_j = int(np.count_nonzero(level == 0))
    n_level1 = int(np.count_nonzero(level == 1))
    return 2 * n_j + len(I) == n_level1


def _chain_sequences(total: int, last_rule) -> Iterator[tuple[int, ...]]:
    """Block sequences n_1 = 2, n_{i+1} in {n_i, n_i + 1}, of sum at most ``total``."""

    def grow(seq: list[int], s: int):
        yield tuple(seq)
        for nxt in (seq[-1], seq[-1] + 1):
            if s + nxt <= total:
                seq.append(nxt)
                yield from grow(seq, s + nxt)
                seq.pop()

    if total >= 2:
        yield from grow([2], 2)


def _marks(m: int, blocks: Sequence[int]) -> set[int]:
    marked = set(range(1, m + 1))
    p = m + 1
    for n in blocks:
        marked.add(p)
        p += n
    return marked


def enumerate_distinguished_family(type_label: str, rank: int) -> list[DistinguishedDiagram]:
    """Distinguished diagrams of a classical group from the block-family description."""
    _check_type(type_label, rank)
    r = rank
    out: list[DistinguishedDiagram] = []

    def emit(marked, fam, m, blocks=()):
        out.append(DistinguishedDiagram(MarkedDiagram(type_label, r, frozenset(marked)), fam, m, tuple(blocks)))

    if type_label == "A":
        emit(range(1, r + 1), "A", r)
    elif type_label == "C":
        emit(range(1, r + 1), "C", r - 1)
        for ns in _chain_sequences(r - 1, None):
            m = r - 1 - sum(ns)
            emit(_marks(m, ns) | {r}, "C", m, ns)
    elif type_label == "B":
        emit(range(1, r + 1), "B", r - 1)
        for head in _chain_sequences(r - 1, None):
            ns = head + (head[-1] // 2,)
            m = r - 1 - sum(ns)
            if m >= 0:
                emit(_marks(m, ns), "B", m, ns)
    elif type_label == "D":
        for k in range((r - 2) // 2 + 1):
            m = r - 2 - 2 * k
            emit(_marks(m, [2] * k) | {r - 1, r}, "D1", m, (2,) * k)
        for head in _chain_sequences(r, None):
            if head[-1] < 3:
                continue
            # the last block runs through both fork nodes
            last = -(-head[-1] // 2)
            m = r - sum(head) - (last + 1)
            if m >= 0:
                emit(_marks(m, head + (last + 1,)), "D2", m, head + (last,))
    else:
        raise ClassError(f"no block family for exceptional type {type_label}; use the predicate")
    out.sort(key=lambda dd: sorted(dd.diagram.marked))
    return out


def enumerate_distinguished_predicate(
    type_label: str, rank: int, cap: int = PREDICATE_RANK_CAP
) -> list[DistinguishedDiagram]:
    """All J <= Delta passing the distinguished-parabolic test (2^rank sweep)."""
    _check_type(type_label, rank)
    if rank > cap:
        raise ClassError(f"rank {rank} exceeds the predicate enumeration cap {cap}")
    sys = build_root_system(type_label, rank)
    full = frozenset(range(1, rank + 1))
    out = []
    for k in range(rank + 1):
        for J in itertools.combinations(range(1, rank + 1), k):
            if is_distinguished_parabolic(sys, full, J):
                out.append(DistinguishedDiagram(MarkedDiagram(type_label, rank, full - frozenset(J))))
    out.sort(key=lambda dd: sorted(dd.diagram.marked))
    return out


@functools.lru_cache(maxsize=None)
def _special_parabolics(type_label: str, m: int) -> tuple[frozenset[int], ...]:
    """Distinguished J (as offsets 1..m) for the non-type-A factor X_m of a Levi."""
    if m <= 1 or (type_label == "D" and m == 2):
        return (frozenset(),)
    fam = enumerate_distinguished_family(type_label, m)
    return tuple(dd.parabolic for dd in fam)


# -- Levi classes and class catalogues ------------------------------------

def _layout(chain: Sequence[int], lengths: Sequence[int]) -> set[int]:
    """Pack components of the given lengths (longest first) flush right in ``chain``."""
    marked: set[int] = set()
    end = len(chain)
    for ell in sorted(lengths):
        marked.update(chain[end - ell:end])
        end -= ell + 1
    if end < -1:
        raise AssertionError("components do not fit")
    return marked


def _length_multisets(room: int, max_len: int | None = None) -> Iterator[tuple[int, ...]]:
    """Non-increasing tuples of component lengths fitting in ``room`` chain nodes."""
    if max_len is None:
        max_len = room
    yield ()
    for ell in range(min(max_len, room), 0, -1):
        for rest in _length_multisets(room - ell - 1, ell):
            yield (ell,) + rest


def normal_levis(type_label: str, rank: int) -> list[MarkedDiagram]:
    """One normal-form diagram per Levi class of a classical group."""
    r = rank
    out: list[MarkedDiagram] = []

    def add(marked):
        out.append(MarkedDiagram(type_label, r, frozenset(marked)))

    if type_label == "A":
        chain = list(range(1, r + 1))
        for ls in _length_multisets(r):
            add(_layout(chain, ls))
    elif type_label in "BC":
        for m in range(r + 1):
            special = set(range(r - m + 1, r + 1))
            chain = list(range(1, r - m)) if m else list(range(1, r))
            for ls in _length_multisets(len(chain)):
                add(_layout(chain, ls) | special)
    elif type_label == "D":
        for m in [0] + list(range(2, r + 1)):
            special = set(range(r - m + 1, r + 1))
            if m:
                chain = list(range(1, r - m))
                for ls in _length_multisets(len(chain)):
                    add(_layout(chain, ls) | special)
                continue
            rchain = list(range(1, r - 1)) + [r]
            for ls in _length_multisets(r - 1):
                add(_layout(rchain, ls))
                if sum(ls) + len(ls) == r and all(x % 2 for x in ls):
                    add(_layout(list(range(1, r)), ls))
    else:
        raise ClassError("normal forms exist for classical types only")
    return out


def _opposition(sys: RootSystem, nodes: frozenset[int]) -> dict[int, int]:
    """The involution i -> j with -w0(alpha_i) = alpha_j on the parabolic ``nodes``."""
    if not nodes:
        return {}
    w0 = longest_element(sys, nodes)
    out = {}
    for i in nodes:
        img = apply_weyl(sys, w0, unit(sys.rank, i))
        (j,) = [k + 1 for k, c in enumerate(img) if c]
        out[i] = j
    return out


def _component_of(type_label: str, rank: int, nodes: frozenset[int], start: int) -> frozenset[int]:
    adj = neighbors(type_label, rank)
    comp, stack = {start}, [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w in nodes and w not in comp:
                comp.add(w)
                stack.append(w)
    return frozenset(comp)


def elementary_conjugates(sys: RootSystem, I: frozenset[int], J: frozenset[int] = frozenset()):
    """Pairs (I', J') obtained from (I, J) by one elementary conjugation.

    For a node a outside I let K be the component of I + {a} containing a.
    The longest element of K followed by that of I within K maps the simple
    roots of I inside K onto another set of simple roots.
    """
    t, r = sys.type_label, sys.rank
    for a in range(1, r + 1):
        if a in I:
            continue
        K = _component_of(t, r, I | {a}, a)
        inner = I & K
        iota_k = _opposition(sys, K)
        iota_i = _opposition(sys, inner)
        new_i = (I - K) | {iota_k[iota_i[x]] for x in inner}
        new_j = (J - K) | {iota_k[iota_i[x]] for x in J & K}
        yield a, frozenset(new_i), frozenset(new_j)


def _distinguished_in_levi(sys: RootSystem, I: frozenset[int]) -> list[frozenset[int]]:
    choices = []
    d = MarkedDiagram(sys.type_label, sys.rank, I)
    for comp in components(d):
        comp = frozenset(comp)
        opts = []
        for k in range(len(comp) + 1):
            for J in itertools.combinations(sorted(comp), k):
                if is_distinguished_parabolic(sys, comp, J):
                    opts.append(frozenset(J))
        choices.append(opts)
    return [frozenset().union(*combo) for combo in itertools.product(*choices)]


def conjugacy_orbits(type_label: str, rank: int, with_parabolic: bool = True) -> list[list[tuple]]:
    """Orbits of (I, J) pairs (or of Levi sets I) under elementary conjugations.

    Brute force over all 2^rank subsets; used for exceptional catalogues and
    as an oracle for the classical normal forms.
    """
    sys = build_root_system(type_label, rank)
    nodes = []
    for k in range(rank + 1):
        for I in itertools.combinations(range(1, rank + 1), k):
            I = frozenset(I)
            if with_parabolic:
                nodes.extend((I, J) for J in _distinguished_in_levi(sys, I))
            else:
                nodes.append((I, frozenset()))
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for I, J in nodes:
        for _, I2, J2 in elementary_conjugates(sys, I, J):
            a, b = find((I, J)), find((I2, J2))
            if a != b:
                parent[a] = b
    groups: dict = {}
    for n in nodes:
        groups.setdefault(find(n), []).append(n)
    key = lambda p: (len(p[0]), sorted(p[0]), sorted(p[1]))
    orbits = [sorted(g, key=key) for g in groups.values()]
    orbits.sort(key=lambda g: key(g[0]))
    return orbits


def enumerate_classes(type_label: str, rank: int, max_rank: int = 40) -> list[BalaCarterClass]:
    """Every unipotent class once, as a Bala-Carter pair in normal form.

    Classical types use normal-form Levis; exceptional types use the orbit
    computation with the predicate, each orbit represented by its first pair.
    """
    _check_type(type_label, rank)
    if rank > max_rank:
        raise ClassError(f"rank {rank} above the cap {max_rank}")
    if type_label not in "ABCD":
        return [BalaCarterClass(type_label, rank, I, J) for I, J in (g[0] for g in conjugacy_orbits(type_label, rank))]
    out = []
    r = rank
    for d in normal_levis(type_label, rank):
        I = d.marked
        special: frozenset[int] = frozenset()
        if type_label in "BC" and r in I:
            special = frozenset(next(k for k in components(d) if r in k))
        elif type_label == "D" and {r - 1, r} <= I:
            special = frozenset(v for k in components(d) if r in k or r - 1 in k for v in k)
        m = len(special)
        for J in _special_parabolics(type_label, m):
            out.append(BalaCarterClass(type_label, r, I, frozenset(j + r - m for j in J)))
    out.sort(key=lambda c: (len(c.levi), sorted(c.levi), sorted(c.parabolic)))
    return out


def is_valid_class(c: BalaCarterClass) -> bool:
    """Each component of I carries a distinguished parabolic."""
    sys = c.system
    for comp in components(c.levi_diagram):
        comp = frozenset(comp)
        if not is_distinguished_parabolic(sys, comp, c.parabolic & comp):
            return False
    return True


def validate_class(c: BalaCarterClass) -> BalaCarterClass:
    if not is_valid_class(c):
        raise ClassError(f"{render_class(c)}: J is not distinguished in every component of I")
    return c


# -- invariants ----------------------------------------------------------------

def class_rank(c: BalaCarterClass) -> int:
    return len(c.levi)


def class_corank(c: BalaCarterClass) -> int:
    return c.rank - len(c.levi)


@functools.lru_cache(maxsize=None)
def _solve_shape(a: tuple, b: tuple) -> tuple:
    return tuple(_linalg.solve(a, b))


def _component_pairings(type_label: str, rank: int, comp: frozenset[int], J: frozenset[int]) -> tuple:
    """Sparse ``<alpha_i, lambda_K>`` for the coweight lambda_K of one component K.

    lambda_K lies in the span of the coroots of K and pairs to 0 on J and 2
    on K - J.
    """
    if not _distinguished_cached(type_label, rank, comp, J):
        raise ClassError(f"J = {sorted(J)} is not distinguished in the component {sorted(comp)}")
    sys = build_root_system(type_label, rank)
    idx = sorted(comp)
    a = tuple(tuple(sys.cartan[j - 1][i - 1] for j in idx) for i in idx)
    b = tuple(0 if i in J else 2 for i in idx)
    p: dict[int, Fraction] = {}
    for j, lj in zip(idx, _solve_shape(a, b)):
        for i, cij in enumerate(sys.cartan[j - 1]):
            if cij and lj:
                p[i] = p.get(i, 0) + lj * cij
    return tuple(sorted((i, v) for i, v in p.items() if v))


_component_pairings = functools.lru_cache(maxsize=1 << 16)(_component_pairings)


def _pairing_vector(c: BalaCarterClass) -> list[int]:
    """``<alpha_i, lambda>`` for the (not yet dominant) coweight of the class."""
    p = [Fraction(0)] * c.rank
    for comp in components(c.levi_diagram):
        comp = frozenset(comp)
        for i, v in _component_pairings(c.type_label, c.rank, comp, c.parabolic & comp):
            p[i] += v
    if any(x.denominator != 1 for x in p):
        raise ArithmeticError(f"{render_class(c)}: non-integral pairing {p}")
    return [int(x) for x in p]


def weighted_diagram(c: BalaCarterClass) -> tuple[int, ...]:
    """Labels of the dominant conjugate of the class's coweight."""
    if c.is_identity:
        return (0,) * c.rank
    sys = c.system
    p = _pairing_vector(c)
    guard = len(sys.positive_roots) * max(2, max(abs(x) for x in p)) + 1
    steps = 0
    while True:
        neg = next((i for i, x in enumerate(p) if x < 0), None)
        if neg is None:
            break
        steps += 1
        if steps > guard:
            raise RuntimeError(f"{render_class(c)}: dominance loop did not terminate")
        v = p[neg]
        row = sys.cartan[neg]
        p = [x - v * row[k] for k, x in enumerate(p)]
    if any(x not in (0, 1, 2) for x in p):
        raise ArithmeticError(f"{render_class(c)}: weighted diagram label out of range: {p}")
    return tuple(p)


@functools.lru_cache(maxsize=None)
def _positive_array(type_label: str, rank: int) -> np.ndarray:
    return np.array(build_root_system(type_label, rank).positive_roots, dtype=np.int64).reshape(-1, rank)


@functools.lru_cache(maxsize=None)
def _roots_array(type_label: str, rank: int) -> np.ndarray:
    return np.array(build_root_system(type_label, rank).roots, dtype=np.int64)


def class_dimension(c: BalaCarterClass, dominant: bool = False) -> int:
    """dim C = |Phi| - #{beta : <beta, lambda> = 0} - #{beta : <beta, lambda> = 1}.

    The multiset of pairings is Weyl-invariant, so the undominated coweight
    gives the same count; ``dominant=True`` forces the dominant one.
    """
    if c.is_identity:
        return 0
    p = weighted_diagram(c) if dominant else _pairing_vector(c)
    vals = _roots_array(c.type_label, c.rank) @ np.array(p, dtype=np.int64)
    return int(len(vals) - np.count_nonzero(vals == 0) - np.count_nonzero(vals == 1))


def richardson_dimension(system: RootSystem, J: Iterable[int]) -> int:
    """2 dim Q_J for a distinguished parabolic P_J of the whole group."""
    J = frozenset(J)
    full = frozenset(range(1, system.rank + 1))
    if not is_distinguished_parabolic(system, full, J):
        raise ClassError(f"J = {sorted(J)} is not a distinguished parabolic")
    n = sum(1 for b in system.positive_roots if not _support(b) <= J)
    return 2 * n


def class_flags(c: BalaCarterClass) -> list[str]:
    flags = []
    if c.is_identity:
        flags.append("identity")
    if class_corank(c) == 0:
        flags.append("distinguished")
    if very_even_pair(c.levi_diagram):
        flags.append("graph_auto_pair")
    return flags


def class_record(c: BalaCarterClass) -> dict:
    return {
        "type": c.type_label,
        "rank": c.rank,
        "class": render_class(c),
        "levi": sorted(c.levi),
        "parabolic": sorted(c.parabolic),
        "rank_c": class_rank(c),
        "corank": class_corank(c),
        "dim": class_dimension(c),
        "weighted_labels": list(weighted_diagram(c)),
        "flags": class_flags(c),
    }
