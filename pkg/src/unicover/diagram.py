"""Marked Dynkin diagrams, their text form, and the move calculus on Levi subsets.

A diagram stores its marked node set directly.  When a diagram describes a
standard Levi subgroup, the marked nodes are the simple roots of the Levi.

Moves (each carries the node set whose longest Weyl element conjugates the
Levi of the source diagram onto the Levi of the target):

* shift   - a component gains a neighbouring node and loses its far end;
            the component plus the new node must form a simply-laced chain
            and the new node must not touch another component.
* permute - two components separated by a single node swap lengths inside
            their common span.
* flip    - type D only: a component holding exactly one fork node, whose
            block of coordinates has odd size, trades that fork node for the
            other one.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .root_system import RootSystemError, _check_type, cartan_matrix, dynkin_edges


class DiagramError(ValueError):
    pass


class DiagramParseError(DiagramError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class IllegalMove(DiagramError):
    pass


@dataclass(frozen=True, order=True)
class MarkedDiagram:
    type_label: str
    rank: int
    marked: frozenset[int]

    def __post_init__(self):
        try:
            _check_type(self.type_label, self.rank)
        except RootSystemError as exc:
            raise DiagramError(str(exc)) from None
        m = frozenset(self.marked)
        if any(not 1 <= i <= self.rank for i in m):
            raise DiagramError(f"marked nodes {sorted(m)} outside 1..{self.rank}")
        object.__setattr__(self, "marked", m)

    def __str__(self):
        return render_diagram(self)

    def with_marked(self, marked: Iterable[int]) -> "MarkedDiagram":
        return MarkedDiagram(self.type_label, self.rank, frozenset(marked))


@functools.lru_cache(maxsize=None)
def neighbors(type_label: str, rank: int) -> tuple[frozenset[int], ...]:
    """Adjacency in the Dynkin graph; index 0 is unused."""
    adj: list[set[int]] = [set() for _ in range(rank + 1)]
    for a, b in dynkin_edges(type_label, rank):
        adj[a].add(b)
        adj[b].add(a)
    return tuple(frozenset(s) for s in adj)


def parse_diagram(text: str) -> MarkedDiagram:
    """Parse ``TYPE RANK ':' MARKS`` with one ``x``/``o`` per node, e.g. ``A4:xoxo``."""
    if not text or text[0] not in "ABCDEFG":
        raise DiagramParseError("expected a type letter A-G", 0)
    pos = 1
    digits = re.match(r"\d+", text[pos:])
    if not digits:
        raise DiagramParseError("expected a rank", pos)
    rank = int(digits.group())
    pos += len(digits.group())
    if pos >= len(text) or text[pos] != ":":
        raise DiagramParseError("expected ':'", pos)
    pos += 1
    try:
        _check_type(text[0], rank)
    except RootSystemError as exc:
        raise DiagramParseError(str(exc), 0) from None
    marks = text[pos:]
    for k, ch in enumerate(marks):
        if ch not in "xo":
            raise DiagramParseError(f"bad mark {ch!r}, expected 'x' or 'o'", pos + k)
        if k >= rank:
            raise DiagramParseError(f"too many marks for rank {rank}", pos + k)
    if len(marks) < rank:
        raise DiagramParseError(f"expected {rank} marks, got {len(marks)}", pos + len(marks))
    return MarkedDiagram(text[0], rank, frozenset(k + 1 for k, ch in enumerate(marks) if ch == "x"))


def render_diagram(d: MarkedDiagram, style: str = "compact") -> str:
    if style == "compact":
        marks = "".join("x" if i in d.marked else "o" for i in range(1, d.rank + 1))
        return f"{d.type_label}{d.rank}:{marks}"
    if style == "ascii":
        return _render_ascii(d)
    raise ValueError(f"unknown style {style!r}")


def _bond(d: MarkedDiagram, a: int, b: int) -> str:
    c = cartan_matrix(d.type_label, d.rank)
    x, y = c[a - 1][b - 1], c[b - 1][a - 1]
    if x == y == -1:
        return "---"
    # arrow points at the shorter root
    n = max(-x, -y)
    line = "=" if n == 2 else "≡"
    return f"{line}>{line}" if -y > -x else f"{line}<{line}"


def _render_ascii(d: MarkedDiagram) -> str:
    glyph = {True: "●", False: "○"}
    r = d.rank

    def chain(nodes: Sequence[int]) -> tuple[str, dict[int, int]]:
        parts, col, cols = [], 0, {}
        for k, n in enumerate(nodes):
            if k:
                b = _bond(d, nodes[k - 1], n)
                parts.append(b)
                col += len(b)
            cols[n] = col
            parts.append(glyph[n in d.marked])
            col += 1
        return "".join(parts), cols

    if d.type_label == "D":
        top, cols = chain(list(range(1, r)))
        c = cols[r - 2]
        return "\n".join([top, " " * c + "|", " " * c + glyph[r in d.marked]])
    if d.type_label == "E":
        top, cols = chain([1] + list(range(3, r + 1)))
        c = cols[4]
        return "\n".join([top, " " * c + "|", " " * c + glyph[2 in d.marked]])
    return chain(list(range(1, r + 1)))[0]


def components(d: MarkedDiagram) -> list[tuple[int, ...]]:
    """Maximal connected sets of marked nodes, ordered by their smallest node."""
    adj = neighbors(d.type_label, d.rank)
    seen: set[int] = set()
    out = []
    for start in sorted(d.marked):
        if start in seen:
            continue
        comp, stack = {start}, [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in d.marked and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(tuple(sorted(comp)))
    return out


def _path_order(type_label: str, rank: int, nodes: Iterable[int]) -> list[int] | None:
    """Order ``nodes`` along a simply-laced path, or ``None`` if they do not form one."""
    nodes = set(nodes)
    if not nodes:
        return []
    adj = neighbors(type_label, rank)
    c = cartan_matrix(type_label, rank)
    deg = {v: len(adj[v] & nodes) for v in nodes}
    if any(x > 2 for x in deg.values()):
        return None
    for v in nodes:
        for w in adj[v] & nodes:
            if c[v - 1][w - 1] != -1 or c[w - 1][v - 1] != -1:
                return None
    ends = sorted(v for v in nodes if deg[v] <= 1)
    if not ends:
        return None
    path, prev = [ends[0]], None
    while True:
        nxt = [w for w in adj[path[-1]] & nodes if w != prev]
        if not nxt:
            break
        prev = path[-1]
        path.append(nxt[0])
    return path if len(path) == len(nodes) else None


def is_chain(type_label: str, rank: int, nodes: Iterable[int]) -> bool:
    return _path_order(type_label, rank, nodes) is not None


@dataclass(frozen=True)
class Move:
    kind: str
    support: tuple[int, ...]
    source: MarkedDiagram
    target: MarkedDiagram

    def __str__(self):
        return f"{self.kind}[{','.join(map(str, self.support))}]: {self.source} -> {self.target}"


def _as_component(d: MarkedDiagram, component: Iterable[int]) -> tuple[int, ...]:
    k = tuple(sorted(set(component)))
    if k not in components(d):
        raise IllegalMove(f"{list(k)} is not a component of {render_diagram(d)}")
    return k


def _shift_to(d: MarkedDiagram, comp: tuple[int, ...], target: int) -> Move:
    adj = neighbors(d.type_label, d.rank)
    if target in d.marked:
        raise IllegalMove(f"node {target} is already marked")
    if not any(target in adj[v] for v in comp):
        raise IllegalMove(f"node {target} is not adjacent to {list(comp)}")
    support = set(comp) | {target}
    path = _path_order(d.type_label, d.rank, support)
    if path is None:
        raise IllegalMove(f"nodes {sorted(support)} do not form a simply-laced chain")
    if path[0] != target:
        path.reverse()
    if path[0] != target:
        raise IllegalMove(f"node {target} is not an end of the extended chain")
    touching = sorted(w for w in adj[target] - set(comp) if w in d.marked)
    if touching:
        raise IllegalMove(f"moving onto {target} would touch marked node {touching[0]}")
    new = (d.marked - {path[-1]}) | {target}
    return Move("shift", tuple(sorted(support)), d, d.with_marked(new))


def _targets(d: MarkedDiagram, comp: Sequence[int]) -> list[int]:
    adj = neighbors(d.type_label, d.rank)
    return sorted({w for v in comp for w in adj[v]} - set(comp))


def shift(d: MarkedDiagram, component: Iterable[int], direction: str, positions: int = 1) -> MarkedDiagram:
    """Move a component ``positions`` nodes to the ``left`` or ``right``.

    In type D, ``right`` from the branch node goes to ``alpha_{r-1}``; use
    ``fork`` to move onto ``alpha_r`` instead.
    """
    if direction not in ("left", "right", "fork"):
        raise ValueError(f"unknown direction {direction!r}")
    comp = _as_component(d, component)
    for _ in range(positions):
        lo, hi = min(comp), max(comp)
        cand = _targets(d, comp)
        if direction == "left":
            cand = [w for w in cand if w < lo]
        elif direction == "right":
            cand = [w for w in cand if w > hi][:1]
        else:
            if d.type_label != "D":
                raise IllegalMove("fork moves exist only in type D")
            cand = [w for w in cand if w == d.rank]
        if not cand:
            raise IllegalMove(f"no node {direction} of {list(comp)} (boundary)")
        mv = _shift_to(d, comp, cand[-1] if direction == "left" else cand[0])
        comp = _image(comp, mv)
        d = mv.target
    return d


def _image(comp: Sequence[int], mv: Move) -> tuple[int, ...]:
    for k in components(mv.target):
        if set(k) <= set(mv.support) and len(k) == len(comp):
            return k
    raise AssertionError("moved component not found")


def _permute_move(d: MarkedDiagram, c1: tuple[int, ...], c2: tuple[int, ...]) -> Move:
    adj = neighbors(d.type_label, d.rank)
    if c1 == c2:
        raise IllegalMove("cannot permute a component with itself")
    around1 = {w for v in c1 for w in adj[v]} - set(c1)
    around2 = {w for v in c2 for w in adj[v]} - set(c2)
    gaps = around1 & around2
    if len(gaps) != 1:
        raise IllegalMove("components are not separated by exactly one node")
    gap = gaps.pop()
    span = set(c1) | set(c2) | {gap}
    path = _path_order(d.type_label, d.rank, span)
    if path is None:
        raise IllegalMove(f"span {sorted(span)} is not a simply-laced chain")
    outside = {w for v in span for w in adj[v]} - span
    if outside & d.marked:
        raise IllegalMove(f"span {sorted(span)} touches another component")
    if path[0] not in c1:
        path.reverse()
    b = len(c2)
    new = (d.marked - set(span)) | (set(span) - {path[b]})
    return Move("permute", tuple(sorted(span)), d, d.with_marked(new))


def permute(d: MarkedDiagram, c1: Iterable[int], c2: Iterable[int]) -> MarkedDiagram:
    """Swap the lengths of two components separated by one unmarked node."""
    return _permute_move(d, _as_component(d, c1), _as_component(d, c2)).target


def _flip_move(d: MarkedDiagram, comp: tuple[int, ...]) -> Move:
    r = d.rank
    if d.type_label != "D":
        raise IllegalMove("flips exist only in type D")
    forks = {r - 1, r} & set(comp)
    if len(forks) != 1:
        raise IllegalMove("component must contain exactly one fork node")
    (f,) = forks
    other = (2 * r - 1) - f
    if other in d.marked:
        raise IllegalMove("the other fork node is marked")
    if len(comp) % 2:
        raise IllegalMove("block of even size cannot be flipped")
    support = set(comp) | {other}
    adj = neighbors(d.type_label, d.rank)
    if ({w for v in support for w in adj[v]} - support) & d.marked:
        raise IllegalMove("support touches another component")
    return Move("flip", tuple(sorted(support)), d, d.with_marked((d.marked - {f}) | {other}))


def flip(d: MarkedDiagram, component: Iterable[int]) -> MarkedDiagram:
    return _flip_move(d, _as_component(d, component)).target


def legal_moves(d: MarkedDiagram) -> list[Move]:
    """Every single legal shift, permute and flip of ``d``."""
    out = []
    comps = components(d)
    for k in comps:
        for t in _targets(d, k):
            try:
                out.append(_shift_to(d, k, t))
            except IllegalMove:
                pass
        try:
            out.append(_flip_move(d, k))
        except IllegalMove:
            pass
    for a in range(len(comps)):
        for b in range(a + 1, len(comps)):
            try:
                out.append(_permute_move(d, comps[a], comps[b]))
            except IllegalMove:
                pass
    return out


CLASSICAL = "ABCD"


def special_component(d: MarkedDiagram) -> frozenset[int]:
    """Nodes of the non-type-A part of the Levi that never moves (empty in type A)."""
    r, t = d.rank, d.type_label
    if t in "BC" and r in d.marked:
        return frozenset(next(k for k in components(d) if r in k))
    if t == "D" and {r - 1, r} <= d.marked:
        return frozenset(v for k in components(d) if r in k or r - 1 in k for v in k)
    return frozenset()


def _free_chain(d: MarkedDiagram) -> list[int]:
    """The simply-laced chain in which the movable components are packed."""
    r, t = d.rank, d.type_label
    special = special_component(d)
    if t == "A":
        return list(range(1, r + 1))
    if special:
        return list(range(1, min(special) - 1))
    if t in "BC":
        return list(range(1, r))
    comps = components(d)
    if _fills_all_coordinates(d) and all(len(k) % 2 for k in comps) and (r - 1) in d.marked:
        return list(range(1, r))
    return list(range(1, r - 1)) + [r]


def _fills_all_coordinates(d: MarkedDiagram) -> bool:
    return sum(len(k) + 1 for k in components(d)) == d.rank


def very_even_pair(d: MarkedDiagram) -> bool:
    """True for a type-D Levi whose class splits under the fork automorphism."""
    if d.type_label != "D" or special_component(d):
        return False
    comps = components(d)
    return bool(comps) and _fills_all_coordinates(d) and all(len(k) % 2 for k in comps)


def normalization_witness(d: MarkedDiagram) -> list[Move]:
    """Legal moves carrying ``d`` to its normal form (classical types)."""
    if d.type_label not in CLASSICAL:
        raise DiagramError("normal forms are defined for classical types only")
    moves: list[Move] = []

    def do(mv: Move) -> None:
        nonlocal d
        moves.append(mv)
        d = mv.target

    r = d.rank
    if d.type_label == "D" and not special_component(d) and (r - 1) in d.marked:
        if _fills_all_coordinates(d):
            if not all(len(k) % 2 for k in components(d)):
                # bring an odd block to the fork, then flip it onto alpha_r
                while True:
                    comps = components(d)
                    if len(comps[-1]) % 2 == 0:
                        break
                    j = max(i for i, k in enumerate(comps) if len(k) % 2 == 0)
                    do(_permute_move(d, comps[j], comps[j + 1]))
                do(_flip_move(d, components(d)[-1]))
        else:
            # pack everything left so that alpha_{r-1} is freed
            for i in range(len(components(d))):
                while True:
                    k = components(d)[i]
                    lo = min(k)
                    if lo == 1:
                        break
                    try:
                        do(_shift_to(d, k, lo - 1))
                    except IllegalMove:
                        break
    chain = _free_chain(d)
    pos = {v: i for i, v in enumerate(chain)}
    special = special_component(d)

    def movable() -> list[tuple[int, ...]]:
        ks = [k for k in components(d) if not set(k) & special]
        return sorted(ks, key=lambda k: pos[k[0]])

    for i in reversed(range(len(movable()))):
        while True:
            k = movable()[i]
            last = max(pos[v] for v in k)
            if last + 1 >= len(chain):
                break
            try:
                do(_shift_to(d, k, chain[last + 1]))
            except IllegalMove:
                break
    changed = True
    while changed:
        changed = False
        ks = movable()
        for i in range(len(ks) - 1):
            if len(ks[i]) < len(ks[i + 1]):
                do(_permute_move(d, ks[i], ks[i + 1]))
                changed = True
                break
    return moves


def normalize(d: MarkedDiagram) -> MarkedDiagram:
    """Canonical representative of the Levi class of ``d``.

    The special component (containing alpha_r in B/C, both fork nodes in D)
    stays put; all other components are packed to the right end of their
    chain, one gap apart, longest first.
    """
    moves = normalization_witness(d)
    return moves[-1].target if moves else d


def is_normal(d: MarkedDiagram) -> bool:
    """Structural check of the normal form, independent of the move machinery."""
    if d.type_label not in CLASSICAL:
        raise DiagramError("normal forms are defined for classical types only")
    special = special_component(d)
    chain = _free_chain(d)
    pos = {v: i for i, v in enumerate(chain)}
    ks = [k for k in components(d) if not set(k) & special]
    if any(v not in pos for k in ks for v in k):
        return False
    ks.sort(key=lambda k: pos[k[0]])
    expected_end = len(chain) - 1
    for k in reversed(ks):
        ps = sorted(pos[v] for v in k)
        if ps[-1] != expected_end:
            return False
        expected_end = ps[0] - 2
    lengths = [len(k) for k in ks]
    return lengths == sorted(lengths, reverse=True)


def equivalent(d1: MarkedDiagram, d2: MarkedDiagram) -> bool:
    if (d1.type_label, d1.rank) != (d2.type_label, d2.rank):
        raise DiagramError("diagrams of different types cannot be compared")
    return normalize(d1) == normalize(d2)


def hat_I(d: MarkedDiagram) -> frozenset[int]:
    """Smallest node set spanning an irreducible subdiagram containing the marks and alpha_r."""
    if not d.marked:
        raise DiagramError("hat_I is undefined for an empty marking")
    r = d.rank
    lo = min(d.marked)
    if d.type_label == "D" and lo >= r - 1:
        return frozenset({r}) if d.marked == {r} else frozenset({r - 2, r - 1, r})
    return frozenset(range(lo, r + 1))


def torus_hat(d: MarkedDiagram) -> frozenset[int]:
    """hat_I, except that a lone mark at alpha_r is paired with alpha_{r-1}.

    The torus construction needs a two-node start in that case.
    """
    r = d.rank
    if d.marked == {r} and r >= 2:
        return frozenset({r - 1, r})
    return hat_I(d)
