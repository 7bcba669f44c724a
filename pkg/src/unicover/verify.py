"""Brute-force checks of the combinatorial claims behind the covering bounds.

Every check returns a :class:`VerificationReport`; a failing report carries
the first counterexample so it can be re-run in isolation.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from typing import Any

from .classes import (
    BalaCarterClass,
    enumerate_distinguished_family,
    normal_levis,
    render_class,
)
from .diagram import (
    CLASSICAL,
    MarkedDiagram,
    Move,
    IllegalMove,
    hat_I,
    legal_moves,
    torus_hat,
    normalize,
    render_diagram,
)
from .root_system import (
    Root,
    apply_weyl,
    build_root_system,
    is_root,
    lattice_rank,
    longest_element,
    support_subsystem,
    weyl_matrix,
)

CLAIM_MIN_RANK = 12


class VerificationError(ValueError):
    pass


@dataclass
class VerificationReport:
    claim: str
    params: dict[str, Any]
    passed: bool
    counterexample: Any = None
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def summary(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        line = f"{self.status.upper()} {self.claim}({args})"
        if not self.passed:
            line += f": counterexample {self.counterexample}"
        return line

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "params": self.params,
            "status": self.status,
            "counterexample": self.counterexample,
            "witness": self.witness,
        }


# -- the gamma roots in A_{2d+1} -----------------------------------------------

def gamma_roots(d: int) -> list[Root]:
    """gamma_k = alpha_{d+1} + sum_{i<=k} (alpha_{d+1+i} + alpha_{d+1-i}), k = 0..d."""
    if d < 0:
        raise VerificationError("d must be nonnegative")
    n = 2 * d + 1
    return [tuple(1 if d - k <= j <= d + k else 0 for j in range(n)) for k in range(d + 1)]


def _neg(beta: Root) -> Root:
    return tuple(-x for x in beta)


def check_A2d_roots(d: int) -> VerificationReport:
    """No sum of two elements of R u -R is a root, and each gamma_k is a root."""
    sys = build_root_system("A", 2 * d + 1)
    gam = gamma_roots(d)
    params = {"d": d}
    for k, g in enumerate(gam):
        if not is_root(sys, g):
            return VerificationReport("A2d_roots", params, False, {"not_a_root": list(g), "k": k})
    both = gam + [_neg(g) for g in gam]
    for x in both:
        for y in both:
            s = tuple(a + b for a, b in zip(x, y))
            if is_root(sys, s):
                return VerificationReport("A2d_roots", params, False, {"x": list(x), "y": list(y), "sum": list(s)})
    return VerificationReport("A2d_roots", params, True, witness={"gammas": [list(g) for g in gam], "sums": len(both) ** 2})


def check_w0_negates(d: int) -> VerificationReport:
    """The longest element of A_{2d+1} sends every gamma_k to -gamma_k."""
    sys = build_root_system("A", 2 * d + 1)
    w0 = longest_element(sys)
    params = {"d": d}
    for k, g in enumerate(gamma_roots(d)):
        img = apply_weyl(sys, w0, g)
        if img != _neg(g):
            return VerificationReport("w0_negates", params, False, {"k": k, "gamma": list(g), "image": list(img)})
    return VerificationReport("w0_negates", params, True, witness={"w0_length": len(w0)})


def check_commutator_disjoint(d: int, max_coeff: int = 3) -> VerificationReport:
    """No a*gamma_i - b*gamma_j (i != j, 1 <= a, b <= max_coeff) is a root."""
    sys = build_root_system("A", 2 * d + 1)
    gam = gamma_roots(d)
    params = {"d": d}
    for i, gi in enumerate(gam):
        for j, gj in enumerate(gam):
            if i == j:
                continue
            for a in range(1, max_coeff + 1):
                for b in range(1, max_coeff + 1):
                    v = tuple(a * x - b * y for x, y in zip(gi, gj))
                    if is_root(sys, v):
                        return VerificationReport(
                            "commutator_disjoint", params, False, {"i": i, "j": j, "a": a, "b": b, "root": list(v)}
                        )
    return VerificationReport("commutator_disjoint", params, True, witness={"max_coeff": max_coeff})


@functools.lru_cache(maxsize=None)
def gamma_coroot_rank(t: int) -> int:
    """Rank of the lattice spanned by the gamma_k coroots inside A_{2t-1}."""
    return lattice_rank(gamma_roots(t - 1))


def check_t_inequality(type_label: str, rank: int) -> VerificationReport:
    """For every distinguished family diagram, the largest marked t <= r/2 has 2t - 1 >= r/2."""
    if type_label not in "BCD":
        raise VerificationError(f"the claim concerns types B, C, D, not {type_label}")
    if rank < CLAIM_MIN_RANK:
        raise VerificationError(f"the claim assumes rank > 11, got {rank}")
    params = {"type": type_label, "rank": rank}
    rows = []
    for dd in enumerate_distinguished_family(type_label, rank):
        marks = sorted(dd.diagram.marked)
        low = [i for i in marks if 2 * i <= rank]
        if not low:
            return VerificationReport("t_inequality", params, False, {"diagram": str(dd.diagram), "reason": "no marked node <= r/2"})
        t = low[-1]
        t_next = next((i for i in marks if i > t), None)
        if 2 * (2 * t - 1) < rank:
            return VerificationReport("t_inequality", params, False, {"diagram": str(dd.diagram), "t": t})
        if gamma_coroot_rank(t) != t:
            return VerificationReport(
                "t_inequality", params, False, {"diagram": str(dd.diagram), "t": t, "gamma_rank": gamma_coroot_rank(t)}
            )
        rows.append({"diagram": str(dd.diagram), "t": t, "t_next": t_next})
    return VerificationReport("t_inequality", params, True, witness={"diagrams": rows})


# -- Levi conjugacy of single moves ---------------------------------------------

@functools.lru_cache(maxsize=None)
def _support_matrix(type_label: str, rank: int, support: tuple[int, ...]):
    sys = build_root_system(type_label, rank)
    word = longest_element(sys, support)
    return word, weyl_matrix(sys, word)


def _apply_matrix(m, beta: Root) -> Root:
    return tuple(sum(row[k] * beta[k] for k in range(len(beta)) if beta[k]) for row in m)


def check_levi_conjugacy(d1: MarkedDiagram, d2: MarkedDiagram, move: Move | None = None) -> VerificationReport:
    """The longest element of the move's support carries the moved subsystem of d1 onto that of d2."""
    params = {"source": render_diagram(d1), "target": render_diagram(d2)}
    if move is None:
        if d1 == d2:
            return VerificationReport("levi_conjugacy", params, True, witness={"word": []})
        moves = [m for m in legal_moves(d1) if m.target == d2]
        if not moves:
            raise IllegalMove(f"{d1} -> {d2} is not a single legal move")
        move = moves[0]
    if move.source != d1 or move.target != d2:
        raise IllegalMove(f"move {move} does not connect {d1} and {d2}")
    params["move"] = move.kind
    sys = build_root_system(d1.type_label, d1.rank)
    word, m = _support_matrix(d1.type_label, d1.rank, move.support)
    supp = set(move.support)
    inside1 = support_subsystem(sys, d1.marked & supp)
    inside2 = support_subsystem(sys, d2.marked & supp)
    image = frozenset(_apply_matrix(m, b) for b in inside1)
    if image != inside2:
        return VerificationReport(
            "levi_conjugacy", params, False, {"word": list(word), "missing": sorted(inside2 - image)[:3]}
        )
    n = d1.rank
    for j in sorted(d1.marked - supp):
        e = tuple(1 if k == j - 1 else 0 for k in range(n))
        if _apply_matrix(m, e) != e:
            return VerificationReport("levi_conjugacy", params, False, {"word": list(word), "moved_fixed_node": j})
    return VerificationReport("levi_conjugacy", params, True, witness={"word": list(word), "support": list(move.support)})


# -- tori -------------------------------------------------------------------------

def torus_blocks(rest: list[int], size: int) -> list[list[int]]:
    """Split ``rest`` into consecutive blocks of ``size``, the leftmost possibly shorter."""
    if not rest:
        return []
    s = -(-len(rest) // size)
    first = len(rest) - (s - 1) * size
    return [rest[:first]] + [rest[first + i * size: first + (i + 1) * size] for i in range(s - 1)]


@functools.lru_cache(maxsize=None)
def _coweight_matrix(type_label: str, rank: int, support: tuple[int, ...]):
    sys = build_root_system(type_label, rank)
    word = longest_element(sys, support)
    return len(word), weyl_matrix(sys, word, coweight=True)


@functools.lru_cache(maxsize=1 << 14)
def _torus_data(type_label: str, rank: int, levi: frozenset[int]) -> dict:
    d = normalize(MarkedDiagram(type_label, rank, levi))
    hat = sorted(torus_hat(d))
    rest = sorted(set(range(1, rank + 1)) - set(hat))
    blocks = torus_blocks(rest, len(levi))
    base = list(hat)
    gens = {tuple(1 if j == k - 1 else 0 for j in range(rank)) for k in base}
    gens_no_special = {tuple(1 if j == k - 1 else 0 for j in range(rank)) for k in base if k != rank}
    words = []
    images, images_no_special = set(gens), set(gens_no_special)
    for i, blk in enumerate(blocks):
        start = rest.index(blk[0])
        support = tuple(sorted(set(rest[start:]) | (set(hat) - {rank})))
        length, m = _coweight_matrix(type_label, rank, support)
        words.append({"support": list(support), "length": length})
        for k in base:
            col = tuple(m[j][k - 1] for j in range(rank))
            images.add(col)
            if k != rank:
                images_no_special.add(col)
    return {
        "normalized": render_diagram(d),
        "hat": hat,
        "s": len(blocks),
        "blocks": blocks,
        "words": words,
        "rank": lattice_rank(sorted(images)),
        "rank_without_special": lattice_rank(sorted(images_no_special)),
    }


def check_torus_rank(c: BalaCarterClass) -> VerificationReport:
    """T' and its images under w_1..w_s span a lattice of full rank r."""
    if c.type_label not in CLASSICAL:
        raise VerificationError("the torus construction is for classical types")
    if c.rank < CLAIM_MIN_RANK:
        raise VerificationError(f"the torus construction assumes rank > 11, got {c.rank}")
    if c.is_identity:
        raise VerificationError("the identity class has no torus construction")
    data = _torus_data(c.type_label, c.rank, c.levi)
    params = {"class": render_class(c)}
    ok = data["rank"] == c.rank
    return VerificationReport("torus_rank", params, ok, None if ok else {"rank": data["rank"]}, dict(data))


# -- hat I ------------------------------------------------------------------------

def _hat_ok(d: MarkedDiagram) -> bool:
    return len(hat_I(d)) <= 2 * len(d.marked)


def check_hat_bound(
    type_label: str, rank: int, markings: str = "normal", samples: int = 2000, seed: int = 0
) -> VerificationReport:
    """|I^| <= 2|I| after normalization.

    ``markings`` selects the diagrams: ``normal`` (one per Levi class),
    ``all`` (every nonempty marking, normalized) or ``sample`` (``samples``
    random markings drawn with ``seed``).
    """
    if type_label not in CLASSICAL:
        raise VerificationError("the bound is stated for classical types")
    params = {"type": type_label, "rank": rank, "markings": markings}
    if markings == "normal":
        diagrams = (d for d in normal_levis(type_label, rank) if d.marked)
    elif markings == "all":
        diagrams = (
            normalize(MarkedDiagram(type_label, rank, frozenset(i + 1 for i in range(rank) if mask >> i & 1)))
            for mask in range(1, 1 << rank)
        )
    elif markings == "sample":
        rng = random.Random(seed)
        params["seed"] = seed

        def draw():
            for _ in range(samples):
                marked = frozenset(i for i in range(1, rank + 1) if rng.random() < 0.5) or frozenset({rank})
                yield normalize(MarkedDiagram(type_label, rank, marked))

        diagrams = draw()
    else:
        raise VerificationError(f"unknown markings mode {markings!r}")
    count = 0
    worst = 0.0
    for d in diagrams:
        count += 1
        if not _hat_ok(d):
            return VerificationReport("hat_bound", params, False, {"diagram": render_diagram(d), "hat": sorted(hat_I(d))})
        worst = max(worst, len(hat_I(d)) / len(d.marked))
    return VerificationReport("hat_bound", params, True, witness={"diagrams": count, "max_ratio": worst})
