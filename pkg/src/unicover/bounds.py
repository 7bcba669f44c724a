"""Covering-number bounds per unipotent class and the dimension inequality chain."""

from __future__ import annotations

import csv
import functools
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .classes import (
    BalaCarterClass,
    ClassError,
    class_corank,
    class_dimension,
    class_rank,
    enumerate_classes,
    render_class,
)
from .diagram import CLASSICAL, MarkedDiagram, hat_I, normalize, torus_hat
from .root_system import RootSystem, build_root_system

DISTINGUISHED_CONSTANT = 72
RANK_CONSTANT = 288
DIMENSION_CONSTANT = 4608
PROOF_STEP_CONSTANT = 144
BOUNDED_RANK_LIMIT = 11
CHAIN_MIN_RANK = 9


class BoundError(ValueError):
    pass


def _require_nontrivial(c: BalaCarterClass) -> None:
    if c.is_identity:
        raise BoundError(
            f"{render_class(c)} is the identity class: a central singleton never covers G, "
            "so no finite covering number is defined"
        )


def bound_distinguished(c: BalaCarterClass) -> int | None:
    """72 for classes with unipotent centralizer (corank 0), otherwise None."""
    _require_nontrivial(c)
    return DISTINGUISHED_CONSTANT if class_corank(c) == 0 else None


def bound_rank(c: BalaCarterClass) -> Fraction:
    """288 * rk(G) / rk(C)."""
    _require_nontrivial(c)
    return Fraction(RANK_CONSTANT * c.rank, class_rank(c))


def bound_dimension(c: BalaCarterClass) -> Fraction:
    """4608 * dim(G) / dim(C)."""
    _require_nontrivial(c)
    return Fraction(DIMENSION_CONSTANT * c.system.dimension, class_dimension(c))


def bound_gordeev_saxl(system: RootSystem) -> int:
    """The bounded-rank fallback 4 * rk(G), valid for every class."""
    return 4 * system.rank


@functools.lru_cache(maxsize=1 << 16)
def _hat_size(type_label: str, rank: int, levi: frozenset[int]) -> int:
    return len(hat_I(normalize(MarkedDiagram(type_label, rank, levi))))


def hat_size(c: BalaCarterClass) -> int:
    """|I^| for the normalized Levi diagram of the class."""
    return _hat_size(c.type_label, c.rank, c.levi)


@functools.lru_cache(maxsize=1 << 16)
def _torus_hat_size(type_label: str, rank: int, levi: frozenset[int]) -> int:
    return len(torus_hat(normalize(MarkedDiagram(type_label, rank, levi))))


def proof_s(c: BalaCarterClass) -> int:
    """Number of blocks of size at most |I| needed to cover the nodes outside I^.

    A lone mark at alpha_r starts from the pair {alpha_{r-1}, alpha_r}.
    """
    rest = c.rank - _torus_hat_size(c.type_label, c.rank, c.levi)
    return 0 if rest == 0 else -(-rest // class_rank(c))


def proof_bound_classical(c: BalaCarterClass) -> int | None:
    """144 (s + 1) for classical groups of rank above 11, otherwise None."""
    _require_nontrivial(c)
    if c.type_label not in CLASSICAL or c.rank <= BOUNDED_RANK_LIMIT:
        return None
    return PROOF_STEP_CONSTANT * (proof_s(c) + 1)


@dataclass(frozen=True)
class BoundReport:
    class_label: str
    type_label: str
    rank: int
    levi: tuple[int, ...]
    parabolic: tuple[int, ...]
    rank_c: int
    corank: int
    dim: int
    thm_distinguished: int | None
    thm_rank: Fraction
    thm_dim: Fraction
    gordeev_saxl: int
    proof_classical: int | None
    best: int

    def to_json(self) -> dict:
        def num(x):
            if x is None or isinstance(x, int):
                return x
            return str(x) if x.denominator != 1 else x.numerator

        return {
            "class": self.class_label,
            "type": self.type_label,
            "rank": self.rank,
            "levi": list(self.levi),
            "parabolic": list(self.parabolic),
            "rank_c": self.rank_c,
            "corank": self.corank,
            "dim": self.dim,
            "thm_distinguished": self.thm_distinguished,
            "thm_rank": num(self.thm_rank),
            "thm_dim": num(self.thm_dim),
            "gordeev_saxl": self.gordeev_saxl,
            "proof_classical": self.proof_classical,
            "best": self.best,
        }


def best_bound(c: BalaCarterClass) -> BoundReport:
    _require_nontrivial(c)
    t1 = bound_distinguished(c)
    t2 = bound_rank(c)
    t3 = bound_dimension(c)
    gs = bound_gordeev_saxl(c.system)
    pc = proof_bound_classical(c)
    values = [v for v in (t1, t2, t3, gs, pc) if v is not None]
    return BoundReport(
        class_label=render_class(c),
        type_label=c.type_label,
        rank=c.rank,
        levi=tuple(sorted(c.levi)),
        parabolic=tuple(sorted(c.parabolic)),
        rank_c=class_rank(c),
        corank=class_corank(c),
        dim=class_dimension(c),
        thm_distinguished=t1,
        thm_rank=t2,
        thm_dim=t3,
        gordeev_saxl=gs,
        proof_classical=pc,
        best=min(math.ceil(v) for v in values),
    )


CSV_COLUMNS = ["type", "rank", "levi", "parabolic", "rk", "crk", "dim", "thm1", "thm2", "thm3", "gs", "proof", "best"]


def reports_to_csv(reports: Iterable[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for b in reports:
        w.writerow([
            b.type_label,
            b.rank,
            " ".join(map(str, b.levi)),
            " ".join(map(str, b.parabolic)),
            b.rank_c,
            b.corank,
            b.dim,
            "" if b.thm_distinguished is None else b.thm_distinguished,
            b.thm_rank,
            b.thm_dim,
            b.gordeev_saxl,
            "" if b.proof_classical is None else b.proof_classical,
            b.best,
        ])
    return buf.getvalue()


# -- dimension inequality chain ---------------------------------------------

@dataclass(frozen=True)
class ChainResult:
    class_label: str
    hat_b: int
    hat_w: int
    dim: int
    violated: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violated


@dataclass(frozen=True)
class ChainReport:
    type_label: str
    rank: int
    results: tuple[ChainResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list[ChainResult]:
        return [r for r in self.results if not r.ok]


def chain_inequalities(type_label: str, r: int, b: int, rk_c: int, dim_c: int, dim_g: int) -> list[tuple[str, bool]]:
    """Every inequality of the chain for one class, as (name, holds) pairs."""
    w = r - b
    if type_label == "A":
        middle = r * r + 2 * r - w * w + 1
        checks = [("6rb >= r^2+2r-w^2+1", 6 * r * b >= middle)]
    elif type_label == "B":
        middle = 2 * r * r + r - 2 * w * w + w
        checks = [
            ("8rb >= 2(r-w+1/2)(r+w)", 8 * r * b >= 2 * (r - w + Fraction(1, 2)) * (r + w)),
            ("2(r-w+1/2)(r+w) = 2r^2+r-2w^2+w", 2 * (r - w + Fraction(1, 2)) * (r + w) == middle),
        ]
    elif type_label == "C":
        middle = 2 * r * r + r - 2 * w * w - w
        checks = [
            ("8rb >= 2(r-w)(r+w+1/2)", 8 * r * b >= 2 * (r - w) * (r + w + Fraction(1, 2))),
            ("2(r-w)(r+w+1/2) = 2r^2+r-2w^2-w", 2 * (r - w) * (r + w + Fraction(1, 2)) == middle),
        ]
    elif type_label == "D":
        middle = 2 * r * r - r - 2 * w * w + w
        checks = [
            ("4rb >= 2(r-w)(r+w)", 4 * r * b >= 2 * (r - w) * (r + w)),
            ("2(r-w)(r+w) >= 2r^2-r-2w^2+w", 2 * (r - w) * (r + w) >= middle),
        ]
    else:
        raise BoundError(f"no dimension chain for type {type_label}")
    checks.append(("bound >= dim C", middle >= dim_c))
    lhs = Fraction(r, 16 * rk_c)
    mid = Fraction(r * r, 8 * b * r)
    checks += [
        ("b <= 2 rk(C)", b <= 2 * rk_c),
        ("rk(G)/(16 rk(C)) <= r^2/(8 b r)", lhs <= mid),
        ("r^2/(8 b r) <= dim G/dim C", mid <= Fraction(dim_g, dim_c)),
    ]
    return checks


def verify_section5_chain(type_label: str, rank: int, classes: Iterable[BalaCarterClass] | None = None) -> ChainReport:
    """Check the dimension inequality chain for every nontrivial class."""
    if type_label not in CLASSICAL:
        raise BoundError(f"the chain applies to classical types, not {type_label}")
    if rank < CHAIN_MIN_RANK:
        raise BoundError(f"the chain is stated for rank > 8, got {rank}")
    dim_g = build_root_system(type_label, rank).dimension
    if classes is None:
        classes = enumerate_classes(type_label, rank)
    out = []
    for c in classes:
        if c.is_identity:
            continue
        b = hat_size(c)
        d = class_dimension(c)
        checks = chain_inequalities(type_label, rank, b, class_rank(c), d, dim_g)
        out.append(ChainResult(render_class(c), b, rank - b, d, tuple(n for n, ok in checks if not ok)))
    return ChainReport(type_label, rank, tuple(out))
