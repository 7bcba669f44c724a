"""Command-line front end.

    unicover classes C 6 --json
    unicover distinguished D 8
    unicover bounds "A4:.2.2"
    unicover diagram "C6:xooxoo" --ascii
    unicover verify a2d-roots --max-d 20
    unicover export B 12 --csv

Exit codes: 0 success, 1 bad input, 2 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Callable, Iterator

from . import bounds, classes, diagram, verify
from .root_system import RootSystemError, _check_type

EXIT_OK, EXIT_INPUT, EXIT_FAIL = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def parse_type(words: list[str]) -> tuple[str, int]:
    """Accept ``C 6`` or ``C6`` as a type and rank."""
    text = "".join(words)
    m = re.fullmatch(r"([A-Ga-g])(\d+)", text)
    if not m:
        raise UsageError(f"expected a type and rank such as 'C 6', got {' '.join(words)!r}")
    t, r = m.group(1).upper(), int(m.group(2))
    _check_type(t, r)
    return t, r


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, default=str))


def _class_line(c: classes.BalaCarterClass) -> str:
    if c.is_identity:
        return f"{classes.render_class(c):<24} rank 0  corank {c.rank}  dim 0  identity"
    rec = classes.class_record(c)
    labels = "".join(map(str, rec["weighted_labels"]))
    flags = (" " + ",".join(rec["flags"])) if rec["flags"] else ""
    return f"{rec['class']:<24} rank {rec['rank_c']}  corank {rec['corank']}  dim {rec['dim']}  labels {labels}{flags}"


def _record(c: classes.BalaCarterClass) -> dict:
    if c.is_identity:
        return {
            "type": c.type_label,
            "rank": c.rank,
            "class": classes.render_class(c),
            "levi": [],
            "parabolic": [],
            "rank_c": 0,
            "corank": c.rank,
            "dim": 0,
            "weighted_labels": [0] * c.rank,
            "flags": classes.class_flags(c),
        }
    return classes.class_record(c)


def cmd_classes(args) -> int:
    t, r = parse_type(args.target)
    cs = classes.enumerate_classes(t, r, max_rank=args.max_rank)
    if args.json:
        _emit_json([_record(c) for c in cs])
    else:
        for c in cs:
            print(_class_line(c))
        print(f"# {len(cs)} classes")
    return EXIT_OK


def cmd_distinguished(args) -> int:
    t, r = parse_type(args.target)
    if args.method == "predicate" or t not in diagram.CLASSICAL:
        dds = classes.enumerate_distinguished_predicate(t, r, cap=args.max_rank)
    else:
        dds = classes.enumerate_distinguished_family(t, r)
    if args.json:
        _emit_json([
            {"diagram": str(dd.diagram), "parabolic": sorted(dd.parabolic), "family": dd.family, "m": dd.m, "blocks": list(dd.blocks)}
            for dd in dds
        ])
    else:
        for dd in dds:
            params = "" if dd.family is None else f"  {dd.family} m={dd.m} n={list(dd.blocks)}"
            print(f"{dd.diagram}{params}")
        print(f"# {len(dds)} distinguished diagrams")
    return EXIT_OK


def _bound_targets(words: list[str], max_rank: int) -> list[classes.BalaCarterClass]:
    if len(words) == 1 and ":" in words[0]:
        return [classes.validate_class(classes.parse_class(words[0]))]
    t, r = parse_type(words)
    return [c for c in classes.enumerate_classes(t, r, max_rank=max_rank) if not c.is_identity]


def cmd_bounds(args) -> int:
    reports = [bounds.best_bound(c) for c in _bound_targets(args.target, args.max_rank)]
    if args.csv:
        sys.stdout.write(bounds.reports_to_csv(reports))
    elif args.json:
        _emit_json([b.to_json() for b in reports] if len(reports) != 1 else reports[0].to_json())
    else:
        for b in reports:
            d = b.to_json()
            print(
                f"{b.class_label:<24} rk {b.rank_c} crk {b.corank} dim {b.dim}  thm1 {d['thm_distinguished']}"
                f"  thm2 {d['thm_rank']}  thm3 {d['thm_dim']}  gs {b.gordeev_saxl}  proof {b.proof_classical}  best {b.best}"
            )
    return EXIT_OK


def cmd_diagram(args) -> int:
    d = diagram.parse_diagram(args.target)
    nf = diagram.normalize(d)
    info = {
        "diagram": diagram.render_diagram(d),
        "components": [list(k) for k in diagram.components(d)],
        "normal_form": diagram.render_diagram(nf),
        "hat_I": sorted(diagram.hat_I(nf)) if nf.marked else [],
        "moves": [str(mv) for mv in diagram.legal_moves(d)],
    }
    if args.json:
        _emit_json(info)
        return EXIT_OK
    if args.ascii:
        print(diagram.render_diagram(d, style="ascii"))
    print(f"diagram      {info['diagram']}")
    print(f"components   {info['components']}")
    print(f"normal form  {info['normal_form']}")
    print(f"hat I        {info['hat_I']}")
    for mv in info["moves"]:
        print(f"move         {mv}")
    return EXIT_OK


# -- verify --------------------------------------------------------------------

def _gamma_checks(fn) -> Callable:
    def run(args) -> Iterator[verify.VerificationReport]:
        for d in range(args.max_d + 1):
            yield fn(d)

    return run


def _t_inequality(args):
    for t in "BCD":
        for r in range(verify.CLAIM_MIN_RANK, args.max_rank + 1):
            yield verify.check_t_inequality(t, r)


def _hat_bound(args):
    for t in diagram.CLASSICAL:
        lo = {"A": 1, "B": 2, "C": 2, "D": 3}[t]
        for r in range(lo, args.max_rank + 1):
            if r <= 16:
                yield verify.check_hat_bound(t, r)
            else:
                yield verify.check_hat_bound(t, r, markings="sample", samples=200, seed=args.seed)


def _torus_rank(args):
    for t in diagram.CLASSICAL:
        for r in range(verify.CLAIM_MIN_RANK, args.max_rank + 1):
            reps = [verify.check_torus_rank(c) for c in classes.enumerate_classes(t, r) if not c.is_identity]
            bad = [rep for rep in reps if not rep.passed]
            yield verify.VerificationReport(
                "torus_rank",
                {"type": t, "rank": r},
                not bad,
                bad[0].to_json() if bad else None,
                {"classes": len(reps)},
            )


def _levi_conjugacy(args):
    for r in range(1, args.max_rank + 1):
        count = 0
        for mask in range(1 << r):
            d = diagram.MarkedDiagram("A", r, frozenset(i + 1 for i in range(r) if mask >> i & 1))
            for mv in diagram.legal_moves(d):
                rep = verify.check_levi_conjugacy(d, mv.target, mv)
                count += 1
                if not rep.passed:
                    yield rep
                    return
        yield verify.VerificationReport("levi_conjugacy", {"type": "A", "rank": r}, True, witness={"moves": count})


def _dimension_chain(args):
    for t in diagram.CLASSICAL:
        for r in range(bounds.CHAIN_MIN_RANK, args.max_rank + 1):
            rep = bounds.verify_section5_chain(t, r)
            bad = rep.failures
            yield verify.VerificationReport(
                "dimension_chain",
                {"type": t, "rank": r},
                not bad,
                None if not bad else {"class": bad[0].class_label, "violated": list(bad[0].violated)},
                {"classes": len(rep.results)},
            )


def _family_predicate(args):
    for t in "BCD":
        for r in range(2 if t != "D" else 4, min(args.max_rank, classes.PREDICATE_RANK_CAP) + 1):
            fam = {dd.diagram.marked for dd in classes.enumerate_distinguished_family(t, r)}
            pred = {dd.diagram.marked for dd in classes.enumerate_distinguished_predicate(t, r)}
            diff = sorted(sorted(x) for x in fam ^ pred)
            yield verify.VerificationReport(
                "family_vs_predicate", {"type": t, "rank": r}, not diff, diff[:3] or None, {"diagrams": len(fam)}
            )


VERIFY_CHECKS: dict[str, tuple[Callable, dict]] = {
    "a2d-roots": (_gamma_checks(verify.check_A2d_roots), {}),
    "w0-negates": (_gamma_checks(verify.check_w0_negates), {}),
    "commutator": (_gamma_checks(verify.check_commutator_disjoint), {}),
    "t-inequality": (_t_inequality, {"max_rank": 40}),
    "hat-bound": (_hat_bound, {"max_rank": 16}),
    "torus-rank": (_torus_rank, {"max_rank": 14}),
    "levi-conjugacy": (_levi_conjugacy, {"max_rank": 8}),
    "dimension-chain": (_dimension_chain, {"max_rank": 12}),
    "family-predicate": (_family_predicate, {"max_rank": 12}),
}


def cmd_verify(args) -> int:
    names = list(VERIFY_CHECKS) if args.claim == "all" else [args.claim]
    failed = False
    out = []
    base_rank = args.max_rank
    for name in names:
        fn, defaults = VERIFY_CHECKS[name]
        args.max_rank = base_rank if base_rank is not None else defaults.get("max_rank", 0)
        for rep in fn(args):
            failed |= not rep.passed
            if args.json:
                out.append(rep.to_json())
            else:
                print(rep.summary(), flush=True)
    args.max_rank = base_rank
    if args.json:
        _emit_json(out)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_export(args) -> int:
    t, r = parse_type(args.target)
    cs = [c for c in classes.enumerate_classes(t, r, max_rank=args.max_rank) if not c.is_identity]
    reports = [bounds.best_bound(c) for c in cs]
    if args.json:
        _emit_json([{**_record(c), "bounds": b.to_json()} for c, b in zip(cs, reports)])
    else:
        sys.stdout.write(bounds.reports_to_csv(reports))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="unicover", description="Unipotent class combinatorics and covering-number bounds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text, target=True, nargs="+"):
        sp = sub.add_parser(name, help=help_text)
        if target:
            sp.add_argument("target", nargs=nargs)
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.add_argument("--csv", action="store_true", help="emit CSV")
        sp.add_argument("--max-rank", type=int, default=None, metavar="N")
        sp.add_argument("--max-d", type=int, default=20, metavar="N")
        sp.add_argument("--seed", type=int, default=0, metavar="N")
        sp.set_defaults(func=fn)
        return sp

    add("classes", cmd_classes, "list unipotent classes of a type, e.g. 'C 6'")
    sp = add("distinguished", cmd_distinguished, "list distinguished diagrams")
    sp.add_argument("--method", choices=["family", "predicate"], default="family")
    add("bounds", cmd_bounds, "bound report for a class ('A4:.2.2') or every class of a type")
    sp = add("diagram", cmd_diagram, "inspect a marked diagram such as 'C6:xooxoo'", nargs=None)
    sp.add_argument("--ascii", action="store_true", help="draw the Dynkin diagram")
    sp = sub.add_parser("verify", help="run a brute-force check")
    sp.add_argument("claim", choices=["all", *VERIFY_CHECKS])
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--max-rank", type=int, default=None, metavar="N")
    sp.add_argument("--max-d", type=int, default=20, metavar="N")
    sp.add_argument("--seed", type=int, default=0, metavar="N")
    sp.set_defaults(func=cmd_verify)
    add("export", cmd_export, "full class and bound table (CSV by default)")
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "max_rank", None) is None and args.func is not cmd_verify:
            args.max_rank = 40 if args.func is not cmd_distinguished else classes.PREDICATE_RANK_CAP
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except (RootSystemError, diagram.DiagramError, classes.ClassError, bounds.BoundError, verify.VerificationError, ValueError) as exc:
        print(f"unicover: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # output piped into head and the like
        sys.stdout = None
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
