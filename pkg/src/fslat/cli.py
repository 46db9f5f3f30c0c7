"""Command-line front end: build, validate, visualize, and verify.

Every subcommand is deterministic given identical inputs and flags; payloads
carry no timestamps, so identical invocations emit identical bytes.  Exit
codes: 0 success/verified, 1 property failure (with a certificate in the
payload), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import algebras, constructions, groups, irrationals, quasivar
from .algebras import FSemilattice


def _parse_orders(text: str) -> groups.GroupSpec:
    return groups.make_group([int(p) for p in text.split(",")])


def _parse_subgroup(group: groups.GroupSpec, text: str) -> groups.Subgroup:
    elems = [groups.parse_element(part) for part in text.split(";") if part.strip()]
    return groups.subgroup_from_elements(group, elems)


def _load_algebra(path: str) -> FSemilattice:
    with open(path, "r", encoding="utf-8") as fh:
        return algebras.algebra_from_dict(json.load(fh))


def _emit(payload: dict, args) -> None:
    if getattr(args, "meta", False):
        payload = {"payload": payload, "meta": {"argv": sys.argv[1:], "time": time.time()}}
    text = json.dumps(payload, indent=2)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _generator_index(algebra: FSemilattice, label: str | None) -> int:
    if label is not None:
        return algebra.index(label)
    for x in range(algebra.size):
        if algebras.generates(algebra, x):
            return x
    raise ValueError("no single element generates this algebra; pass --generator")


def hasse_dot(algebra: FSemilattice, include_actions: bool = False) -> str:
    """DOT digraph of the covering relation, optionally with dashed action arcs."""
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for label in algebra.carrier:
        lines.append(f'  "{label}";')
    for low, high in sorted(algebras.cover_edges(algebra)):
        lines.append(f'  "{algebra.carrier[low]}" -> "{algebra.carrier[high]}";')
    if include_actions:
        for i, perm in enumerate(algebra.action):
            for x in range(algebra.size):
                lines.append(
                    f'  "{algebra.carrier[x]}" -> "{algebra.carrier[perm[x]]}"'
                    f' [style=dashed, label="g{i}", constraint=false];'
                )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_group_subgroups(args) -> int:
    group = _parse_orders(args.orders)
    subs = groups.subgroups(group)
    order = group.order()
    payload = {
        "group": groups.group_to_dict(group),
        "order": "infinite" if order is None else order,
        "count": len(subs),
        "subgroups": [groups.subgroup_to_dict(s) for s in subs],
    }
    _emit(payload, args)
    return 0


def _build_algebra(args) -> FSemilattice:
    if args.kind == "ak":
        return constructions.a_k(args.k)
    group = _parse_orders(args.orders)
    if args.kind == "two-element":
        return constructions.two_element(group)
    sub = _parse_subgroup(group, args.subgroup)
    if args.kind == "maroti":
        return constructions.maroti(group, sub)
    reps = None
    if args.transversal:
        reps = groups.make_transversal(
            group, sub, [groups.parse_element(p) for p in args.transversal.split(";")]
        )
    factor = None
    gens = None
    if args.u == "chain2":
        factor, gens = constructions.chain2_factor(group, sub)
    return constructions.twisted(group, sub, factor, reps, gens)


def _cmd_build(args) -> int:
    algebra = _build_algebra(args)
    _emit(algebras.algebra_to_dict(algebra), args)
    return 0


def _cmd_validate(args) -> int:
    algebra = _load_algebra(args.algebra)
    report = algebras.validate_axioms(algebra)
    _emit(report.to_dict(), args)
    return 0 if report.ok else 1


def _cmd_hasse(args) -> int:
    algebra = _load_algebra(args.algebra)
    text = hasse_dot(algebra, include_actions=args.actions)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def _cmd_check_minimal(args) -> int:
    algebra = _load_algebra(args.algebra)
    a = _generator_index(algebra, args.generator)
    verdict = quasivar.is_minimal_free(algebra, a)
    payload = {
        "generator": algebra.carrier[a],
        "minimal": verdict.minimal,
        "checked": verdict.checked,
        "counterexample": None
        if verdict.counterexample is None
        else algebra.carrier[verdict.counterexample],
    }
    _emit(payload, args)
    return 0 if verdict.minimal else 1


def _cmd_verify_bijection(args) -> int:
    group = _parse_orders(args.orders)
    report = quasivar.verify_bijection(group)
    _emit(report.to_dict(), args)
    return 0 if report.ok else 1


def _cmd_quasi(args) -> int:
    algebra = _load_algebra(args.algebra)
    qi = quasivar.parse_quasi_identity(args.qi, algebra.group)
    holds, witness = quasivar.holds_quasi_identity(algebra, qi)
    payload = {
        "quasi_identity": quasivar.format_quasi_identity(qi),
        "holds": holds,
        "witness": None
        if witness is None
        else {name: algebra.carrier[idx] for name, idx in sorted(witness.items())},
    }
    _emit(payload, args)
    return 0 if holds else 1


def _cmd_decompose(args) -> int:
    algebra = _load_algebra(args.algebra)
    a = _generator_index(algebra, args.generator)
    result = quasivar.decompose_ku(algebra, a)
    payload = {
        "generator": algebra.carrier[a],
        "subgroup": groups.subgroup_to_dict(result.subgroup),
        "factor_size": result.factor.size,
        "factor": algebras.algebra_to_dict(result.factor),
        "isomorphism": {
            "from": [result.reconstruction.carrier[i] for i in range(result.reconstruction.size)],
            "to": [algebra.carrier[v] for v in result.iso.map],
        },
    }
    _emit(payload, args)
    return 0


def _cmd_simplicity(args) -> int:
    algebra = _load_algebra(args.algebra)
    a = _generator_index(algebra, args.generator)
    report = quasivar.simplicity_and_quotient_report(algebra, a, limit=args.limit)
    payload = {
        "generator": algebra.carrier[a],
        "congruences": report.congruence_count,
        "simple": report.simple,
        "separating_quasi_identity": quasivar.format_quasi_identity(report.qi),
        "excluded_quotients": [
            {
                "blocks": [[algebra.carrier[x] for x in b] for b in e.blocks],
                "excluded": e.excluded,
            }
            for e in report.exclusions
        ],
    }
    _emit(payload, args)
    return 0


def _cmd_balpha(args) -> int:
    alpha = irrationals.parse_irrational(args.alpha)
    beta = irrationals.parse_irrational(args.beta)
    if irrationals.compare_values(alpha, beta) >= 0:
        raise ValueError("need alpha < beta")
    if args.p is not None and args.q is not None:
        p, q = args.p, args.q
    else:
        p, q = irrationals.rational_between(alpha, beta)
    report = irrationals.check_separating_identity(alpha, beta, p, q, args.samples)
    payload = {
        "alpha": str(alpha),
        "beta": str(beta),
        "between": [p, q],
        "report": report.to_dict(),
    }
    _emit(payload, args)
    return 0 if report.separates else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fslat",
        description="Semilattices over abelian groups: constructions, minimality, "
        "bijection and decomposition checks, exact continuum demo.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the JSON payload to this path")
        p.add_argument("--meta", action="store_true", help="wrap payload with run metadata")

    p_group = sub.add_parser("group", help="group-level queries")
    group_sub = p_group.add_subparsers(dest="group_command", required=True)
    p_subgroups = group_sub.add_parser("subgroups", help="enumerate all subgroups")
    p_subgroups.add_argument("--orders", required=True, help="comma-joined factor orders")
    common(p_subgroups)
    p_subgroups.set_defaults(func=_cmd_group_subgroups)

    p_build = sub.add_parser("build", help="emit a constructed algebra as JSON")
    p_build.add_argument("kind", choices=["maroti", "twisted", "ak", "two-element"])
    p_build.add_argument("--orders", help="comma-joined factor orders")
    p_build.add_argument("--subgroup", help="subgroup elements: coords comma-joined, ';'-separated")
    p_build.add_argument("--transversal", help="coset representatives, same syntax as --subgroup")
    p_build.add_argument("--u", choices=["trivial", "chain2"], default="trivial",
                         help="factor algebra for twisted builds")
    p_build.add_argument("--k", type=int, help="atom count for ak")
    common(p_build)
    p_build.set_defaults(func=_cmd_build)

    p_validate = sub.add_parser("validate", help="axiom-check an algebra JSON file")
    p_validate.add_argument("--algebra", required=True)
    common(p_validate)
    p_validate.set_defaults(func=_cmd_validate)

    p_hasse = sub.add_parser("hasse", help="emit the covering relation as DOT")
    p_hasse.add_argument("--algebra", required=True)
    p_hasse.add_argument("--dot", help="write DOT here instead of stdout")
    p_hasse.add_argument("--actions", action="store_true", help="add dashed generator arcs")
    p_hasse.set_defaults(func=_cmd_hasse)

    p_minimal = sub.add_parser("check-minimal", help="free-minimality of a generated algebra")
    p_minimal.add_argument("--algebra", required=True)
    p_minimal.add_argument("--generator", help="carrier label of the generator")
    common(p_minimal)
    p_minimal.set_defaults(func=_cmd_check_minimal)

    p_bij = sub.add_parser("verify-bijection", help="subgroup/minimal-quasivariety correspondence")
    p_bij.add_argument("--orders", required=True)
    common(p_bij)
    p_bij.set_defaults(func=_cmd_verify_bijection)

    p_quasi = sub.add_parser("quasi", help="check a quasi-identity against an algebra")
    p_quasi.add_argument("--algebra", required=True)
    p_quasi.add_argument("--qi", required=True, help='e.g. "g0(x)=x -> x = x^y"')
    common(p_quasi)
    p_quasi.set_defaults(func=_cmd_quasi)

    p_dec = sub.add_parser("decompose", help="subgroup/factor splitting of a free-minimal algebra")
    p_dec.add_argument("--algebra", required=True)
    p_dec.add_argument("--generator")
    common(p_dec)
    p_dec.set_defaults(func=_cmd_decompose)

    p_simp = sub.add_parser("simplicity", help="congruence census and quotient exclusion")
    p_simp.add_argument("--algebra", required=True)
    p_simp.add_argument("--generator")
    p_simp.add_argument("--limit", type=int, default=24, help="congruence carrier limit")
    common(p_simp)
    p_simp.set_defaults(func=_cmd_simplicity)

    p_balpha = sub.add_parser("balpha", help="exact separating-identity demo on {m+n*alpha}")
    p_balpha.add_argument("--alpha", required=True, help="sqrt:D or (P+Q*sqrt:D)/R")
    p_balpha.add_argument("--beta", required=True)
    p_balpha.add_argument("--p", type=int, help="numerator of a rational between (default: search)")
    p_balpha.add_argument("--q", type=int, help="denominator of a rational between")
    p_balpha.add_argument("--samples", type=int, default=25)
    common(p_balpha)
    p_balpha.set_defaults(func=_cmd_balpha)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (
        ValueError,
        KeyError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
