"""Command line front end.

Commands: omega, orbits, classify, mixed {build,verify,auto,omega},
cocycle {verify,trivialize,complement}, catalog, selftest. Groups are given
either as a path to a group JSON file or as catalog:NAME. Certificates are
the product; pass --json for machine-readable output. Every command is
deterministic given --seed (default from ORBITFORGE_SEED, else 0), and the
exit code is 0 exactly when all requested verifications passed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import auto_orbits, catalog, classify, cocycle_split, group_core, mixed_group
from .exact_linear import QMatrix


def _resolve_group(ref: str) -> group_core.GroupTable:
    if ref.startswith("catalog:"):
        return catalog.get(ref[len("catalog:"):])
    with open(ref, "r", encoding="utf-8") as fh:
        return group_core.GroupTable.from_json(json.load(fh))


def _emit(payload: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("ORBITFORGE_SEED", "0"))


def cmd_omega(args) -> int:
    g = _resolve_group(args.group)
    part = auto_orbits.orbit_partition(g)
    lines = [
        f"group: {args.group} (order {g.order})",
        f"omega = {part.omega}",
        "class sizes: " + ", ".join(str(len(c)) for c in part.classes),
    ]
    _emit(part.to_json(), args.json, lines)
    return 0


def cmd_orbits(args) -> int:
    g = _resolve_group(args.group)
    part = auto_orbits.orbit_partition(g)
    orders = g.element_orders()
    lines = [f"group: {args.group} (order {g.order}), omega = {part.omega}"]
    for cls in part.classes:
        labels = ", ".join(g.labels[i] for i in cls)
        lines.append(f"  order {orders[cls[0]]:>3}, size {len(cls):>3}: {labels}")
    _emit(part.to_json(), args.json, lines)
    return 0


def cmd_classify(args) -> int:
    g = _resolve_group(args.group)
    report = classify.classify_group(g)
    lines = [
        f"group: {args.group} (order {g.order})",
        f"omega = {report.omega}",
        f"verdict: {report.verdict}",
    ]
    for key, value in report.evidence.items():
        lines.append(f"  {key}: {value}")
    _emit(report.to_json(), args.json, lines)
    return 0


def _mixed_spec(args) -> mixed_group.MixedGroupSpec:
    m = None
    if getattr(args, "matrix", None):
        with open(args.matrix, "r", encoding="utf-8") as fh:
            m = QMatrix.from_json(json.load(fh))
    return mixed_group.build(args.p, args.t, m)


def _print_certificate(cert: mixed_group.Certificate, as_json: bool, header: str) -> int:
    lines = [header]
    for c in cert.checks:
        lines.append(f"  {c.name}: {'PASS' if c.passed else 'FAIL'} ({c.detail})")
    lines.append("result: " + ("all checks passed" if cert.ok else "FAILED"))
    _emit(cert.to_json(), as_json, lines)
    return 0 if cert.ok else 1


def cmd_mixed(args) -> int:
    spec = _mixed_spec(args)
    if args.subcommand == "build":
        lines = [
            f"validated mixed-order spec: p={spec.p}, t={spec.t}, n={spec.n}",
            "action matrix rows: " + "; ".join(" ".join(map(str, r)) for r in spec.action.rows),
        ]
        _emit(spec.to_json(), args.json, lines)
        return 0
    if args.subcommand == "verify":
        cert = mixed_group.spec_checks(spec)
        return _print_certificate(cert, args.json, f"spec checks for p={spec.p}, t={spec.t}:")
    if args.subcommand == "auto":
        import random

        rng = random.Random(_seed(args))
        alpha = mixed_group.random_element(rng, spec, outside=True)
        beta = mixed_group.random_element(rng, spec, outside=True)
        b = mixed_group.random_vector(rng, spec.n, nonzero=True)
        c = mixed_group.random_vector(rng, spec.n, nonzero=True)
        try:
            phi = mixed_group.build_automorphism(b, c, alpha, beta, spec)
        except mixed_group.AutomorphismVerificationError as exc:
            return _print_certificate(exc.certificate, args.json, "automorphism construction:")
        cert = mixed_group.verify_automorphism(phi, spec, samples=args.pairs, seed=_seed(args))
        return _print_certificate(
            cert, args.json, f"automorphism {alpha!r} -> {beta!r} with L verified:"
        )
    if args.subcommand == "omega":
        cert = mixed_group.omega_certificate(spec, args.pairs, seed=_seed(args))
        code = _print_certificate(
            cert, args.json, f"three-orbit certificate for p={spec.p}, t={spec.t}:"
        )
        if code == 0 and not args.json:
            print("omega = 3 certified")
        return code
    raise AssertionError(args.subcommand)


def cmd_cocycle(args) -> int:
    with open(args.path, "r", encoding="utf-8") as fh:
        c = cocycle_split.Cocycle.from_json(json.load(fh))
    if args.subcommand == "verify":
        ok, witness = cocycle_split.verify_cocycle(c)
        payload = {"ok": ok, "witness": list(witness) if witness else None}
        lines = ["cocycle identity: PASS" if ok else f"cocycle identity: FAIL at triple {witness}"]
        _emit(payload, args.json, lines)
        return 0 if ok else 1
    if args.subcommand == "trivialize":
        e = cocycle_split.trivialize(c)
        payload = {"trivializer": [v.to_json() for v in e]}
        lines = ["trivializing cochain:"]
        for x, v in enumerate(e):
            lines.append(f"  e({c.base.labels[x]}) = ({', '.join(map(str, v.entries))})")
        _emit(payload, args.json, lines)
        return 0
    if args.subcommand == "complement":
        h = cocycle_split.complement(c)
        payload = {
            "complement": [{"x": s.x, "a": s.a.to_json()} for s in h],
            "size": len(h),
        }
        lines = [f"verified complement of size {len(h)}:"]
        for s in h:
            lines.append(f"  s_{c.base.labels[s.x]} = ({', '.join(map(str, s.a.entries))})")
        _emit(payload, args.json, lines)
        return 0
    raise AssertionError(args.subcommand)


def cmd_catalog(args) -> int:
    rows = []
    for e in catalog.entries():
        g = e.build()
        rows.append(
            {
                "name": e.name,
                "order": g.order,
                "description": e.description,
                "expected_omega": e.expected_omega,
                "provenance": e.provenance,
            }
        )
    lines = [
        f"{r['name']:>8}  order {r['order']:>4}  omega={r['expected_omega']}"
        f" [{r['provenance']}]  {r['description']}"
        for r in rows
    ]
    _emit({"catalog": rows}, args.json, lines)
    return 0


def cmd_selftest(args) -> int:
    failures = 0
    results = []
    for e in catalog.entries():
        g = e.build()
        if args.max_order and g.order > args.max_order:
            continue
        if e.expected_omega is None:
            continue
        got = auto_orbits.omega(g)
        ok = got == e.expected_omega
        failures += 0 if ok else 1
        results.append({"name": e.name, "expected": e.expected_omega, "got": got, "ok": ok})
        print(f"{'PASS' if ok else 'FAIL'}  {e.name}: omega expected {e.expected_omega}, got {got}")
    if args.json:
        print(json.dumps({"results": results, "ok": failures == 0}, indent=2))
    print("selftest:", "all passed" if failures == 0 else f"{failures} failures")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitforge",
        description="automorphism orbit counts, classification reports, and exact certificates",
    )
    parser.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for randomized witnesses (default: $ORBITFORGE_SEED or 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_omega = sub.add_parser("omega", help="orbit count of a small group")
    p_omega.add_argument("group", help="path to group JSON or catalog:NAME")
    p_omega.set_defaults(func=cmd_omega)

    p_orbits = sub.add_parser("orbits", help="full orbit partition of a small group")
    p_orbits.add_argument("group", help="path to group JSON or catalog:NAME")
    p_orbits.set_defaults(func=cmd_orbits)

    p_classify = sub.add_parser("classify", help="orbit-count classification report")
    p_classify.add_argument("group", help="path to group JSON or catalog:NAME")
    p_classify.set_defaults(func=cmd_classify)

    p_mixed = sub.add_parser("mixed", help="exact Q^n x| C_p certificates")
    p_mixed.add_argument("subcommand", choices=["build", "verify", "auto", "omega"])
    p_mixed.add_argument("--p", type=int, required=True, help="prime order of the complement")
    p_mixed.add_argument("--t", type=int, default=None, help="number of companion blocks")
    p_mixed.add_argument("--matrix", default=None, help="path to an explicit action matrix (JSON)")
    p_mixed.add_argument("--pairs", type=int, default=20, help="witness pairs per orbit class")
    p_mixed.set_defaults(func=cmd_mixed)

    p_coc = sub.add_parser("cocycle", help="2-cocycle verification and splitting")
    p_coc.add_argument("subcommand", choices=["verify", "trivialize", "complement"])
    p_coc.add_argument("path", help="path to cocycle JSON")
    p_coc.set_defaults(func=cmd_cocycle)

    p_cat = sub.add_parser("catalog", help="list builtin groups")
    p_cat.set_defaults(func=cmd_catalog)

    p_self = sub.add_parser("selftest", help="recompute catalog orbit counts and compare")
    p_self.add_argument("--max-order", type=int, default=0,
                        help="skip catalog groups above this order (0 = no limit)")
    p_self.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (classify.TheoremContradictionError,
            cocycle_split.TrivializationError,
            cocycle_split.ComplementError,
            mixed_group.AutomorphismVerificationError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
