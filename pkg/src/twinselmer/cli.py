"""Command-line front end: compute groups, verify catalog claims, search, audit engines."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .criteria import audit_params
from .family import (
    PHI,
    PHI_HAT,
    InvalidParamsError,
    enumerate_square_classes,
    validate_params,
)
from .localsolve import OracleUndecidedError
from .search import CONSTRAINTS, demonstrate_large_selmer, find_family
from .selmer import compute_selmer, to_jsonable
from .theorems import THEOREM_IDS, verify_theorem

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3

ENV_TIME_BUDGET = "TWINSELMER_TIME_BUDGET"
CSV_VERSION = "# twinselmer-csv v1"
DEFAULT_N_CAP = 20


def _parse_epsilon(text: str) -> int:
    if text in ("+1", "1"):
        return 1
    if text == "-1":
        return -1
    raise argparse.ArgumentTypeError(f"epsilon must be +1 or -1, got {text!r}")


def _parse_primes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="twinselmer",
        description="Descent Selmer groups of twin-prime curve families: "
        "compute, verify catalog claims, search instances, audit the two engines.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--config", help="key=value file overriding flags")
        sp.add_argument("--n-cap", dest="n_cap", type=int, default=DEFAULT_N_CAP,
                        help="largest allowed number of D primes (default 20)")

    def add_family(sp):
        sp.add_argument("--epsilon", type=_parse_epsilon, help="+1 or -1")
        sp.add_argument("--p", type=int, help="smaller twin prime")
        sp.add_argument("--q", type=int, help="larger twin prime (p + 2)")
        sp.add_argument("--D", dest="D", type=_parse_primes,
                        help="comma-separated prime factors of D (pre-factored)")

    sp = sub.add_parser("compute", help="compute one Selmer group")
    add_family(sp)
    sp.add_argument("--kind", choices=(PHI, PHI_HAT), default=PHI)
    sp.add_argument("--seed-table", dest="seed_table", action="store_true",
                    help="emit the full per-place verdict table")
    add_common(sp)

    sp = sub.add_parser("verify", help="verify one catalog claim on an instance")
    add_family(sp)
    sp.add_argument("--theorem", choices=THEOREM_IDS, required=False)
    sp.add_argument("--strict", action="store_true",
                    help="treat not-applicable as failure for the exit status")
    add_common(sp)

    sp = sub.add_parser("search", help="find instances satisfying catalog hypotheses")
    sp.add_argument("--epsilon", type=_parse_epsilon)
    sp.add_argument("--corollary", choices=sorted(CONSTRAINTS),
                    help="catalog entry whose hypotheses to sieve for")
    sp.add_argument("--n", type=int, default=1, help="number of D primes")
    sp.add_argument("--target-dim", dest="target_dim", type=int,
                    help="instead: stack primes until dim2 >= this value")
    sp.add_argument("--kind", choices=(PHI, PHI_HAT), default=PHI_HAT,
                    help="group to grow when using --target-dim")
    sp.add_argument("--bound", type=int, default=10**4, help="largest allowed D prime")
    sp.add_argument("--time-budget", dest="time_budget", type=float,
                    help=f"seconds; default from ${ENV_TIME_BUDGET} if set")
    add_common(sp)

    sp = sub.add_parser("audit", help="closed-form criteria vs oracle discrepancy table")
    add_family(sp)
    add_common(sp)

    return ap


_CONFIG_PARSERS = {
    "epsilon": _parse_epsilon,
    "p": int,
    "q": int,
    "D": _parse_primes,
    "kind": str,
    "theorem": str,
    "corollary": str,
    "format": str,
    "n": int,
    "n_cap": int,
    "bound": int,
    "target_dim": int,
    "time_budget": float,
    "strict": lambda s: s.lower() in ("1", "true", "yes"),
    "seed_table": lambda s: s.lower() in ("1", "true", "yes"),
}


def _apply_config(args: argparse.Namespace) -> None:
    """Load key=value pairs; per the interface contract they override flags."""
    with open(args.config, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{args.config}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in _CONFIG_PARSERS or not hasattr(args, key):
                raise ValueError(f"{args.config}:{lineno}: unknown key {key!r}")
            setattr(args, key, _CONFIG_PARSERS[key](value.strip()))


def _canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit_csv(tag: str, header: list[str], rows: list[list]) -> None:
    print(f"{CSV_VERSION} {tag}")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _params_from(args) -> "FamilyParams":
    missing = [name for name in ("epsilon", "p", "q", "D") if getattr(args, name) is None]
    if missing:
        raise InvalidParamsError(f"missing required flags: {', '.join('--' + m for m in missing)}")
    if len(args.D) > args.n_cap:
        raise InvalidParamsError(
            f"{len(args.D)} D primes exceeds the cap {args.n_cap}; raise it with --n-cap"
        )
    return validate_params(args.epsilon, args.p, args.q, args.D)


def _cmd_compute(args) -> int:
    params = _params_from(args)
    group = compute_selmer(params, args.kind)
    if args.format == "json":
        print(_canonical_json(to_jsonable(group, include_table=args.seed_table)), end="")
    elif args.format == "csv":
        if args.seed_table:
            rows = []
            for (value, place), verdict in sorted(
                group.verdict_table.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))
            ):
                witness = ""
                if verdict.witness is not None:
                    witness = json.dumps(
                        {k: str(v) for k, v in verdict.witness.items()}, sort_keys=True
                    )
                rows.append([value, place, verdict.solvable, verdict.search_depth, witness])
            _emit_csv("verdicts", ["d", "place", "solvable", "search_depth", "witness"], rows)
        else:
            members = {cls.value for cls in group.elements}
            rows = []
            for value in sorted(cls.value for cls in enumerate_square_classes(params)):
                failed = ""
                if value not in members:
                    for place in params.places():
                        verdict = group.verdict_table.get((value, place))
                        if verdict is not None and not verdict.solvable:
                            failed = str(place)
                            break
                rows.append([value, value in members, failed])
            _emit_csv("selmer", ["d", "member", "failed_place"], rows)
    else:
        print(f"{group.kind} Selmer group for {params.label()}")
        values = ", ".join(str(v) for v in group.element_values())
        print(f"dim2={group.dim2}, elements={{{values}}}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.theorem is None:
        raise InvalidParamsError("missing required flag: --theorem")
    params = _params_from(args)
    report = verify_theorem(params, args.theorem)
    if args.format == "json":
        print(_canonical_json(report.as_dict()), end="")
    elif args.format == "csv":
        _emit_csv(
            "verify",
            ["theorem", "verdict", "hypotheses_hold", "branch", "claimed", "observed"],
            [[
                report.theorem_id,
                report.verdict,
                report.hypotheses_hold,
                report.branch or "",
                report.claimed,
                json.dumps(report.observed, sort_keys=True),
            ]],
        )
    else:
        print(f"theorem {report.theorem_id} on {params.label()}: {report.verdict}")
        if report.verdict != "not-applicable":
            print(f"  claimed:  {report.claimed}")
            print(f"  observed: {json.dumps(report.observed, sort_keys=True)}")
    if report.verdict == "pass":
        return EXIT_OK
    if report.verdict == "not-applicable":
        return EXIT_FAILURE if args.strict else EXIT_OK
    return EXIT_FAILURE


def _cmd_search(args) -> int:
    budget = args.time_budget
    if budget is None and os.environ.get(ENV_TIME_BUDGET):
        budget = float(os.environ[ENV_TIME_BUDGET])
    progress = lambda msg: print(f"search: {msg}", file=sys.stderr)  # noqa: E731
    if args.epsilon is None:
        raise InvalidParamsError("missing required flag: --epsilon")
    if args.target_dim is not None:
        found = demonstrate_large_selmer(
            args.epsilon, args.kind, args.target_dim,
            bound=args.bound, time_budget=budget, progress=progress,
        )
        query = {"mode": "target-dim", "kind": args.kind, "target_dim": args.target_dim}
    elif args.corollary is not None:
        found = find_family(
            args.epsilon, args.corollary, args.n, args.bound,
            time_budget=budget, progress=progress,
        )
        query = {"mode": "corollary", "corollary": args.corollary, "n": args.n}
    else:
        raise InvalidParamsError("search needs --corollary or --target-dim")
    query.update({"epsilon": args.epsilon, "bound": args.bound})
    payload = {
        "schema": "twinselmer/search-v1",
        "query": query,
        "found": found is not None,
        "params": found.as_dict() if found is not None else None,
    }
    if args.format == "json":
        print(_canonical_json(payload), end="")
    elif args.format == "csv":
        row = [found is not None]
        row += [found.epsilon, found.p, found.q, ",".join(map(str, found.d_primes))] if found else ["", "", "", ""]
        _emit_csv("search", ["found", "epsilon", "p", "q", "D"], [row])
    else:
        print(found.label() if found is not None else "none")
    return EXIT_OK if found is not None else EXIT_FAILURE


def _cmd_audit(args) -> int:
    params = _params_from(args)
    rows = audit_params(params)
    payload = {
        "schema": "twinselmer/audit-v1",
        "params": params.as_dict(),
        "count": len(rows),
        "discrepancies": rows,
    }
    if args.format == "json":
        print(_canonical_json(payload), end="")
    elif args.format == "csv":
        _emit_csv(
            "audit",
            ["check", "kind", "d", "place", "rule", "closed_form", "oracle"],
            [[r["check"], r["kind"], r["d"], r["place"], r["rule"], r["closed_form"], r["oracle"]] for r in rows],
        )
    else:
        print(f"{len(rows)} discrepancies for {params.label()}")
        for r in rows:
            print(
                f"  {r['check']} kind={r['kind']} d={r['d']} place={r['place']}"
                f" rule={r['rule']} closed_form={r['closed_form']} oracle={r['oracle']}"
            )
    return EXIT_OK if not rows else EXIT_FAILURE


_HANDLERS = {
    "compute": _cmd_compute,
    "verify": _cmd_verify,
    "search": _cmd_search,
    "audit": _cmd_audit,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.config:
            _apply_config(args)
        return _HANDLERS[args.command](args)
    except InvalidParamsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleUndecidedError as exc:
        print(f"error: oracle undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
