"""Command-line front end.

Every subcommand is a pure function of its flags: the same invocation prints
byte-identical output.  Exit codes: 0 success, 1 domain error (one-line
diagnostic on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import audit as audit_mod
from . import designs as designs_mod
from . import enrollment, expanded
from .errors import Error, ParameterError
from .field import PrimeField, smallest_prime_at_least
from .ramp import RampParams, Share, deal, reconstruct
from .rng import SeededRng
from .transcript import REPAIR, Transcript


def _frac(value) -> str:
    return str(Fraction(value))


def _resolve_design(source: str) -> designs_mod.Design:
    """A builtin name if it parses as one, else a file path."""
    try:
        return designs_mod.builtin_design(source)
    except ParameterError:
        pass
    path = Path(source)
    if not path.exists():
        raise ParameterError(
            f"{source!r} is neither a builtin design nor an existing file"
        )
    return designs_mod.load_design(path.read_text())


def _apply_blocks(design, spec: str | None):
    if spec is None:
        return design
    indices = []
    for part in spec.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, _, hi = part.partition("-")
            indices.extend(range(int(lo), int(hi) + 1))
        else:
            indices.append(int(part))
    return designs_mod.subdesign(design, indices)


def _resolve_secret(args, field: PrimeField, length: int, rng: SeededRng):
    if args.secret is not None and args.random_secret:
        raise ParameterError("pass either --secret or --random-secret, not both")
    if args.secret is not None:
        if len(args.secret) != length:
            raise ParameterError(
                f"secret needs {length} value(s), got {len(args.secret)}"
            )
        return tuple(field.element(v) for v in args.secret)
    if args.random_secret:
        return tuple(rng.element(field) for _ in range(length))
    raise ParameterError("provide --secret values or --random-secret")


def _ramp_params(args, default_q_floor: int) -> RampParams:
    if args.k is not None:
        if args.k1 is not None or args.k2 is not None:
            raise ParameterError("pass either --k or --k1/--k2, not both")
        k1, k2 = args.k - 1, args.k
    else:
        if args.k1 is None or args.k2 is None:
            raise ParameterError("pass --k or both --k1 and --k2")
        k1, k2 = args.k1, args.k2
    q = args.q if args.q else smallest_prime_at_least(default_q_floor)
    return RampParams(k1=k1, k2=k2, n=args.n, field=PrimeField(q))


def _share_objs(shares) -> list:
    return [{"x": s.x.value, "y": s.y.value} for s in shares]


def cmd_deal(args) -> dict:
    params = _ramp_params(args, args.n + 1)
    rng = SeededRng(args.seed)
    secret = _resolve_secret(args, params.field, params.secret_len, rng)
    shares, _poly = deal(params, secret, rng)
    return {
        "q": params.field.modulus,
        "k1": params.k1,
        "k2": params.k2,
        "n": params.n,
        "secret": [s.value for s in secret],
        "shares": _share_objs(shares),
    }


def _load_shares_input(source: str) -> dict:
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    obj = json.loads(text)
    if isinstance(obj, list):
        return {"shares": obj}
    return obj


def cmd_reconstruct(args) -> dict:
    obj = _load_shares_input(args.shares)
    q = args.q or obj.get("q")
    if q is None:
        raise ParameterError("pass --q or use a share file that records q")
    field = PrimeField(int(q))
    k1 = args.k1 if args.k1 is not None else obj.get("k1")
    k2 = args.k2 if args.k2 is not None else obj.get("k2")
    if args.k is not None:
        k1, k2 = args.k - 1, args.k
    if k1 is None or k2 is None:
        raise ParameterError("pass --k or --k1/--k2, or use a share file that records them")
    share_recs = obj["shares"]
    n = args.n or obj.get("n") or len(share_recs)
    params = RampParams(k1=int(k1), k2=int(k2), n=int(n), field=field)
    shares = [
        Share(field.element(int(r["x"])), field.element(int(r["y"])))
        for r in share_recs
    ]
    secret = reconstruct(params, shares)
    return {"q": field.modulus, "secret": [s.value for s in secret]}


def cmd_repair_enroll(args) -> dict:
    params = _ramp_params(args, args.n + 1)
    rng = SeededRng(args.seed)
    secret = _resolve_secret(args, params.field, params.secret_len, rng)
    shares, _poly = deal(params, secret, rng)
    target = args.target if args.target is not None else params.n
    if not 1 <= target <= params.n:
        raise ParameterError(f"target must be in 1..{params.n}")
    if args.helpers:
        helper_ids = [int(tok) for tok in args.helpers.split(",")]
    else:
        helper_ids = [i for i in range(1, params.n + 1) if i != target][: params.k2]
    helper_shares = []
    for pid in helper_ids:
        if not 1 <= pid <= params.n:
            raise ParameterError(f"helper {pid} out of range 1..{params.n}")
        helper_shares.append(shares[pid - 1])
    repaired, transcript, matrix = enrollment.repair_share(
        params, helper_shares, params.field.element(target), rng
    )
    counts = audit_mod.count_communication(transcript, params.secret_len)
    out = {
        "q": params.field.modulus,
        "k1": params.k1,
        "k2": params.k2,
        "n": params.n,
        "target": target,
        "helpers": sorted(helper_ids),
        "repaired": {"x": repaired.x.value, "y": repaired.y.value},
        "dealt_y": shares[target - 1].y.value,
        "matches_dealt": repaired.y == shares[target - 1].y,
        "matrix": [[v.value for v in row] for row in matrix.entries],
        "messages": counts["messages"],
        "field_elements": counts["field_elements"],
        "cc": _frac(counts["cc"]),
        "transcript": transcript.to_obj(),
    }
    if args.transcript_out:
        Path(args.transcript_out).write_text(
            json.dumps(transcript.to_obj(), indent=2) + "\n"
        )
    return out


def cmd_rts_demo(args) -> dict:
    design = _apply_blocks(_resolve_design(args.design), args.blocks)
    q = args.q or smallest_prime_at_least(design.m + 1)
    field = PrimeField(q)
    rng = SeededRng(args.seed)
    metrics = expanded.design_metrics(design, args.k)
    secret = _resolve_secret(
        args, field, metrics["ell2"] - metrics["ell1"], rng
    )
    scheme = expanded.setup(design, args.k, field, secret, rng)
    target = args.target
    if not 0 <= target < scheme.n:
        raise ParameterError(f"target must be in 0..{scheme.n - 1}")
    plan = expanded.plan_repair(scheme, target, args.strategy)
    restored, transcript = expanded.execute_repair(scheme, plan)
    counts = audit_mod.count_communication(transcript, scheme.base.secret_len)
    subsets_checked = 0
    from itertools import combinations

    import math

    all_subsets = math.comb(scheme.n, scheme.k) <= 1000
    groups = (
        combinations(range(scheme.n), scheme.k)
        if all_subsets
        else [tuple(range(scheme.k))]
    )
    ok = True
    for group in groups:
        subsets_checked += 1
        if expanded.reconstruct_secret(scheme, group) != secret:
            ok = False
            break
    return {
        "design": {"m": design.m, "n": design.n, "d": design.block_size()},
        "q": q,
        "secret": [s.value for s in secret],
        "metrics": {
            "rho": _frac(metrics["rho"]),
            "cc": _frac(metrics["cc"]),
            "d": metrics["d"],
            "k": metrics["k"],
            "n": metrics["n"],
            "ell1": metrics["ell1"],
            "ell2": metrics["ell2"],
        },
        "repair": {
            "target": target,
            "strategy": args.strategy,
            "plan": [[point, donor] for point, donor in plan.assignments],
            "distinct_donors": plan.distinct_donors,
            "restored_matches": restored == scheme.player_shares[target],
            "field_elements": counts["field_elements"],
            "cc": _frac(counts["cc"]),
            "structural_secrecy": expanded.check_repair_transcript(
                scheme, plan, transcript
            ),
            "transcript": transcript.to_obj(),
        },
        "reconstruction": {
            "subsets_checked": subsets_checked,
            "exhaustive": all_subsets,
            "ok": ok,
        },
    }


def cmd_verify_design(args) -> dict:
    design = _apply_blocks(_resolve_design(args.design), args.blocks)
    profile = designs_mod.compute_profile(design, args.k, guard=args.guard)
    basic = designs_mod.find_basic_repairing_set(design)
    out = {
        "m": design.m,
        "n": design.n,
        "d": design.block_size(),
        "k": profile.k,
        "ell1": profile.ell1,
        "ell2": profile.ell2,
        "repairable": designs_mod.is_repairable(design),
        "basic_set_size": len(basic) if basic is not None else None,
    }
    if profile.usable and design.block_size() is not None:
        payload = profile.ell2 - profile.ell1
        out["rho"] = _frac(Fraction(payload, design.block_size()))
        out["cc"] = _frac(Fraction(design.block_size(), payload))
    return out


def cmd_gen_design(args) -> str:
    design = _apply_blocks(designs_mod.builtin_design(args.builtin), args.blocks)
    text = designs_mod.save_design(design)
    if args.out:
        Path(args.out).write_text(text)
        return f"wrote {design.m} points, {design.n} blocks to {args.out}"
    return text.rstrip("\n")


def _reaudit_transcript(args) -> dict:
    text = Path(args.transcript).read_text()
    field = PrimeField(args.q) if args.q else None
    if field is None:
        raise ParameterError("re-auditing a transcript needs --q")
    transcript = Transcript.from_obj(json.loads(text), field)
    secret_len = args.secret_len or 1
    counts = audit_mod.count_communication(transcript, secret_len)
    out = {
        "messages": counts["messages"],
        "field_elements": counts["field_elements"],
        "cc": _frac(counts["cc"]),
    }
    repair_msgs = transcript.in_phase(REPAIR)
    exchange_msgs = transcript.in_phase("exchange")
    if args.protocol == "enrollment":
        k2 = len(repair_msgs)
        out["k2_inferred"] = k2
        out["count_matches_protocol"] = (
            len(exchange_msgs) == k2 * (k2 - 1)
            and counts["field_elements"] == k2 * k2
        )
    return out


def cmd_audit(args) -> dict | list:
    if args.transcript:
        return _reaudit_transcript(args)
    if args.protocol == "enrollment":
        report = audit_mod.audit_enrollment_secrecy(
            args.q,
            args.n,
            k=args.k,
            k1=args.k1,
            k2=args.k2,
            case=args.case,
            coalition=_parse_ids(args.coalition),
            guard=args.guard,
        )
        return report.to_obj()
    if args.protocol == "rts":
        design = _apply_blocks(_resolve_design(args.design), args.blocks)
        if args.sweep:
            from itertools import combinations

            size = args.coalition_size or (args.k - 1)
            reports = [
                audit_mod.audit_rts_secrecy(
                    design, args.k, args.q, coalition, guard=args.guard
                ).to_obj()
                for coalition in combinations(range(design.n), size)
            ]
            return reports
        coalition = _parse_ids(args.coalition)
        if coalition is None:
            coalition = tuple(range(args.coalition_size or (args.k - 1)))
        report = audit_mod.audit_rts_secrecy(
            design, args.k, args.q, coalition, guard=args.guard
        )
        return report.to_obj()
    raise ParameterError(f"unknown protocol {args.protocol!r}")


def _parse_ids(spec: str | None):
    if spec is None:
        return None
    return tuple(int(tok) for tok in spec.split(","))


def cmd_bounds(args):
    rho = audit_mod.glf_bound(args.k, args.d, args.alpha, args.beta)
    if args.format == "text":
        return _frac(rho)
    return {
        "k": args.k,
        "d": args.d,
        "alpha": args.alpha,
        "beta": args.beta,
        "rho_max": _frac(rho),
    }


def cmd_compare(args):
    rows = audit_mod.comparison_rows(audit_mod.comparison_corpus())
    json_rows = [
        {
            "scheme": r["scheme"],
            "k": r["k"],
            "d": r["d"],
            "n": r["n"],
            "rho_ours": _frac(r["rho_ours"]),
            "rho_glf_bound": _frac(r["rho_glf_bound"]),
            "cc_ours": _frac(r["cc_ours"]),
        }
        for r in rows
    ]
    if args.format == "json":
        return json_rows
    header = ("scheme", "k", "d", "n", "rho_ours", "rho_glf_bound", "cc_ours")
    table = [header] + [
        tuple(str(row[col]) for col in header) for row in json_rows
    ]
    widths = [max(len(line[i]) for line in table) for i in range(len(header))]
    lines = [
        "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(line)).rstrip()
        for line in table
    ]
    return "\n".join(lines)


def _add_format(parser):
    parser.add_argument(
        "--format", choices=("json", "text"), default="json", help="output format"
    )


def _add_secret_flags(parser):
    parser.add_argument("--secret", type=int, nargs="+", help="secret as decimal integers")
    parser.add_argument(
        "--random-secret",
        action="store_true",
        help="derive the secret deterministically from the seed",
    )


def _add_threshold_flags(parser):
    parser.add_argument("--k", type=int, help="threshold (shorthand for k1=k-1, k2=k)")
    parser.add_argument("--k1", type=int, help="lower ramp threshold")
    parser.add_argument("--k2", type=int, help="upper ramp threshold")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rtss",
        description="Repairable threshold secret sharing: deal, repair, verify, audit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("deal", help="deal shares of a secret")
    _add_threshold_flags(p)
    p.add_argument("--n", type=int, required=True, help="number of players")
    p.add_argument("--q", type=int, help="field modulus (default: smallest prime >= n+1)")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed")
    _add_secret_flags(p)
    _add_format(p)
    p.set_defaults(func=cmd_deal)

    p = sub.add_parser("reconstruct", help="recover a secret from shares")
    _add_threshold_flags(p)
    p.add_argument("--n", type=int, help="number of players")
    p.add_argument("--q", type=int, help="field modulus")
    p.add_argument(
        "--shares",
        required=True,
        help="JSON file with shares ('-' for stdin); accepts deal output",
    )
    _add_format(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("repair-enroll", help="repair one share via the exchange protocol")
    _add_threshold_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--seed", type=int, default=0)
    _add_secret_flags(p)
    p.add_argument("--target", type=int, help="player to repair (default: n)")
    p.add_argument("--helpers", help="comma-separated helper ids (default: first k2 others)")
    p.add_argument("--transcript-out", help="also write the transcript JSON here")
    _add_format(p)
    p.set_defaults(func=cmd_repair_enroll)

    p = sub.add_parser("rts-demo", help="build a design-based scheme, repair, reconstruct")
    p.add_argument("--design", required=True, help="builtin name or design file")
    p.add_argument("--blocks", help="restrict to these block indices (e.g. 0-5,7)")
    p.add_argument("--k", type=int, required=True, help="threshold")
    p.add_argument("--q", type=int, help="field modulus (default: smallest prime >= m+1)")
    p.add_argument("--seed", type=int, default=0)
    _add_secret_flags(p)
    p.add_argument("--target", type=int, default=0, help="player to repair")
    p.add_argument(
        "--strategy",
        choices=expanded.STRATEGIES,
        default="lowest-index",
        help="donor selection strategy",
    )
    _add_format(p)
    p.set_defaults(func=cmd_rts_demo)

    p = sub.add_parser("verify-design", help="profile and repairability of a design")
    p.add_argument("--design", help="builtin name or design file")
    p.add_argument("--builtin", dest="design_builtin", help="alias for --design")
    p.add_argument("--file", dest="design_file", help="alias for --design")
    p.add_argument("--blocks", help="restrict to these block indices")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--guard", type=int, default=designs_mod.PROFILE_GUARD)
    _add_format(p)
    p.set_defaults(func=cmd_verify_design)

    p = sub.add_parser("gen-design", help="emit a builtin design as a text file")
    p.add_argument("--builtin", required=True, help="builtin design name")
    p.add_argument("--blocks", help="restrict to these block indices")
    p.add_argument("--out", help="write to this path instead of stdout")
    _add_format(p)
    p.set_defaults(func=cmd_gen_design)

    p = sub.add_parser("audit", help="exhaustive secrecy audit")
    p.add_argument("--protocol", choices=("enrollment", "rts"), required=True)
    p.add_argument("--q", type=int, required=True)
    _add_threshold_flags(p)
    p.add_argument("--n", type=int, help="players (enrollment)")
    p.add_argument("--case", choices=("i", "ii"), default="i")
    p.add_argument("--coalition", help="comma-separated player ids")
    p.add_argument("--coalition-size", type=int, help="coalition size (rts; default k-1)")
    p.add_argument("--sweep", action="store_true", help="audit every coalition of that size (rts)")
    p.add_argument("--design", help="builtin name or design file (rts)")
    p.add_argument("--blocks", help="restrict to these block indices (rts)")
    p.add_argument("--guard", type=int, default=audit_mod.DEFAULT_GUARD)
    p.add_argument("--transcript", help="re-audit a saved transcript instead")
    p.add_argument("--secret-len", type=int, help="secret length for transcript re-audit")
    _add_format(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("bounds", help="information-rate bound for bandwidth-optimal repair")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("compare", help="our schemes next to the bandwidth-optimal bound")
    _add_format(p)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify-design":
        sources = [
            s for s in (args.design, args.design_builtin, args.design_file) if s
        ]
        if len(sources) != 1:
            parser.error("verify-design needs exactly one of --design/--builtin/--file")
        args.design = sources[0]
    try:
        result = args.func(args)
    except (Error, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if isinstance(result, str):
        print(result)
    else:
        print(json.dumps(result, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
