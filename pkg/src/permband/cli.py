"""Command-line front end.

Every subcommand builds one payload and renders it as human text (default),
a JSON document with schema ``permband/1``, or CSV where a tabular form
exists.  Exit codes: 0 success, 1 internal violation, 2 usage error,
3 resource refusal (memory cap).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__, amidakuji, cayley, extremal, factorize
from .codec import CODEC_VERSION, format_one_line, parse_permutation
from .perm import Permutation

SCHEMA = "permband/1"


def _parse_bytes(text: str) -> int:
    s = text.strip().upper().replace("IB", "").replace("B", "")
    mult = 1
    if s and s[-1] in "KMG":
        mult = {"K": 1 << 10, "M": 1 << 20, "G": 1 << 30}[s[-1]]
        s = s[:-1]
    try:
        return int(s) * mult
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad byte size {text!r}") from None


def _default_cap() -> int:
    env = os.environ.get("PERMBAND_MEMCAP")
    if env:
        try:
            return _parse_bytes(env)
        except argparse.ArgumentTypeError:
            print(f"warning: ignoring bad PERMBAND_MEMCAP {env!r}", file=sys.stderr)
    return cayley.DEFAULT_MEMORY_CAP


def _common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--format", choices=("text", "json", "csv"), default="text", help="output format"
    )
    sub.add_argument(
        "--memory-cap",
        type=_parse_bytes,
        default=None,
        help="memory cap in bytes (suffixes K/M/G allowed); PERMBAND_MEMCAP is the fallback",
    )
    sub.add_argument(
        "--threads",
        type=int,
        default=0,
        help="worker count hint (0 = auto); results never depend on it",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="permband",
        description="Factor permutations into bounded-width transpositions; "
        "compute exact distances, diameters and extremal sets.",
    )
    ap.add_argument("--version", action="version", version=f"permband {__version__}")
    subs = ap.add_subparsers(dest="command", required=True)

    p = subs.add_parser("dist", help="distance from the identity under width bound m")
    p.add_argument("--perm", required=True, help="one-line or (cycle) notation")
    p.add_argument("--n", type=int, default=None, help="degree (needed for cycle input)")
    p.add_argument("--m", type=int, required=True)
    _common(p)

    p = subs.add_parser("factor", help="factor a permutation into width-<=m transpositions")
    p.add_argument("--perm", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, required=True)
    p.add_argument(
        "--method",
        choices=("auto", "adjacent", "unrestricted", "banded", "recursive", "bfs"),
        default="auto",
    )
    p.add_argument(
        "--prove-optimal",
        action="store_true",
        help="also compute the exact distance and report the gap",
    )
    _common(p)

    p = subs.add_parser("diameter", help="exact diameter by exhaustive level search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--farthest", choices=("none", "count", "list"), default="count")
    p.add_argument(
        "--farthest-limit",
        type=int,
        default=1000,
        help="elide the farthest list above this count (count is always reported)",
    )
    _common(p)

    p = subs.add_parser("histogram", help="permutation counts per distance level")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _common(p)

    p = subs.add_parser("table", help="diameter grid for all m at each n up to a limit")
    p.add_argument("--n-max", type=int, default=8)
    _common(p)

    p = subs.add_parser("bounds", help="best known lower/upper bounds on the diameter")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _common(p)

    p = subs.add_parser("extremal", help="farthest-set classification tools")
    esubs = p.add_subparsers(dest="extremal_cmd", required=True)
    g = esubs.add_parser("gen", help="enumerate all diameter-attaining permutations")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    _common(g)
    c = esubs.add_parser("check", help="classify one permutation against the shapes")
    c.add_argument("--perm", required=True)
    c.add_argument("--n", type=int, default=None)
    c.add_argument("--m", type=int, required=True)
    _common(c)

    p = subs.add_parser("amida", help="ladder lotteries")
    asubs = p.add_subparsers(dest="amida_cmd", required=True)
    a = asubs.add_parser("apply", help="trace a ladder file to its permutation")
    a.add_argument("--ladder", required=True, help="ladder file path")
    _common(a)
    s = asubs.add_parser("solve", help="synthesize a minimal ladder for a permutation")
    s.add_argument("--perm", required=True)
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--render", action="store_true", help="include an ASCII picture")
    _common(s)
    k = asubs.add_parser("check", help="validate a ladder file")
    k.add_argument("--ladder", required=True)
    _common(k)
    return ap


def _perm_arg(args) -> Permutation:
    return parse_permutation(args.perm, args.n)


def _cap(args) -> int:
    return args.memory_cap if args.memory_cap is not None else _default_cap()


def _exact_delta(n: int, m: int, cap: int, cache: dict) -> tuple[int, str]:
    cf = extremal.delta_closed_form(n, m)
    if cf is not None:
        return cf, "closed_form"
    if (n, m) not in cache:
        cache[(n, m)] = cayley.distance_histogram(n, m, memory_cap=cap)
    return len(cache[(n, m)]) - 1, "search"


def run(args) -> tuple[dict, list[str], list[str]]:
    """Execute one parsed command.

    Returns (payload, text lines, csv lines); csv lines may be empty when
    the command has no tabular form.
    """
    cap = _cap(args)
    cmd = args.command
    if cmd == "dist":
        p = _perm_arg(args)
        d = cayley.distance(p, args.m, memory_cap=cap)
        payload = {"perm": format_one_line(p), "n": p.n, "m": args.m, "distance": d}
        return payload, [f"distance {d}"], []

    if cmd == "factor":
        p = _perm_arg(args)
        m = args.m
        method = args.method
        if method == "auto":
            f = factorize.auto_factor(p, m)
        elif method == "adjacent":
            f = factorize.adjacent_sort(p)
        elif method == "unrestricted":
            f = factorize.unrestricted_factor(p)
        elif method == "banded":
            f = factorize.banded_factor(p, m)
        elif method == "recursive":
            f = factorize.recursive_factor(p, m)
        else:
            f = factorize.bfs_factor(p, m, memory_cap=cap)
        bad = factorize.verify(f)
        if bad is not None:
            raise AssertionError(f"factorization failed verification: {bad}")
        payload = {
            "perm": format_one_line(p),
            "n": p.n,
            "m": f.m,
            "method": f.method,
            "length": f.length,
            "claimed_bound": f.claimed_bound,
            "factors": str(f),
            "details": dict(f.details),
            "verified": True,
        }
        lines = [str(f)]
        if args.prove_optimal:
            d = cayley.distance(p, f.m, memory_cap=cap)
            payload["distance"] = d
            payload["optimal"] = f.length == d
            lines.append(f"distance {d}  gap {f.length - d}")
        return payload, lines, []

    if cmd == "diameter":
        collect = args.farthest == "list"
        rep = cayley.bfs_diameter(args.n, args.m, collect_farthest=collect, memory_cap=cap)
        payload = rep.to_json_dict()
        payload["farthest_elided"] = False
        if collect and rep.farthest_count > args.farthest_limit:
            payload["farthest"] = None
            payload["farthest_elided"] = True
        if args.farthest == "none":
            payload.pop("farthest")
        lines = [f"delta({args.n},{args.m}) = {rep.delta}", f"farthest count {rep.farthest_count}"]
        if payload.get("farthest"):
            lines += payload["farthest"]
        csv = ["level,count"] + [f"{k},{c}" for k, c in enumerate(rep.level_counts)]
        return payload, lines, csv

    if cmd == "histogram":
        counts = cayley.distance_histogram(args.n, args.m, memory_cap=cap)
        payload = {
            "n": args.n,
            "m": args.m,
            "delta": len(counts) - 1,
            "level_counts": list(counts),
        }
        lines = [f"delta {len(counts) - 1}"] + [
            f"level {k}: {c}" for k, c in enumerate(counts)
        ]
        csv = ["level,count"] + [f"{k},{c}" for k, c in enumerate(counts)]
        return payload, lines, csv

    if cmd == "table":
        cells = []
        cache: dict = {}
        for n in range(2, args.n_max + 1):
            for m in range(1, n):
                value, source = _exact_delta(n, m, cap, cache)
                cells.append({"n": n, "m": m, "delta": value, "source": source})
        payload = {"n_max": args.n_max, "cells": cells}
        width = 4
        header = "n\\m " + "".join(f"{m:>{width}}" for m in range(1, args.n_max))
        lines = [header]
        for n in range(2, args.n_max + 1):
            row = f"{n:<4}"
            for m in range(1, args.n_max):
                cell = next((c for c in cells if c["n"] == n and c["m"] == m), None)
                row += f"{cell['delta']:>{width}}" if cell else " " * width
            lines.append(row)
        csv = ["n,m,delta,source"] + [
            f"{c['n']},{c['m']},{c['delta']},{c['source']}" for c in cells
        ]
        return payload, lines, csv

    if cmd == "bounds":
        b = extremal.delta_bounds(args.n, args.m)
        payload = {
            "n": b.n,
            "m": b.m,
            "lower": b.lower,
            "upper": b.upper,
            "exact": b.exact,
            "lower_method": b.lower_method,
            "upper_method": b.upper_method,
        }
        word = "exact" if b.exact else "bounds"
        return payload, [f"{word} {b.lower}..{b.upper} (upper via {b.upper_method})"], []

    if cmd == "extremal":
        if args.extremal_cmd == "gen":
            perms = [format_one_line(p) for p in extremal.enumerate_extremal(args.n, args.m)]
            payload = {"n": args.n, "m": args.m, "count": len(perms), "perms": perms}
            return payload, [f"count {len(perms)}"] + perms, ["perm"] + perms
        p = _perm_arg(args)
        case = extremal.is_extremal(p, args.m)
        payload = {
            "perm": format_one_line(p),
            "n": p.n,
            "m": args.m,
            "tag": case.tag.value,
            "d": case.d,
            "pairs": [list(x) for x in case.pairs],
            "special": list(case.special) if case.special else None,
            "core": list(case.core) if case.core else None,
        }
        return payload, [f"tag {case.tag.value}"], []

    if cmd == "amida":
        if args.amida_cmd == "apply":
            with open(args.ladder, encoding="utf-8") as fh:
                ladder = amidakuji.parse_ladder(fh.read())
            p = amidakuji.apply_ladder(ladder)
            payload = {"n": ladder.n, "perm": format_one_line(p)}
            return payload, [format_one_line(p)], []
        if args.amida_cmd == "solve":
            p = _perm_arg(args)
            ladder = amidakuji.synthesize(p)
            text = amidakuji.format_ladder(ladder)
            payload = {
                "perm": format_one_line(p),
                "n": ladder.n,
                "rungs": ladder.rung_count(),
                "levels": [list(level) for level in ladder.levels],
                "ladder": text,
            }
            lines = [f"rungs {ladder.rung_count()}", text.rstrip("\n")]
            if args.render:
                picture = amidakuji.render(ladder)
                payload["render"] = picture
                lines.append(picture)
            return payload, lines, []
        with open(args.ladder, encoding="utf-8") as fh:
            ladder = amidakuji.parse_ladder(fh.read())
        bad = amidakuji.validate(ladder)
        payload = {
            "n": ladder.n,
            "ok": bad is None,
            "violation": None
            if bad is None
            else {"level": bad.level, "column": bad.column, "reason": bad.reason},
        }
        line = "ok" if bad is None else f"violation: level {bad.level} column {bad.column}: {bad.reason}"
        return payload, [line], []

    raise AssertionError(f"unhandled command {cmd}")


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    try:
        payload, lines, csv = run(args)
    except cayley.MemoryCapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal violation: {exc}", file=sys.stderr)
        return 1
    fmt = getattr(args, "format", "text")
    if fmt == "json":
        doc = {
            "schema": SCHEMA,
            "command": args.command,
            "inputs": {
                k: v
                for k, v in sorted(vars(args).items())
                if k not in ("command", "format", "memory_cap")
                and not k.startswith("_")
                and v is not None
            },
            "result": payload,
            "tool_version": __version__,
            "codec_version": CODEC_VERSION,
            "elapsed_seconds": round(time.perf_counter() - t0, 6),
        }
        print(json.dumps(doc, sort_keys=True))
    elif fmt == "csv":
        if not csv:
            print("error: no CSV form for this command", file=sys.stderr)
            return 2
        print("\n".join(csv))
    else:
        print("\n".join(lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
