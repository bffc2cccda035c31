"""Command-line entry point.

Exit codes: 0 success, 1 parse or typing error, 2 a verification suite
failed, 3 bad invocation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import cps as C
from . import reduction as R
from . import target as T
from .cps import Kind
from .spectrum import CALCULI, EMBEDDINGS
from .surface import (
    ParseError, TokenStream, parse_expr, parse_type, parse_type_from, print_expr,
    print_type, to_json, type_to_json,
)
from .syntax import syntactic_class
from .typecheck import check_coterm_against, check_command, check_term, infer
from .unify import TypingError
from .verify import SUITES, GenConfig, run_suites

CALCULUS_NAMES = ["ljmse", "lambda", "lj", "ljm", "ljms"]
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": {"reason": "usage", "message": message}}), file=sys.stderr)
        sys.exit(3)


# ---------------------------------------------------------------- input helpers

def _source(args) -> str:
    if args.expr is not None:
        return args.expr
    if args.file is not None:
        return Path(args.file).read_text(encoding="utf-8")
    return sys.stdin.read()


def parse_ctx(src: str | None) -> dict:
    """Contexts are written x : A, y : B."""
    ctx = {}
    if not src:
        return ctx
    ts = TokenStream(src)
    while not ts.done():
        x = ts.ident()
        ts.expect(":")
        ctx[x] = parse_type_from(ts)
        if not ts.done():
            ts.expect(",")
    return ctx


def _parse_in(calculus: str, src: str, cls: str | None, level: str):
    if calculus == "ljmse":
        if cls:
            return parse_expr(src, cls, level)
        from .surface import parse_any
        return parse_any(src, level)
    mod = CALCULI[calculus]
    if cls in (None, "term"):
        return mod.parse(src)
    if calculus in ("ljm", "ljms") and cls == "coterm":
        return mod.parse(src, "coterm")
    raise UsageError(f"class {cls!r} does not exist in {calculus}")


def _show(calculus, e) -> str:
    return print_expr(e) if calculus == "ljmse" else CALCULI[calculus].show(e)


def _emit(args, text: str, payload: dict):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------- commands

def cmd_parse(args) -> int:
    e = _parse_in(args.calculus, _source(args), args.cls, args.level)
    payload = {"expr": _show(args.calculus, e)}
    if args.calculus == "ljmse":
        payload["class"] = syntactic_class(e)
        payload["ast"] = to_json(e)
    _emit(args, _show(args.calculus, e), payload)
    return 0


def cmd_check(args) -> int:
    ctx = parse_ctx(args.ctx)
    e = _parse_in(args.calculus, _source(args), args.cls, args.level)
    if args.calculus != "ljmse":
        mod = CALCULI[args.calculus]
        ty = mod.infer(ctx, e)
        if args.type is not None and not mod.check(ctx, e, parse_type(args.type)):
            raise TypingError("clash", (), "the given type does not fit")
        text = " -> ".join(map(print_type, ty)) if isinstance(ty, tuple) else print_type(ty)
        payload = {"type": text}
    elif args.type is not None:
        ty = parse_type(args.type)
        match syntactic_class(e):
            case "term":
                check_term(ctx, e, ty, args.level)
            case "command":
                check_command(ctx, e, ty, args.level)
            case _:
                if args.input_type is None:
                    raise UsageError("checking a co-term needs --input-type")
                check_coterm_against(ctx, e, parse_type(args.input_type), ty, args.level)
        payload = {"type": print_type(ty)}
    else:
        j = infer(ctx, e, args.level)
        payload = {"type": print_type(j.out_type)}
        if j.in_type is not None:
            payload["input"] = print_type(j.in_type)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(payload["type"] if "input" not in payload else f"{payload['input']} |- {payload['type']}")
    return 0


def _rules(spec: str | None):
    if not spec:
        return R.ALL_RULES
    return frozenset(R.Rule(r.strip()) for r in spec.split(","))


def cmd_reduce(args, final_only: bool = False) -> int:
    src = _source(args)
    if args.calculus != "ljmse":
        return _reduce_spectrum(args, src, final_only)
    e = _parse_in("ljmse", src, args.cls, args.level)
    tr = R.normalize(e, args.strategy, args.seed, args.max_steps, _rules(args.rules))
    if args.json:
        payload = tr.to_json() if not final_only else {"normal_form": to_json(tr.final), "status": tr.status,
                                                       "steps": len(tr.steps)}
        print(json.dumps(payload, sort_keys=True))
        return 0
    if final_only:
        print(print_expr(tr.final))
    else:
        print(print_expr(tr.initial))
        for s in tr.steps:
            print(f"  -> [{s.rule.value} @ {list(s.pos)}] {print_expr(s.after)}")
        if tr.status != "normal":
            print(f"  ({tr.status})")
    return 0


def _reduce_spectrum(args, src, final_only) -> int:
    import random
    mod = CALCULI[args.calculus]
    e = _parse_in(args.calculus, src, args.cls, args.level)
    rng = random.Random(args.seed)
    trace = [(None, None, e)]
    status = "normal"
    for _ in range(args.max_steps):
        options = mod.steps(e)
        if not options:
            break
        st = options[0] if args.strategy == "leftmost" else rng.choice(options)
        e = st.after
        trace.append((st.rule, st.pos, e))
    else:
        if mod.steps(e):
            status = "bound-exhausted"
    if args.json:
        print(json.dumps({
            "initial": mod.show(trace[0][2]),
            "steps": [{"rule": r, "pos": list(p), "to": mod.show(t)} for r, p, t in trace[1:]],
            "status": status,
        }, sort_keys=True))
        return 0
    if final_only:
        print(mod.show(e))
        return 0
    print(mod.show(trace[0][2]))
    for r, p, t in trace[1:]:
        print(f"  -> [{r} @ {list(p)}] {mod.show(t)}")
    return 0


def cmd_translate(args) -> int:
    kind = Kind(args.kind)
    source = C.SOURCE[kind]
    src = _source(args)
    e = _parse_in(source, src, args.cls, args.level)
    out = {}
    if args.emit in ("term", "both"):
        img = C.translate(e, kind)
        out["term"] = T.print_lam(img, abbrev=args.abbrev)
    if args.emit in ("type", "both"):
        if args.type is not None:
            ty = parse_type(args.type)
        elif source == "ljmse":
            ty = infer(parse_ctx(args.ctx), e).out_type
        else:
            ty = CALCULI[source].infer(parse_ctx(args.ctx), e)
        out["type"] = print_type(C.bar_type(ty, kind))
    if args.json:
        print(json.dumps(out, sort_keys=True))
    else:
        for k in ("term", "type"):
            if k in out:
                print(out[k])
    return 0


_NEXT = {"lambda": "lj", "lj": "ljm", "ljm": "ljms", "ljms": "ljmse"}


def cmd_embed(args) -> int:
    src = args.from_
    goal = _NEXT[src] if args.to == "next" else args.to
    order = list(_NEXT) + ["ljmse"]
    if goal not in order or order.index(goal) <= order.index(src):
        raise UsageError(f"cannot embed {src} into {goal}")
    e = _parse_in(src, _source(args), args.cls, args.level)
    cur = src
    while cur != goal:
        nxt = _NEXT[cur]
        e = EMBEDDINGS[(cur, nxt)](e)
        cur = nxt
    _emit(args, _show(goal, e), {"calculus": goal, "expr": _show(goal, e)})
    return 0


def cmd_verify(args) -> int:
    names = [n.strip() for n in args.suite.split(",")]
    for n in names:
        if n != "all" and n not in SUITES:
            raise UsageError(f"unknown suite {n!r}")
    cfg = GenConfig(seed=args.seed, count=args.count, max_size=args.max_size)
    reports = run_suites(names, cfg)
    for rep in reports:
        rep.allow_inconclusive = args.allow_inconclusive
    if args.golden:
        for rep in reports:
            path = Path(args.golden) / rep.suite / f"{args.seed}.json"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(rep.to_json(), sort_keys=True, indent=1) + "\n", encoding="utf-8")
    if args.json:
        print(json.dumps([r.to_json(args.timing) for r in reports], sort_keys=True))
    else:
        for r in reports:
            line = r.summary()
            if args.timing:
                line += f" ({r.wall_time:.1f}s)"
            print(line)
            for f in r.failures[:5]:
                print("   ", json.dumps(f, sort_keys=True))
    return 0 if all(r.passed for r in reports) else 2


def cmd_peaks(args) -> int:
    rows = []
    for e, a, b in R.critical_peaks(args.depth, args.seed, args.per_family):
        res = R.join(a.after, b.after, args.max_steps)
        rows.append({
            "term": print_expr(e), "family": R.peak_family(a, b),
            "left": print_expr(a.after), "right": print_expr(b.after),
            "joined": res.joined, "steps": [res.left_steps, res.right_steps], "method": res.method,
        })
    if args.json:
        print(json.dumps(rows, sort_keys=True))
    else:
        for r in rows:
            mark = "joined" if r["joined"] else "NOT JOINED"
            print(f"{r['family']:<12} {mark:<10} {r['steps']} {r['term']}")
    return 0 if all(r["joined"] for r in rows) else 2


# ---------------------------------------------------------------- argument parsing

def _read_config(path: str | None) -> dict:
    """key = value lines; '#' starts a comment."""
    if not path:
        return {}
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"bad config line {line!r}")
        k, v = (p.strip() for p in line.split("=", 1))
        out[k.replace("-", "_")] = v.strip('"')
    return out


def _default_seed() -> int:
    env = os.environ.get("LJMSE_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"LJMSE_SEED must be an integer, got {env!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ljmse", description="Sequent-calculus workbench: reduction, typing, CPS/CGPS translations.")
    p.add_argument("--config", help="key=value file with defaults for the options")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(sp, calculus=True):
        sp.add_argument("-e", "--expr", help="inline source text")
        sp.add_argument("-f", "--file", help="read the source from a file")
        if calculus:
            sp.add_argument("--calculus", choices=CALCULUS_NAMES, default="ljmse")
        sp.add_argument("--class", dest="cls", choices=["term", "coterm", "command"])
        sp.add_argument("--level", choices=["prop", "second"], default="second")
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("parse", help="parse and print canonically")
    with_input(sp)
    sp.set_defaults(run=cmd_parse)

    sp = sub.add_parser("check", help="infer or check a type")
    with_input(sp)
    sp.add_argument("--ctx", help="context, e.g. 'x : X->Y, y : X'")
    sp.add_argument("--type", help="check against this type instead of inferring")
    sp.add_argument("--input-type", help="input type when checking a co-term")
    sp.set_defaults(run=cmd_check)

    for name, final in (("reduce", False), ("normalize", True)):
        sp = sub.add_parser(name, help="print a reduction trace" if not final else "print the normal form")
        with_input(sp)
        sp.add_argument("--strategy", choices=["leftmost", "random"], default="leftmost")
        sp.add_argument("--max-steps", type=int, default=10_000)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--rules", help="comma-separated subset of beta,pi,sigma,mu,eps,beta2")
        sp.set_defaults(run=(lambda a, f=final: cmd_reduce(a, f)))

    sp = sub.add_parser("translate", help="CPS or CGPS image of a term")
    with_input(sp, calculus=False)
    sp.add_argument("--kind", choices=[k.value for k in Kind], default="cgps")
    sp.add_argument("--emit", choices=["term", "type", "both"], default="term")
    sp.add_argument("--type", help="source type for --emit type (inferred otherwise)")
    sp.add_argument("--ctx", help="context used when inferring the source type")
    sp.add_argument("--abbrev", action="store_true", help="print the garbage successor as s")
    sp.set_defaults(run=cmd_translate)

    sp = sub.add_parser("embed", help="embed a term into a richer calculus")
    with_input(sp, calculus=False)
    sp.add_argument("--from", dest="from_", choices=list(_NEXT), required=True)
    sp.add_argument("--to", default="next", choices=["next", "lj", "ljm", "ljms", "ljmse"])
    sp.set_defaults(run=cmd_embed)

    sp = sub.add_parser("verify", help="run property suites")
    sp.add_argument("--suite", default="all", help="all or a comma-separated list of: " + ", ".join(SUITES))
    sp.add_argument("--seed", type=int)
    sp.add_argument("--count", type=int, default=500)
    sp.add_argument("--max-size", type=int, default=12)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    sp.add_argument("--allow-inconclusive", action="store_true")
    sp.add_argument("--golden", help="write reports to DIR/<suite>/<seed>.json")
    sp.set_defaults(run=cmd_verify)

    sp = sub.add_parser("peaks", help="critical-pair instances and their joins")
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--per-family", type=int, default=3)
    sp.add_argument("--max-steps", type=int, default=10)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(run=cmd_peaks)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _read_config(args.config)
        for k, v in config.items():
            default = parser._subparsers._group_actions[0].choices[args.command].get_default(k)
            if getattr(args, k, None) == default:
                setattr(args, k, type(default)(v) if default is not None and not isinstance(default, bool)
                        else (v.lower() in ("1", "true", "yes") if isinstance(default, bool) else v))
        if getattr(args, "seed", None) is None and hasattr(args, "seed"):
            args.seed = _default_seed()
        return args.run(args)
    except UsageError as ex:
        print(json.dumps({"error": {"reason": "usage", "message": str(ex)}}), file=sys.stderr)
        return 3
    except ParseError as ex:
        print(json.dumps({"error": {"reason": "parse", "offset": ex.offset, "message": ex.msg}}), file=sys.stderr)
        return 1
    except TypingError as ex:
        print(json.dumps(ex.to_json(), sort_keys=True), file=sys.stderr)
        return 1
    except (OSError, ValueError) as ex:
        print(json.dumps({"error": {"reason": "input", "message": str(ex)}}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
