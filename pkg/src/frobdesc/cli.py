"""Command line interface.

Exit codes: 0 success, 1 property failure, 2 usage or parse error, 3 resource
limit.  Output is either a plain table or a single line of JSON; both are
deterministic for fixed flags and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields, replace
from typing import List, Optional, Sequence

from . import diffops, groebner
from .diffops import SizeGuardError
from .frobenius import decompose, root_ideal
from .groebner import Ideal, ResourceLimitError
from .localization import (
    DEFAULT_E_MAX,
    DEFAULT_N_MAX,
    FracSubmodule,
    HypothesisError,
    LocalizedElement,
    chain_report,
    generation_witness,
    is_unit_submodule,
    root_check,
)
from .polynomials import ParseError, RingContext, is_prime
from .verify import SUITES

EXIT_OK, EXIT_PROPERTY, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

CONFIG_ENV = "FROBDESC_CONFIG"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    p: int = 2
    variables: tuple = ("x",)
    e: int = 1
    e_max: int = DEFAULT_E_MAX
    n_max: int = DEFAULT_N_MAX
    size_guard: int = 81
    max_spairs: int = 200_000
    max_degree: int = 100_000
    output: str = "table"
    seed: int = 0

    def validate(self) -> "CliConfig":
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise UsageError(f"p must be prime, got {self.p}")
        if self.e < 0:
            raise UsageError("--e must be >= 0")
        if self.e_max < 1 or self.n_max < 1:
            raise UsageError("--e-max and --n-max must be >= 1")
        if self.size_guard < 1 or self.max_spairs < 1 or self.max_degree < 1:
            raise UsageError("resource bounds must be positive")
        if self.output not in ("table", "json"):
            raise UsageError(f"output must be 'table' or 'json', got {self.output!r}")
        try:
            RingContext(self.p, self.variables)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return self

    @property
    def ctx(self) -> RingContext:
        return RingContext(self.p, self.variables)


def load_config(path: Optional[str]) -> CliConfig:
    if not path:
        return CliConfig()
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    known = {f.name for f in fields(CliConfig)}
    unknown = set(data) - known
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    if "variables" in data:
        v = data["variables"]
        data["variables"] = tuple(v.split(",") if isinstance(v, str) else v)
    return replace(CliConfig(), **data)


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int)
    parser.add_argument("--vars", help="comma separated variable names")
    parser.add_argument("--e", type=int)
    parser.add_argument("--e-max", type=int, dest="e_max")
    parser.add_argument("--n-max", type=int, dest="n_max")
    parser.add_argument("--json", action="store_true")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--size-guard", type=int, dest="size_guard")
    parser.add_argument("--max-spairs", type=int, dest="max_spairs")
    parser.add_argument("--max-degree", type=int, dest="max_degree")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frobdesc", description="Frobenius descent computations over F_p[x1..xn].")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="Frobenius decomposition f = sum g_a^(p^e) x^a")
    _common(p)
    p.add_argument("poly")

    p = sub.add_parser("root-ideal", help="p^e-th root ideal of an ideal")
    _common(p)
    p.add_argument("generators", nargs="+")

    p = sub.add_parser("chain", help="chain of D^(e) f^-1 with root ideals and witnesses")
    _common(p)
    p.add_argument("f")

    p = sub.add_parser("witness", help="least level e with f^-N in D^(e) f^-1")
    _common(p)
    p.add_argument("f")
    p.add_argument("--N", type=int, required=True)

    p = sub.add_parser("unit-check", help="is I*f^-t a unit submodule of R_f?")
    _common(p)
    p.add_argument("generators", nargs="+", help="generators of I")
    p.add_argument("--f", required=True)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--depth", type=int, default=4)

    p = sub.add_parser("root-check", help="check that generators g:k (meaning g/f^k) span a root of R_f")
    _common(p)
    p.add_argument("generators", nargs="*", default=["1:1"])
    p.add_argument("--f", required=True)

    p = sub.add_parser("verify", help="run seeded property suites")
    _common(p)
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--n", type=int, default=1)
    return parser


def resolve_config(args) -> CliConfig:
    cfg = load_config(os.environ.get(CONFIG_ENV))
    updates = {}
    for name in ("p", "e", "e_max", "n_max", "seed", "size_guard", "max_spairs", "max_degree"):
        value = getattr(args, name, None)
        if value is not None:
            updates[name] = value
    if args.vars:
        updates["variables"] = tuple(v.strip() for v in args.vars.split(","))
    if args.json:
        updates["output"] = "json"
    return replace(cfg, **updates).validate()


def _emit(cfg: CliConfig, payload: dict, rows: List[Sequence[str]], out) -> None:
    if cfg.output == "json":
        out.write(json.dumps(payload, separators=(",", ":")) + "\n")
        return
    ncols = max((len(r) for r in rows), default=0)
    widths = [max((len(str(r[i])) for r in rows if len(r) > i + 1), default=0) for i in range(ncols)]
    for row in rows:
        cells = [str(c).ljust(widths[i]) if i < len(row) - 1 else str(c) for i, c in enumerate(row)]
        out.write("  ".join(cells) + "\n")


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def cmd_decompose(cfg, args, out) -> int:
    if cfg.e < 1:
        raise UsageError("--e must be >= 1 for decompose")
    d = decompose(cfg.ctx.parse(args.poly), cfg.e)
    payload = d.to_json()
    rows = [(label, g) for label, g in payload["coeffs"].items()]
    _emit(cfg, payload, rows, out)
    return EXIT_OK


def cmd_root_ideal(cfg, args, out) -> int:
    if cfg.e < 1:
        raise UsageError("--e must be >= 1 for root-ideal")
    J = Ideal.from_strings(cfg.ctx, args.generators)
    I = root_ideal(J, cfg.e)
    payload = {"e": cfg.e, "ideal": J.to_json(), "rootIdeal": I.to_json()}
    _emit(cfg, payload, [("ideal", ", ".join(payload["ideal"])), ("rootIdeal", ", ".join(payload["rootIdeal"]))], out)
    return EXIT_OK


def cmd_chain(cfg, args, out) -> int:
    report = chain_report(cfg.ctx.parse(args.f), cfg.e_max, cfg.n_max)
    payload = report.to_json()
    rows = [("e", "rootIdeal", "containsNext", "equalsNext")]
    for lv in payload["levels"]:
        rows.append((lv["e"], "(" + ", ".join(lv["rootIdeal"]) + ")", _fmt(lv["containsNext"]), _fmt(lv["equalsNext"])))
    rows.append(("levelSummary", _fmt(payload["levelSummary"])))
    rows.append(("witnesses", " ".join(f"{n}:{_fmt(e)}" for n, e in payload["witnesses"].items())))
    rows.append(("exhausted", _fmt(payload["exhausted"])))
    _emit(cfg, payload, rows, out)
    return EXIT_OK


def cmd_witness(cfg, args, out) -> int:
    if args.N < 1:
        raise UsageError("--N must be >= 1")
    f = cfg.ctx.parse(args.f)
    w = generation_witness(f, args.N, cfg.e_max)
    payload = {
        "f": str(f),
        "p": cfg.p,
        "N": args.N,
        "e": w.level,
        "exhausted": w.exhausted,
        "attempts": [[e, ok] for e, ok in w.attempts],
        "reverified": w.reverified,
    }
    rows = [("N", args.N), ("e", _fmt(w.level)), ("exhausted", _fmt(w.exhausted))]
    _emit(cfg, payload, rows, out)
    return EXIT_OK


def cmd_unit_check(cfg, args, out) -> int:
    ctx = cfg.ctx
    f = ctx.parse(args.f)
    if f.is_zero():
        raise UsageError("--f must be nonzero")
    M = FracSubmodule(f, Ideal.from_strings(ctx, args.generators), args.t)
    try:
        cert = is_unit_submodule(M, args.depth)
    except HypothesisError as exc:
        raise UsageError(f"hypothesis M in F^*M fails: {exc}") from None
    payload = cert.to_json()
    rows = [("kind", cert.kind)]
    for i, m in enumerate(cert.chain):
        rows.append((f"M{i}", str(m)))
    for i, w in enumerate(cert.witnesses):
        rows.append((f"strict{i}", str(w)))
    _emit(cfg, payload, rows, out)
    return EXIT_OK


def _parse_fraction(ctx, f, text: str) -> LocalizedElement:
    num, _, k = text.rpartition(":") if ":" in text else (text, "", "0")
    try:
        k = int(k)
    except ValueError:
        raise UsageError(f"bad generator {text!r}; expected g:k") from None
    return LocalizedElement(f, ctx.parse(num), k)


def cmd_root_check(cfg, args, out) -> int:
    ctx = cfg.ctx
    f = ctx.parse(args.f)
    if f.is_zero():
        raise UsageError("--f must be nonzero")
    gens = [_parse_fraction(ctx, f, g) for g in (args.generators or ["1:1"])]
    cert = root_check(gens, cfg.e_max, cfg.n_max)
    payload = cert.to_json()
    rows = [(k, _fmt(v)) for k, v in payload["clauses"].items()]
    rows.append(("passed", _fmt(cert.passed)))
    _emit(cfg, payload, rows, out)
    return EXIT_OK if cert.passed else EXIT_PROPERTY


def cmd_verify(cfg, args, out) -> int:
    if args.count < 0 or args.n < 1 or args.n > 3:
        raise UsageError("--count must be >= 0 and --n in 1..3")
    e = cfg.e if cfg.e >= 1 else 1
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        fn = SUITES[name]
        kwargs = dict(p=cfg.p, n=args.n, e=e, count=args.count, seed=cfg.seed)
        if name in ("morita", "orbit-oracle", "twist", "te"):
            kwargs["size_guard"] = cfg.size_guard
        results.append(fn(**kwargs))
    ok = all(r.ok for r in results)
    payload = {"seed": cfg.seed, "suites": [r.to_json() for r in results], "ok": ok}
    rows = [(r.name, f"{r.passed}/{r.total}", "pass" if r.ok else "FAIL") for r in results]
    for r in results:
        for fail in r.failures:
            rows.append((f"{r.name}:reproducer", json.dumps(fail, sort_keys=True)))
    _emit(cfg, payload, rows, out)
    return EXIT_OK if ok else EXIT_PROPERTY


COMMANDS = {
    "decompose": cmd_decompose,
    "root-ideal": cmd_root_ideal,
    "chain": cmd_chain,
    "witness": cmd_witness,
    "unit-check": cmd_unit_check,
    "root-check": cmd_root_check,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    saved = (groebner.LIMITS.max_spairs, groebner.LIMITS.max_degree, diffops.SIZE_GUARD)
    try:
        cfg = resolve_config(args)
        groebner.configure_limits(cfg.max_spairs, cfg.max_degree)
        diffops.configure_size_guard(cfg.size_guard)
        return COMMANDS[args.command](cfg, args, out)
    except (UsageError, ParseError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ResourceLimitError, SizeGuardError, OverflowError) as exc:
        err.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    finally:
        # in-process callers keep their own bounds
        groebner.configure_limits(saved[0], saved[1])
        diffops.configure_size_guard(saved[2])


if __name__ == "__main__":
    sys.exit(main())
