"""Command line: ``cpbounds {order,vp,verify,estimate,cp,orbital}``.

Exit codes: 0 when every check holds, 1 on any violation, 2 on usage or
parse errors.  ``--json`` prints one record per line (header, records,
summary); ``--csv`` prints one row per record.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

from cpbounds import __version__, affine, bounds, catalog
from cpbounds.arith import DomainError, is_prime, vp
from cpbounds.config import SweepConfig, load_config
from cpbounds.cp import cp_nonabelian, cp_value, factor_order
from cpbounds.parsing import ParseError, parse_factor_list, parse_group

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from exc


def _add_format_flags(sp):
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="one JSON record per line")
    fmt.add_argument("--csv", action="store_true", help="CSV rows")


def _add_sweep_flags(sp):
    sp.add_argument("--config", metavar="FILE", help="key=value sweep configuration file")
    sp.add_argument("--p-max", type=int)
    sp.add_argument("--r-set", type=_int_list, help="field sizes for classical and exceptional sweeps")
    sp.add_argument("--m-max", type=int)
    sp.add_argument("--alt-m-max", type=int)
    sp.add_argument("--r-max", type=int, help="upper r for the inline and factorization sweeps")
    sp.add_argument("--inline-m-max", type=int)
    sp.add_argument("--jobs", type=int, help="worker processes for sweeps")
    sp.add_argument("--verbose", action="store_true", help="print every record in table output")
    _add_format_flags(sp)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpbounds", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"cpbounds {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("order", help="exact order of a simple group and its factored form")
    sp.add_argument("group")
    _add_format_flags(sp)

    sp = sub.add_parser("vp", help="p-adic valuation of an integer or of a group order")
    sp.add_argument("p", type=int)
    sp.add_argument("n", help="positive integer or group name")

    sp = sub.add_parser("verify", help="run inequality sweeps")
    sp.add_argument("check", choices=bounds.CHECKS + ("all",))
    _add_sweep_flags(sp)

    sp = sub.add_parser("estimate", help="empirical suprema of the implicit constants")
    _add_sweep_flags(sp)

    sp = sub.add_parser("cp", help="c_p and nonabelian c_p of a composition-factor list")
    sp.add_argument("factors", help='e.g. "C2, C2, A5, L(2,7), X(name=M11, order=7920, chars=)"')
    sp.add_argument("p", type=int)
    _add_format_flags(sp)

    sp = sub.add_parser("orbital", help="orbital-graph diameters of an affine group")
    sp.add_argument("spec", nargs="?", help="spec file: 'p n' then one generator per line")
    sp.add_argument("--corpus", action="store_true", help="run the built-in irreducible corpus")
    sp.add_argument("--orbit", default="all", help="'all' or a representative vector such as 1,0")
    cpg = sp.add_mutually_exclusive_group()
    cpg.add_argument("--cp", type=int, dest="cp_int", help="c_p(H) as an integer")
    cpg.add_argument("--factors", help="composition factors of H, routed through c_p")
    sp.add_argument("--undirected", action="store_true", help="also report S u -S diameters")
    sp.add_argument("--cap", type=int, default=affine.DEFAULT_CAP, help="vertex cap for p^n")
    _add_format_flags(sp)
    return parser


def _config_from(args) -> SweepConfig:
    overrides = {
        "p_max": args.p_max,
        "m_max": args.m_max,
        "alt_m_max": args.alt_m_max,
        "inline_r_max": args.r_max,
        "factorization_r_max": args.r_max,
        "inline_m_max": args.inline_m_max,
        "jobs": args.jobs,
    }
    if args.r_set is not None:
        overrides["classical_r_set"] = args.r_set
        overrides["exceptional_r_set"] = args.r_set
    try:
        return load_config(args.config, **overrides)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------- output


def _json_default(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if x == math.inf:
        return "inf"
    return str(x)


def _dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, default=_json_default)


def _emit(out, header: dict, records: list[dict], summary: dict, fmt: str, table) -> None:
    if fmt == "json":
        out.write(_dumps(header) + "\n")
        for rec in records:
            out.write(_dumps(rec) + "\n")
        out.write(_dumps(summary) + "\n")
    elif fmt == "csv":
        columns = sorted({k for rec in records for k in rec})
        writer = csv.DictWriter(out, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for rec in records:
            writer.writerow({k: _csv_cell(rec.get(k)) for k in columns})
    else:
        table(out)


def _csv_cell(v):
    if isinstance(v, (dict, list)):
        return _dumps(v)
    return "" if v is None else v


def _fmt(args) -> str:
    return "json" if getattr(args, "json", False) else "csv" if getattr(args, "csv", False) else "table"


def _summary(holds: list) -> dict:
    return {
        "type": "summary",
        "checked": len(holds),
        "held": sum(h is True for h in holds),
        "violated": sum(h is False for h in holds),
        "skipped": sum(h is None for h in holds),
    }


def _header(command: str, **extra) -> dict:
    return {"type": "header", "tool": "cpbounds", "version": __version__, "command": command, **extra}


# ---------------------------------------------------------------- commands


def _poly_text(poly) -> str:
    parts = []
    for c, e in poly:
        mono = "1" if e == 0 else "r" if e == 1 else f"r^{e}"
        if c < 0:
            parts.append(f"-{mono}" if c == -1 else f"-{-c}*{mono}")
        else:
            term = mono if c == 1 else f"{c}*{mono}"
            parts.append(f"+{term}" if parts else term)
    return "".join(parts)


def cmd_order(args, out) -> int:
    g = parse_group(args.group)
    n = catalog.order(g)
    rec = {"type": "order", "group": str(g), "order": n}
    if g.is_lie_type:
        fo = catalog.factored_order(g)
        p, k = catalog.prime_power(g.r)
        rec.update(
            char_part=f"{g.r}^{fo.char_exponent}",
            char_part_prime=f"{p}^{k * fo.char_exponent}",
            factors=[{"poly": _poly_text(f), "value": catalog.evaluate(f, g.r)} for f in fo.factors],
            divisor=fo.divisor,
        )
    else:
        rec.update(formula=f"{g.m}!/2")

    def table(o):
        o.write(f"{g}\norder: {n}\n")
        if g.is_lie_type:
            vals = " * ".join(f"({f['value']})" for f in rec["factors"])
            o.write(f"characteristic part: {rec['char_part']} = {rec['char_part_prime']}\n")
            for f in rec["factors"]:
                o.write(f"  factor {f['poly']} = {f['value']}\n")
            o.write(f"divisor d: {fo.divisor}\n")
            o.write(f"breakdown: {rec['char_part_prime']} * {vals} / {fo.divisor}\n")
        else:
            o.write(f"breakdown: {g.m}!/2\n")

    _emit(out, _header("order"), [rec], _summary([]), _fmt(args), table)
    return EXIT_OK


def cmd_vp(args, out) -> int:
    try:
        n = int(args.n)
        label = str(n)
    except ValueError:
        g = parse_group(args.n)
        n, label = catalog.order(g), f"|{g}|"
    if n < 1:
        raise UsageError("N must be positive")
    if not is_prime(args.p):
        raise UsageError(f"{args.p} is not prime")
    out.write(f"v_{args.p}({label}) = {vp(args.p, n)}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    config = _config_from(args)
    reports = bounds.run_checks(args.check, config)
    records = [r.to_dict() for r in reports]
    summary = _summary([r.holds for r in reports])

    def table(o):
        o.write(f"{'check':<16}{'anchor':<38}{'checked':>9}{'held':>9}{'violated':>9}{'skipped':>9}\n")
        for name in bounds.CHECKS:
            sel = [r for r in reports if r.check == name]
            if not sel:
                continue
            s = _summary([r.holds for r in sel])
            o.write(f"{name:<16}{bounds.ANCHORS[name]:<38}{s['checked']:>9}{s['held']:>9}"
                    f"{s['violated']:>9}{s['skipped']:>9}\n")
        shown = reports if args.verbose else [r for r in reports if r.holds is False]
        for r in shown:
            status = {True: "holds", False: "VIOLATED", None: "n/a"}[r.holds]
            o.write(f"  {r.check:<14} {r.subject:<24} p={r.p} v={r.valuation} {r.bound}: {status}\n")
        o.write(f"total: {summary['checked']} checked, {summary['held']} held, "
                f"{summary['violated']} violated, {summary['skipped']} skipped\n")

    _emit(out, _header("verify", check=args.check, config=config.as_dict()), records, summary, _fmt(args), table)
    return EXIT_VIOLATION if summary["violated"] else EXIT_OK


def cmd_estimate(args, out) -> int:
    config = _config_from(args)
    estimates = bounds.estimate_constants(config)
    records = [e.to_dict() for e in estimates]

    def table(o):
        o.write(f"{'quantity':<42}{'supremum':>14}{'~':>12}  witness\n")
        for e in estimates:
            o.write(f"{e.quantity:<42}{str(e.supremum):>14}{float(e.supremum):>12.4f}  {e.witness}\n")

    summary = {"type": "summary", "checked": len(records), "held": 0, "violated": 0, "skipped": 0}
    _emit(out, _header("estimate", config=config.as_dict()), records, summary, _fmt(args), table)
    return EXIT_OK


def cmd_cp(args, out) -> int:
    if not is_prime(args.p):
        raise UsageError(f"{args.p} is not prime")
    factors = parse_factor_list(args.factors)
    from cpbounds.cp import characteristic_set

    rows = [
        {
            "factor": repr(f),
            "order": factor_order(f),
            "vp": vp(args.p, factor_order(f)),
            "lie_characteristics": sorted(characteristic_set(f)),
        }
        for f in factors
    ]
    rec = {
        "type": "cp",
        "p": args.p,
        "cp": cp_value(factors, args.p),
        "cp_nonabelian": cp_nonabelian(factors, args.p),
        "factors": rows,
        "alt6_convention": "Alt(6) carries characteristic 3 only",
    }

    def table(o):
        o.write(f"c_{args.p} = {rec['cp']}\nnonabelian c_{args.p} = {rec['cp_nonabelian']}\n")

    _emit(out, _header("cp"), [rec], _summary([]), _fmt(args), table)
    return EXIT_OK


def _parse_vector(text: str, n: int) -> tuple[int, ...]:
    try:
        vec = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError as exc:
        raise UsageError(f"bad orbit representative {text!r}") from exc
    if len(vec) != n:
        raise UsageError(f"orbit representative needs {n} coordinates")
    return vec


def _orbital_records(name: str, spec, orbit_sel: str, cp: int | None, undirected: bool) -> tuple[dict, list]:
    irreducible = affine.is_irreducible(spec)
    if orbit_sel == "all":
        orbits = affine.orbits_on_nonzero(spec)
    else:
        orbits = [affine.orbit_of(spec, _parse_vector(orbit_sel, spec.n))]
    results = []
    for orb in orbits:
        res = affine.check_bounds(spec, orb, cp, undirected=undirected)
        res.extra = {"spec": name, "irreducible": irreducible}
        results.append(res)
    info = {"spec": name, "p": spec.p, "n": spec.n, "irreducible": irreducible, "orbits": len(orbits)}
    return info, results


def cmd_orbital(args, out) -> int:
    from cpbounds.corpus import build_corpus

    if args.corpus == bool(args.spec):
        raise UsageError("give exactly one of SPEC or --corpus")
    jobs = []
    if args.corpus:
        for e in build_corpus():
            cp = cp_value(parse_factor_list(e.factors), e.spec.p) if e.factors else 0
            jobs.append((e.name, e.spec, cp))
    else:
        try:
            spec = affine.parse_spec_text(Path(args.spec).read_text(), cap=args.cap)
        except OSError as exc:
            raise UsageError(str(exc)) from exc
        cp = args.cp_int
        if args.factors is not None:
            cp = cp_value(parse_factor_list(args.factors), spec.p)
        jobs.append((args.spec, spec, cp))
    infos, results = [], []
    for name, spec, cp in jobs:
        info, res = _orbital_records(name, spec, args.orbit, cp, args.undirected)
        infos.append(info)
        results.extend(res)
    bad = [
        r for r in results
        if not r.ms_bound_holds and r.extra["irreducible"]
    ]
    holds = [r.ms_bound_holds if r.extra["irreducible"] else None for r in results]
    records = [r.to_dict() for r in results]

    def table(o):
        for info in infos:
            o.write(f"{info['spec']}: p={info['p']} n={info['n']} irreducible={info['irreducible']} "
                    f"orbits={info['orbits']}\n")
        w = max([len(r.extra["spec"]) for r in results] + [4]) + 2
        o.write(f"{'spec':<{w}}{'representative':<20}{'size':>8}{'diam':>6}{'(p-1)n':>8}  holds  ratio\n")
        for r in results:
            d = "inf" if r.diameter == math.inf else int(r.diameter)
            ratio = "-" if r.corollary_ratio is None else str(r.corollary_ratio)
            extra = ""
            if r.undirected_diameter is not None:
                extra = f"  undirected={r.undirected_diameter}"
            o.write(f"{r.extra['spec']:<{w}}{str(r.orbit_representative):<20}{r.orbit_size:>8}{d:>6}"
                    f"{r.ms_bound:>8}  {str(r.ms_bound_holds):<5}  {ratio}{extra}\n")

    _emit(out, _header("orbital", specs=infos), records, _summary(holds), _fmt(args), table)
    return EXIT_VIOLATION if bad else EXIT_OK


COMMANDS = {
    "order": cmd_order,
    "vp": cmd_vp,
    "verify": cmd_verify,
    "estimate": cmd_estimate,
    "cp": cmd_cp,
    "orbital": cmd_orbital,
}


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ParseError, DomainError, ValueError) as exc:
        sys.stderr.write(f"cpbounds {args.command}: {exc}\n")
        return EXIT_USAGE


def run() -> None:
    try:
        code = main()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)
