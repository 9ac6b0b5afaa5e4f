"""Command-line entry point.

Exit status: 0 when every check passes, 1 on a violation or failed
identity, 2 on usage errors (including degrees that admit no primitive
solvable group), 3 when a budget or cap stops the run; the report is then
marked ``partial``.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from dataclasses import dataclass, field

from . import affine, group, hurwitz, monodromy, surface
from .hurwitz import fraction_str
from .report import FORMATS, render

FORMAT_ENV = "SOLVCOVER_FORMAT"

SECTION2_COLUMNS = ["degree", "flavor", "order", "p", "k", "bound", "mersenne",
                    "max_fixed_points", "witness", "structure_ok", "exhaustive", "violation"]
BOUND_COLUMNS = ["d", "p", "k", "l", "target", "genus", "bound_exact", "bound_floor"]


class UsageError(Exception):
    pass


class BudgetStop(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    fmt: str = "table"
    output: str | None = None

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}")
        for key in ("budget", "dmax", "limit"):
            v = self.params.get(key)
            if v is not None and v <= 0:
                raise UsageError(f"--{key} must be positive")

    def echo(self) -> dict:
        out = dict(self.params)
        out["element_cap"] = group.DEFAULT_CAP
        out["format"] = self.fmt
        return out


def _report(cfg: RunConfig, columns, rows, summary) -> dict:
    return {"command": cfg.command, "config": cfg.echo(), "columns": columns,
            "rows": rows, "summary": summary}


def _section2_rows(rows) -> list[dict]:
    return [r.as_dict() for r in rows]


def cmd_verify_section2(cfg: RunConfig):
    p = cfg.params
    rep = affine.verify_section2(p["dmax"], include_seeded=p["include_16"])
    summary = {
        "degrees": rep.degrees,
        "empty_degrees": rep.empty_degrees,
        "groups": len(rep.rows),
        "violations": len(rep.violations),
    }
    return _report(cfg, SECTION2_COLUMNS, _section2_rows(rep.rows), summary), int(bool(rep.violations))


def cmd_census(cfg: RunConfig):
    d = cfg.params["degree"]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", affine.NonExhaustiveWarning)
        rows = affine.census_rows(d)
    exhaustive = all(r.exhaustive for r in rows) if rows else affine.census_is_exhaustive(d)
    summary = {"degree": d, "groups": len(rows), "exhaustive": exhaustive,
               "violations": sum(r.violation for r in rows)}
    if not exhaustive:
        summary["warning"] = "non-exhaustive: constructed families only"
    data = _section2_rows(rows)
    return _report(cfg, SECTION2_COLUMNS + ["generators"], data, summary), int(summary["violations"] > 0)


def cmd_zariski_bound(cfg: RunConfig):
    d = cfg.params["degree"]
    l = hurwitz.zariski_lower_bound(d)
    l1 = hurwitz.zariski_lower_bound(d, mersenne=False)
    p, k = hurwitz._prime_power(d)
    row = {"d": d, "p": p, "k": k, "l_general": l1,
           "mersenne_case": hurwitz.is_mersenne_case(d), "l": l}
    return _report(cfg, list(row), [row], {"l": l}), 0


def cmd_dim_bound(cfg: RunConfig):
    p = cfg.params
    b = hurwitz.family_dimension_bound(p["genus"], p["degree"], p["target"])
    return _report(cfg, BOUND_COLUMNS, [b.as_dict()], {"bound": fraction_str(b.bound)}), 0


def cmd_scan(cfg: RunConfig):
    p = cfg.params
    res = hurwitz.corollary_scan(p["genus"], p["dmax"], p["dmin"])
    summary = res.summary()
    if p["show_tails"]:
        summary["tails"] = [t.as_dict() for t in res.tails]
    if res.dmin <= 8 <= res.dmax:
        eq1 = hurwitz.family_dimension_bound(p["genus"], 8, hurwitz.RATIONAL, mersenne=False)
        summary["d8_rational_without_mersenne"] = fraction_str(eq1.bound)
    return _report(cfg, BOUND_COLUMNS, [r.as_dict() for r in res.table], summary), 0


def _tuple_budget_gate(cfg: RunConfig):
    d = cfg.params["degree"]
    if d > 5 and not cfg.params["allow_big"]:
        raise BudgetStop(f"degree {d} needs --allow-big")


def cmd_enumerate(cfg: RunConfig):
    p = cfg.params
    _tuple_budget_gate(cfg)
    stream = monodromy.enumerate_tuples(
        p["degree"], p["points"], filters=p["filter"], nonidentity=not p["include_identity"],
        budget=p["budget"], limit=p["limit"])
    rows = []
    for t in stream:
        rec = t.as_dict()
        rec["entries"] = " ".join(rec["entries"])
        rows.append(rec)
    columns = ["entries", "group_order", "transitive", "solvable", "primitive", "genus",
               "branch_contributions"]
    return _report(cfg, columns, rows, {"tuples": len(rows)}), 0


def cmd_check_tuples(cfg: RunConfig):
    p = cfg.params
    _tuple_budget_gate(cfg)
    rep = monodromy.check_zariski_on_tuples(p["degree"], p["points"], budget=p["budget"])
    summary = rep.as_dict()
    rows = summary.pop("violations")
    for r in rows:
        r["entries"] = " ".join(r["entries"])
    summary["violations"] = len(rows)
    columns = ["entries", "index", "fixed_points", "branch_contribution", "reason"]
    return _report(cfg, columns, rows, summary), int(bool(rows))


def cmd_genus_census(cfg: RunConfig):
    p = cfg.params
    _tuple_budget_gate(cfg)
    gc = monodromy.genus_census(p["degree"], p["points"], budget=p["budget"])
    rows = [{"class": c, "genus": g, "tuples": n}
            for c, counter in gc.genera.items() for g, n in sorted(counter.items())]
    summary = {}
    if gc.conjugacy_classes is not None:
        summary["conjugacy_reduced"] = gc.as_dict()["conjugacy_reduced"]
    return _report(cfg, ["class", "genus", "tuples"], rows, summary), 0


def cmd_surface_check(cfg: RunConfig):
    rep = surface.verify_df_numerics()
    summary = {"passed": rep.passed, "assumptions": rep.assumptions, "lattice": rep.lattice}
    rows = [c.as_dict() for c in rep.checks]
    return _report(cfg, ["name", "expected", "actual", "passed"], rows, summary), int(not rep.passed)


COMMANDS = {
    "verify-section2": cmd_verify_section2,
    "census": cmd_census,
    "zariski-bound": cmd_zariski_bound,
    "dim-bound": cmd_dim_bound,
    "scan": cmd_scan,
    "enumerate": cmd_enumerate,
    "check-tuples": cmd_check_tuples,
    "genus-census": cmd_genus_census,
    "surface-check": cmd_surface_check,
}


def build_parser() -> argparse.ArgumentParser:
    default_fmt = os.environ.get(FORMAT_ENV, "table")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=default_fmt,
                        help=f"output format (default from ${FORMAT_ENV}, else table)")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")

    ap = argparse.ArgumentParser(prog="solvcover", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-section2", parents=[common],
                       help="census + structure + fixed-point bounds up to a degree")
    s.add_argument("--dmax", type=int, default=9)
    s.add_argument("--include-16", action="store_true", help="append the seeded degree-16 census")

    s = sub.add_parser("census", parents=[common], help="primitive solvable groups of one degree")
    s.add_argument("--degree", type=int, required=True)

    s = sub.add_parser("zariski-bound", parents=[common], help="branch multiplicity lower bound")
    s.add_argument("--degree", type=int, required=True)

    s = sub.add_parser("dim-bound", parents=[common], help="family dimension bound")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--target", choices=["p1", "rational", "elliptic"], default="p1")

    s = sub.add_parser("scan", parents=[common], help="dimension bounds over all prime-power degrees")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--dmax", type=int, default=10_000)
    s.add_argument("--dmin", type=int, default=5)
    s.add_argument("--show-tails", action="store_true", help="list the per-prime tail bounds")

    for name, helptext in (("enumerate", "stream monodromy tuples"),
                           ("check-tuples", "check the branch bounds on every tuple"),
                           ("genus-census", "genera of all tuples by group class")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--degree", type=int, required=True)
        s.add_argument("--points", type=int, required=True)
        s.add_argument("--budget", type=int, default=monodromy.DEFAULT_BUDGET)
        s.add_argument("--allow-big", action="store_true", help="permit degree 6")
        if name == "enumerate":
            s.add_argument("--filter", action="append", choices=monodromy.FILTERS,
                           help="repeatable; default: transitive")
            s.add_argument("--limit", type=int)
            s.add_argument("--include-identity", action="store_true")

    sub.add_parser("surface-check", parents=[common], help="intersection numbers on E^(2)")
    return ap


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    params = {k: v for k, v in vars(args).items() if k not in ("command", "format", "output")}
    if args.command == "enumerate" and params.get("filter") is None:
        params["filter"] = ["transitive"]
    if "filter" in params:
        params["filter"] = sorted(set(params["filter"]))
    return RunConfig(args.command, params, args.format, args.output)


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    try:
        report, status = COMMANDS[cfg.command](cfg)
    except (hurwitz.HurwitzError, surface.SurfaceError, ValueError) as exc:
        print(f"solvcover {cfg.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (BudgetStop, monodromy.BudgetExceeded, affine.DegreeBudgetExceeded,
            group.OrderExceedsCap) as exc:
        report = _report(cfg, [], [], {"partial": True, "error": f"{type(exc).__name__}: {exc}"})
        _emit(render(report, cfg.fmt), cfg)
        return 3
    _emit(render(report, cfg.fmt), cfg)
    return status


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except UsageError as exc:
        print(f"solvcover: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    raise SystemExit(main())
