"""Command-line front end: list, expand, verify, verify-all.

Exit status: 0 when every report passes, 1 on any mismatch, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence

from . import identities as ident
from .series import QZSeries

FORMATS = ("text", "json", "csv")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    identity: Optional[str] = None
    side: str = "both"
    order: int = ident.DEFAULT_ORDER
    params: Dict[str, List[int]] = field(default_factory=dict)
    format: str = "text"
    z_window: Optional[int] = None
    output: Optional[str] = None
    jobs: int = 1

    def grid(self) -> List[Dict[str, int]]:
        keys = sorted(self.params)
        return [dict(zip(keys, vals)) for vals in product(*(self.params[k] for k in keys))]


def parse_params(items: Sequence[str]) -> Dict[str, List[int]]:
    """``n=3``, ``n=0..10`` or ``n=1,t=2``; repeated flags accumulate."""
    out: Dict[str, List[int]] = {}
    for item in items:
        for piece in item.split(","):
            piece = piece.strip()
            if not piece:
                continue
            key, sep, value = piece.partition("=")
            if not sep or not key:
                raise UsageError(f"bad parameter {piece!r}; expected key=value")
            try:
                if ".." in value:
                    lo, hi = value.split("..", 1)
                    values = list(range(int(lo), int(hi) + 1))
                    if not values:
                        raise UsageError(f"empty range {value!r}")
                else:
                    values = [int(value)]
            except ValueError:
                raise UsageError(f"parameter {key} needs integer values, got {value!r}") from None
            out[key.strip()] = values
    return out


# --- coefficient tables -------------------------------------------------------

def series_rows(f: QZSeries):
    for (i, j), c in f.items():
        yield i, j, c.numerator, c.denominator


def table_csv(f: QZSeries) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in series_rows(f):
        writer.writerow(row)
    return buf.getvalue()


def parse_csv_table(text: str, qmax: int) -> QZSeries:
    terms = {}
    for row in csv.reader(io.StringIO(text)):
        if not row or row[0].startswith("#"):
            continue
        i, j, num, den = (int(x) for x in row)
        terms[(i, j)] = Fraction(num, den)
    return QZSeries(terms, qmax)


def table_json(f: QZSeries) -> dict:
    return {"order": f.qmax,
            "terms": [[i, j, f"{num}/{den}"] for i, j, num, den in series_rows(f)]}


def parse_json_table(obj) -> QZSeries:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return QZSeries({(i, j): Fraction(c) for i, j, c in obj["terms"]}, obj["order"])


def table_text(f: QZSeries) -> str:
    lines = []
    for i, j, num, den in series_rows(f):
        c = str(num) if den == 1 else f"{num}/{den}"
        lines.append(f"q^{i:<4d} z^{j:<4d} {c}")
    return "\n".join(lines) + ("\n" if lines else "")


# --- reports ------------------------------------------------------------------

REPORT_FIELDS = ("identity", "params", "order", "status", "q_exp", "z_exp", "lhs", "rhs",
                 "terms_summed", "elapsed_ms", "error")


def reports_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_FIELDS)
    for r in reports:
        d = r.to_dict()
        mm = d["first_mismatch"] or {}
        params = ";".join(f"{k}={v}" for k, v in sorted(d["params"].items()))
        writer.writerow([d["identity"], params, d["order"], d["status"],
                         mm.get("q_exp", ""), mm.get("z_exp", ""), mm.get("lhs", ""),
                         mm.get("rhs", ""), d["terms_summed"], d["elapsed_ms"],
                         d.get("error") or ""])
    return buf.getvalue()


def report_text(r) -> str:
    params = " ".join(f"{k}={v}" for k, v in sorted(r.params.items()))
    head = f"{r.status.upper():4s} {r.identity}{' ' + params if params else ''}"
    line = f"{head}  order={r.checked_order} terms={r.terms_summed} {r.elapsed * 1000:.1f}ms"
    if r.first_mismatch is not None:
        m = r.first_mismatch
        line += f"\n     first mismatch at q^{m.q_exp} z^{m.z_exp}: lhs={m.lhs} rhs={m.rhs}"
    if r.error:
        line += f"\n     {r.error}"
    return line


def render_reports(reports, fmt: str, single: bool) -> str:
    if fmt == "json":
        payload = reports[0].to_dict() if single else [r.to_dict() for r in reports]
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        return reports_csv(reports)
    lines = [report_text(r) for r in reports]
    if not single:
        passed = sum(r.passed for r in reports)
        lines.append(f"{passed}/{len(reports)} passed")
    return "\n".join(lines) + "\n"


# --- commands -----------------------------------------------------------------

def _entry(cfg: RunConfig):
    if cfg.identity is None:
        raise UsageError(f"{cfg.command} requires --identity")
    try:
        return ident.get(cfg.identity)
    except ident.UnknownIdentity as exc:
        raise UsageError(str(exc.args[0])) from None


def cmd_list(cfg: RunConfig):
    entries = ident.list_identities()
    if cfg.format == "json":
        payload = [{"name": e.name, "label": e.label, "kind": type(e).__name__.lower(),
                    "statement": e.statement, "validity": e.validity,
                    "params": {k: s.default for k, s in e.params.items()}} for e in entries]
        return json.dumps(payload, indent=2) + "\n", 0
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("name", "label", "kind", "validity"))
        for e in entries:
            w.writerow((e.name, e.label, type(e).__name__.lower(), e.validity))
        return buf.getvalue(), 0
    lines = []
    for e in entries:
        lines.append(f"{e.name:16s} {e.label:36s} [{type(e).__name__.lower()}] {e.validity}")
        lines.append(f"{'':16s} {e.statement}")
    return "\n".join(lines) + "\n", 0


def cmd_expand(cfg: RunConfig):
    entry = _entry(cfg)
    if not isinstance(entry, ident.Identity):
        raise UsageError(f"{entry.name} is a check, not an expandable identity")
    if any(len(v) != 1 for v in cfg.params.values()):
        raise UsageError("expand takes single parameter values, not ranges")
    params = ident.resolve_params(entry, {k: v[0] for k, v in cfg.params.items()})
    sides = ("lhs", "rhs") if cfg.side == "both" else (cfg.side,)
    built = {s: entry.build(s, cfg.order, params) for s in sides}
    if cfg.format == "json":
        payload = {"identity": entry.name, "params": params, "order": cfg.order,
                   "sides": {s: table_json(f) for s, f in built.items()}}
        return json.dumps(payload, indent=2) + "\n", 0
    chunks = []
    for s, f in built.items():
        if cfg.format == "csv":
            chunks.append((f"# side={s}\n" if len(built) > 1 else "") + table_csv(f))
        else:
            chunks.append(f"# {entry.name} {s} (order {cfg.order})\n" + table_text(f))
    return "".join(chunks), 0


def cmd_verify(cfg: RunConfig):
    entry = _entry(cfg)
    grid = cfg.grid()
    if cfg.z_window is not None:
        if "z_window" not in entry.params:
            raise UsageError(f"{entry.name} takes no z-window")
        for p in grid:
            p["z_window"] = cfg.z_window
    reports = [ident.verify(entry.name, p, cfg.order) for p in grid]
    status = 0 if all(r.passed for r in reports) else 1
    return render_reports(reports, cfg.format, single=len(reports) == 1), status


def cmd_verify_all(cfg: RunConfig):
    reports = ident.verify_all(cfg.order, jobs=cfg.jobs)
    status = 0 if all(r.passed for r in reports) else 1
    return render_reports(reports, cfg.format, single=False), status


COMMANDS = {"list": cmd_list, "expand": cmd_expand, "verify": cmd_verify,
            "verify-all": cmd_verify_all}


def run(cfg: RunConfig):
    """Execute a config; returns ``(serialized output, exit status)``."""
    if cfg.order < 0:
        raise UsageError("--order must be >= 0")
    if cfg.format not in FORMATS:
        raise UsageError(f"--format must be one of {FORMATS}")
    try:
        return COMMANDS[cfg.command](cfg)
    except ident.InvalidParams as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quintuple",
        description="Exact q-series verification of the quintuple product identity and its semi-finite forms.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--output", help="write the result here instead of stdout")
        if name == "list":
            continue
        p.add_argument("--order", type=int, default=ident.DEFAULT_ORDER,
                       help="truncation order qmax in q (default %(default)s)")
        if name in ("expand", "verify"):
            p.add_argument("--identity", required=True)
            p.add_argument("--params", action="append", default=[],
                           help="key=value, key=lo..hi, comma separated")
        if name == "expand":
            p.add_argument("--side", choices=("lhs", "rhs", "both"), default="both")
        if name == "verify":
            p.add_argument("--z-window", type=int, dest="z_window")
        if name == "verify-all":
            p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(command=args.command,
                        identity=getattr(args, "identity", None),
                        side=getattr(args, "side", "both"),
                        order=getattr(args, "order", ident.DEFAULT_ORDER),
                        params=parse_params(getattr(args, "params", [])),
                        format=args.format,
                        z_window=getattr(args, "z_window", None),
                        output=args.output,
                        jobs=getattr(args, "jobs", 1))
        text, status = run(cfg)
    except UsageError as exc:
        print(f"quintuple: error: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
