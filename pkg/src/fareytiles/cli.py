"""Command-line entry point.

    fareytiles polys --tuple 1,2,3
    fareytiles farey --Q 8 [--r 2]            # F_Q or its valence windows
    fareytiles farey --chain 2,1,6 --Q-max 200  # brute-force admissibility
    fareytiles chains --r 2 --cap 9 --format json
    fareytiles tiles --r 1 --cap 3            # or --chain 2,1,6
    fareytiles constants --r-max 10
    fareytiles verify [--quick]
    fareytiles render --r 2 --cap 6 --output t.svg

Exit status: 0 on success, 2 on invalid arguments, 3 when ``verify``
finds a failing invariant.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import report
from .continuants import eval_p, reduction_identity_check
from .enumeration import BudgetExceeded, compute_constants, enumerate_chains, tessellation
from .farey import farey_sequence, oracle_is_admissible, valence_windows
from .svg import render_svg
from .tiles import tile_of_chain
from .verify import run_all

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY_FAILED = 3

COMMANDS = ("polys", "farey", "chains", "tiles", "constants", "verify", "render")
FORMATS = ("json", "csv", "svg", "text")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    r: Optional[int] = None
    norm_cap: Optional[int] = None
    Q: Optional[int] = None
    Q_max: Optional[int] = None
    output_path: Optional[Path] = None
    format: str = "text"
    workers: Optional[int] = None
    r_max: Optional[int] = None
    chain: Optional[tuple[int, ...]] = None
    tuples: tuple[tuple[int, ...], ...] = ()
    confirm_window: int = 2
    viewport: int = 800
    quick: bool = False
    list_chains: bool = False

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            flags = ", ".join("--" + n.replace("_", "-").replace("norm-cap", "cap") for n in missing)
            raise UsageError(f"{self.command} needs {flags}")
        for n in names:
            v = getattr(self, n)
            if isinstance(v, int) and v < 1:
                raise UsageError(f"--{n.replace('_', '-')} must be a positive integer")

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")
        if self.workers is not None and self.workers < 1:
            raise UsageError("--workers must be positive")
        if self.command == "polys" and not self.tuples:
            raise UsageError("polys needs at least one --tuple")
        if self.command == "farey":
            if self.chain is not None:
                self.require("Q_max")
            else:
                self.require("Q")
                if self.r is not None and self.r < 1:
                    raise UsageError("--r must be a positive integer")
        if self.command in ("chains", "render"):
            self.require("r", "norm_cap")
        if self.command == "tiles" and self.chain is None:
            self.require("r", "norm_cap")
        if self.command == "constants":
            self.require("r_max")
            if self.confirm_window < 2:
                raise UsageError("--confirm-window must be >= 2")
        if self.command == "render" and self.viewport < 1:
            raise UsageError("--viewport must be positive")
        if self.format == "svg" and self.command != "render":
            raise UsageError("svg output is only produced by render")


def parse_tuple(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.replace(" ", "").strip("()[]").split(",") if t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer tuple: {text!r}")
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError(f"valences must be positive integers: {text!r}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fareytiles", description=__doc__.split("\n\n")[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, default_format="text"):
        sp.add_argument("--format", choices=FORMATS, default=default_format)
        sp.add_argument("--output", "-o", type=Path, dest="output_path")
        sp.add_argument("--workers", type=int)

    sp = sub.add_parser("polys", help="evaluate continuants p_r and their identities")
    sp.add_argument("--tuple", type=parse_tuple, action="append", dest="tuples", default=[])
    common(sp)

    sp = sub.add_parser("farey", help="Farey sequence, valence windows, oracle")
    sp.add_argument("--Q", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--chain", type=parse_tuple)
    sp.add_argument("--Q-max", type=int, dest="Q_max")
    common(sp)

    sp = sub.add_parser("chains", help="enumerate admissible chains and count them")
    sp.add_argument("--r", type=int)
    sp.add_argument("--cap", type=int, dest="norm_cap")
    sp.add_argument("--list", action="store_true", dest="list_chains")
    common(sp)

    sp = sub.add_parser("tiles", help="exact tile vertices")
    sp.add_argument("--r", type=int)
    sp.add_argument("--cap", type=int, dest="norm_cap")
    sp.add_argument("--chain", type=parse_tuple)
    common(sp)

    sp = sub.add_parser("constants", help="C(r) with stabilisation thresholds")
    sp.add_argument("--r-max", type=int, dest="r_max")
    sp.add_argument("--confirm-window", type=int, default=2)
    common(sp)

    sp = sub.add_parser("verify", help="run the whole invariant suite")
    sp.add_argument("--quick", action="store_true")
    common(sp)

    sp = sub.add_parser("render", help="write an SVG of a tessellation")
    sp.add_argument("--r", type=int)
    sp.add_argument("--cap", type=int, dest="norm_cap")
    sp.add_argument("--viewport", type=int, default=800)
    common(sp, default_format="svg")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    kwargs = {k: v for k, v in vars(ns).items() if k in fields and v is not None}
    if "tuples" in kwargs:
        kwargs["tuples"] = tuple(kwargs["tuples"])
    return RunConfig(**kwargs)


# each handler returns (text rendering, json results, csv text or None, exit code)

def _polys(cfg: RunConfig):
    rows = []
    for t in cfg.tuples:
        rows.append({
            "tuple": list(t),
            "p": eval_p(t),
            "p_reversed": eval_p(t[::-1]),
            "symmetric": eval_p(t) == eval_p(t[::-1]),
            "reduction_identity": reduction_identity_check(t) if len(t) >= 2 else None,
        })
    text = "\n".join(f"p{tuple(r['tuple'])} = {r['p']}" for r in rows)
    csv = report.rows_csv(["tuple", "p", "symmetric", "reduction_identity"],
                          [[",".join(map(str, r["tuple"])), r["p"], r["symmetric"],
                            r["reduction_identity"]] for r in rows])
    return text, rows, csv, EXIT_OK


def _farey(cfg: RunConfig):
    if cfg.chain is not None:
        res = oracle_is_admissible(cfg.chain, cfg.Q_max)
        w = res.witness
        out = {"chain": list(cfg.chain), "Q_max": cfg.Q_max, "admissible": bool(res),
               "witness": None if w is None else
               {"Q": w.Q, "q0": w.q0, "q1": w.q1, "denominators": list(w.denominators)}}
        csv = report.rows_csv(["chain", "result"], [[",".join(map(str, cfg.chain)), str(res)]])
        return str(res), out, csv, EXIT_OK
    if cfg.r is None:
        fr = [str(f) for f in farey_sequence(cfg.Q)]
        csv = report.rows_csv(["a", "q"], [f.split("/") for f in fr])
        return " ".join(fr), {"Q": cfg.Q, "length": len(fr), "fractions": fr}, csv, EXIT_OK
    wins = sorted(valence_windows(cfg.Q, cfg.r))
    text = "\n".join(",".join(map(str, w)) for w in wins)
    return text, {"Q": cfg.Q, "r": cfg.r, "chains": [list(w) for w in wins]}, report.chains_csv(wins), EXIT_OK


def _chains(cfg: RunConfig):
    chains = enumerate_chains(cfg.r, cfg.norm_cap, cfg.workers)
    count = len(chains)
    res = {"r": cfg.r, "norm_cap": cfg.norm_cap, "count": count,
           "delta": count - cfg.r * cfg.norm_cap, "stabilized_at": None}
    if cfg.list_chains:
        res["chains"] = [list(c.values) for c in chains]
    text = f"r={cfg.r} cap={cfg.norm_cap} count={count} delta={res['delta']}"
    if cfg.list_chains:
        text += "\n" + "\n".join(str(c) for c in chains)
    return text, res, report.chains_csv(c.values for c in chains), EXIT_OK


def _tiles(cfg: RunConfig):
    if cfg.chain is not None:
        tiles = [tile_of_chain(cfg.chain)]
    else:
        tiles = tessellation(cfg.r, cfg.norm_cap)
    res = [report.tile_json(t) for t in tiles]
    text = "\n".join(f"{t['chain']} {t['status']}: " + " ".join(f"({x},{y})" for x, y in t["vertices"])
                     for t in res)
    return text, res, report.tiles_csv(tiles), EXIT_OK


def _constants(cfg: RunConfig):
    reps = compute_constants(cfg.r_max, cfg.confirm_window, workers=cfg.workers)
    rows = [r.as_dict() for r in reps]
    text = "\n".join(
        f"C({r['r']}) = {r['C']}  stabilized_at={r['stabilized_at']}"
        + ("" if r["published"] is None else f"  published={r['published']}"
           + ("" if r["matches_published"] else "  MISMATCH"))
        for r in rows)
    csv = report.rows_csv(["r", "C", "stabilized_at", "norm_cap", "published", "matches_published"],
                          [[r[k] for k in ("r", "C", "stabilized_at", "norm_cap", "published",
                                           "matches_published")] for r in rows])
    return text, rows, csv, EXIT_OK


def _verify(cfg: RunConfig):
    checks = run_all(quick=cfg.quick, workers=cfg.workers)
    ledger = [c.as_dict() for c in checks]
    ok = all(c.passed for c in checks)
    text = "\n".join(c.line() for c in checks)
    text += f"\n{sum(c.passed for c in checks)}/{len(checks)} checks passed"
    csv = report.rows_csv(["check", "passed", "seconds"],
                          [[c.name, c.passed, round(c.seconds, 3)] for c in checks])
    return text, {"passed": ok}, csv, (EXIT_OK if ok else EXIT_VERIFY_FAILED), ledger


def _render(cfg: RunConfig):
    svg = render_svg(tessellation(cfg.r, cfg.norm_cap), cfg.viewport)
    return svg, None, None, EXIT_OK


HANDLERS = {"polys": _polys, "farey": _farey, "chains": _chains, "tiles": _tiles,
            "constants": _constants, "verify": _verify, "render": _render}


PARAMS = {
    "polys": ("tuples",),
    "farey": ("Q", "r", "chain", "Q_max"),
    "chains": ("r", "norm_cap"),
    "tiles": ("r", "norm_cap", "chain"),
    "constants": ("r_max", "confirm_window"),
    "verify": ("quick",),
    "render": ("r", "norm_cap", "viewport"),
}


def params_of(cfg: RunConfig) -> dict:
    out = {}
    for k in PARAMS[cfg.command]:
        v = getattr(cfg, k)
        if v is None or v == ():
            continue
        out[k] = [list(t) for t in v] if k == "tuples" else (list(v) if k == "chain" else v)
    return out


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute ``cfg`` and return (exit status, rendered output)."""
    cfg.validate()
    produced = HANDLERS[cfg.command](cfg)
    text, results, csv, code = produced[:4]
    ledger = produced[4] if len(produced) > 4 else None
    if cfg.command == "render" or cfg.format == "text":
        body = text if text.endswith("\n") else text + "\n"
    elif cfg.format == "json":
        body = report.dumps(report.document(cfg.command, params_of(cfg), results, ledger))
    else:
        body = csv
    return code, body


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = config_from_args(ns)
    try:
        code, body = run(cfg)
    except (UsageError, ValueError) as exc:
        print(f"fareytiles {cfg.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"fareytiles {cfg.command}: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    if cfg.output_path is not None:
        cfg.output_path.write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)
    return code


if __name__ == "__main__":
    sys.exit(main())
