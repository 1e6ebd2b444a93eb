"""Machine-readable reports: JSON documents and CSV tables.

Rationals are always written as ``"num/den"`` strings.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable, Optional

from .exact import Point, format_rational
from .tiles import ConvexTile


def point_json(p: Point) -> list[str]:
    return [format_rational(p[0]), format_rational(p[1])]


def tile_json(tile: ConvexTile) -> dict:
    return {
        "chain": list(tile.chain.values),
        "norm": tile.chain.norm,
        "status": tile.status.value,
        "vertices": [point_json(v) for v in tile.vertices],
    }


def document(command: str, params: dict, results: Any,
             invariant_ledger: Optional[list] = None) -> dict:
    doc = {"command": command, "params": params, "results": results}
    if invariant_ledger is not None:
        doc["invariant_ledger"] = invariant_ledger
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def chains_csv(chains: Iterable[Iterable[int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    w.writerow(["chain", "norm"])
    for c in chains:
        vals = tuple(c)
        w.writerow([",".join(map(str, vals)), max(vals)])
    return buf.getvalue()


def tiles_csv(tiles: Iterable[ConvexTile]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    w.writerow(["chain", "norm", "status", "vertices"])
    for t in tiles:
        verts = ";".join(f"({format_rational(v[0])},{format_rational(v[1])})" for v in t.vertices)
        w.writerow([",".join(map(str, t.chain.values)), t.chain.norm, t.status.value, verts])
    return buf.getvalue()


def rows_csv(header: list[str], rows: Iterable[Iterable]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()
