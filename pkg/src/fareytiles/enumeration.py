"""Depth-first enumeration of admissible chains and the constants C(r)."""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .continuants import ValenceChain, germ_forms
from .exact import ConvexRegion, Status
from .tiles import ConvexTile, children, farey_triangle

log = logging.getLogger(__name__)

# Constants printed for r = 1..20; used only as a cross-check, never as input.
PUBLISHED_C = {
    1: 0, 2: 3, 3: 15, 4: 41, 5: 84, 6: 153, 7: 247, 8: 367, 9: 523, 10: 721,
    11: 961, 12: 1251, 13: 1588, 14: 1983, 15: 2437, 16: 2963, 17: 3548,
    18: 4219, 19: 4954, 20: 5761,
}


class BudgetExceeded(RuntimeError):
    """delta(r, n) did not settle before the cap budget ran out."""


@dataclass(frozen=True)
class Node:
    chain: tuple[int, ...]
    region: ConvexRegion
    forms: tuple  # (x_{j-1}, x_j)


def _root() -> Node:
    f = germ_forms(())
    return Node((), farey_triangle(), (f[0], f[1]))


def walk(r: int, norm_cap: int, start: Optional[Node] = None) -> Iterator[Node]:
    """Pre-order DFS over nonempty tiles of depth 1..r with valences <= norm_cap."""
    stack = [start or _root()]
    while stack:
        node = stack.pop()
        if node.chain:
            yield node
        if len(node.chain) == r:
            continue
        prev, cur = node.forms
        kids = [Node(node.chain + (k,), reg, (cur, nxt))
                for k, reg, nxt in children(node.region, prev, cur, norm_cap)]
        stack.extend(reversed(kids))


def _first_level(norm_cap: int) -> list[Node]:
    root = _root()
    prev, cur = root.forms
    return [Node((k,), reg, (cur, nxt)) for k, reg, nxt in children(root.region, prev, cur, norm_cap)]


def _subtree_chains(args) -> list[tuple[int, ...]]:
    node, r, cap = args
    return [n.chain for n in walk(r, cap, node) if len(n.chain) == r]


def _subtree_histograms(args) -> list[Counter]:
    node, r_max, cap = args
    hist = [Counter() for _ in range(r_max + 1)]
    for n in walk(r_max, cap, node):
        hist[len(n.chain)][max(n.chain)] += 1
    return hist


def _map(fn, jobs, workers: Optional[int]):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


def enumerate_chains(r: int, norm_cap: int, workers: Optional[int] = None) -> list[ValenceChain]:
    if r < 1 or norm_cap < 1:
        raise ValueError("r and norm_cap must be positive")
    jobs = [(node, r, norm_cap) for node in _first_level(norm_cap)]
    found = [c for part in _map(_subtree_chains, jobs, workers) for c in part]
    return [ValenceChain(c) for c in sorted(found)]


def tessellation(r: int, norm_cap: int) -> list[ConvexTile]:
    tiles = [ConvexTile(ValenceChain(n.chain), n.region, tuple(germ_forms(n.chain)))
             for n in walk(r, norm_cap) if len(n.chain) == r]
    tiles.sort(key=lambda t: t.chain.values)
    return tiles


def degenerate_chains(r: int, norm_cap: int) -> list[tuple[int, ...]]:
    """Chains whose tile is nonempty but has zero area."""
    return sorted(n.chain for n in walk(r, norm_cap)
                  if n.region.status is Status.DEGENERATE_NONEMPTY)


def norm_histograms(r_max: int, norm_cap: int, workers: Optional[int] = None) -> list[Counter]:
    """hist[j][n] = number of admissible chains of length j and norm exactly n."""
    jobs = [(node, r_max, norm_cap) for node in _first_level(norm_cap)]
    hist = [Counter() for _ in range(r_max + 1)]
    for part in _map(_subtree_histograms, jobs, workers):
        for j in range(r_max + 1):
            hist[j].update(part[j])
    return hist


def cumulative_counts(hist: Counter, norm_cap: int) -> list[int]:
    """counts[n] for n = 0..norm_cap."""
    out = [0]
    for n in range(1, norm_cap + 1):
        out.append(out[-1] + hist.get(n, 0))
    return out


@dataclass
class CountReport:
    r: int
    norm_cap: int
    count: int
    delta: int
    stabilized_at: Optional[int] = None

    def as_dict(self) -> dict:
        return {"r": self.r, "norm_cap": self.norm_cap, "count": self.count,
                "delta": self.delta, "stabilized_at": self.stabilized_at}


def count_chains(r: int, norm_cap: int, workers: Optional[int] = None) -> CountReport:
    count = len(enumerate_chains(r, norm_cap, workers))
    return CountReport(r, norm_cap, count, count - r * norm_cap)


def deltas(r: int, counts: list[int]) -> list[int]:
    return [c - r * n for n, c in enumerate(counts)]


def stabilization_point(delta: list[int]) -> int:
    """Least n >= 1 from which delta[n:] is constant."""
    n = len(delta) - 1
    while n > 1 and delta[n - 1] == delta[-1]:
        n -= 1
    return n


@dataclass
class ConstantReport:
    r: int
    C: int
    stabilized_at: int
    norm_cap: int
    published: Optional[int] = None
    deltas: list[int] = field(default_factory=list, repr=False)

    @property
    def matches_published(self) -> Optional[bool]:
        return None if self.published is None else self.published == self.C

    def as_dict(self) -> dict:
        return {"r": self.r, "C": self.C, "stabilized_at": self.stabilized_at,
                "norm_cap": self.norm_cap, "published": self.published,
                "matches_published": self.matches_published}


def compute_constants(r_max: int, confirm_window: int = 2, start_cap: int = 16,
                      max_cap: int = 4096, workers: Optional[int] = None) -> list[ConstantReport]:
    """C(r) for r = 1..r_max from a single DFS per cap.

    delta(r, n) is declared stable at n* when it is constant on
    [n*, cap] and cap >= confirm_window * n*; otherwise the cap doubles.
    """
    if r_max < 1:
        raise ValueError("r_max must be positive")
    if confirm_window < 2:
        raise ValueError("confirm_window must be >= 2")
    cap = start_cap
    while True:
        hist = norm_histograms(r_max, cap, workers)
        reports = []
        for r in range(1, r_max + 1):
            d = deltas(r, cumulative_counts(hist[r], cap))
            n_star = stabilization_point(d)
            if confirm_window * n_star > cap:
                break
            reports.append(ConstantReport(r, d[-1], n_star, cap, PUBLISHED_C.get(r), d))
        else:
            return reports
        log.info("delta(%d, n) not settled by cap %d; doubling", r, cap)
        if cap >= max_cap:
            raise BudgetExceeded(f"C({r}) did not stabilize up to norm cap {cap}")
        cap = min(2 * cap, max_cap)


def compute_C(r: int, confirm_window: int = 2, **kwargs) -> tuple[int, int]:
    rep = compute_constants(r, confirm_window, **kwargs)[-1]
    return rep.C, rep.stabilized_at
