"""Brute-force ground truth from Farey sequences.

Nothing in this module touches the tile geometry: admissibility is decided
here by exhibiting integer denominators that satisfy the defining
conditions directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, NamedTuple, Optional, Sequence

from .continuants import ValenceChain, as_values, eval_p


class FareyFraction(NamedTuple):
    a: int
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.q)

    def __str__(self):
        return f"{self.a}/{self.q}"


def farey_sequence(Q: int) -> Iterator[FareyFraction]:
    """Yield F_Q in ascending order via the next-term recurrence."""
    if not isinstance(Q, int) or Q < 1:
        raise ValueError(f"Farey order must be a positive integer, got {Q!r}")
    a, b, c, d = 0, 1, 1, Q
    yield FareyFraction(a, b)
    while c <= Q:
        t = (Q + b) // d
        a, b, c, d = c, d, t * c - a, t * d - b
        yield FareyFraction(a, b)


def farey_denominators(Q: int) -> list[int]:
    return [f.q for f in farey_sequence(Q)]


def valences_of(denominators: Sequence[int]) -> tuple[int, ...]:
    """k_j = (q_{j-1} + q_{j+1}) / q_j for every interior denominator."""
    out = []
    for j in range(1, len(denominators) - 1):
        k, rem = divmod(denominators[j - 1] + denominators[j + 1], denominators[j])
        if rem:
            raise ValueError(f"denominators {denominators[j-1:j+2]} carry no integer valence")
        out.append(k)
    return tuple(out)


@dataclass(frozen=True)
class FareyWindow:
    Q: int
    denominators: tuple[int, ...]

    @property
    def valences(self) -> tuple[int, ...]:
        return valences_of(self.denominators)

    @property
    def chain(self) -> ValenceChain:
        return ValenceChain(self.valences)


def full_chain(Q: int) -> tuple[int, ...]:
    """Valences of the whole of F_Q (no wraparound)."""
    return valences_of(farey_denominators(Q))


def valence_windows(Q: int, r: int) -> set[tuple[int, ...]]:
    if r < 1:
        raise ValueError("window length r must be >= 1")
    ks = full_chain(Q)
    return {ks[i:i + r] for i in range(len(ks) - r + 1)}


def is_witness(chain, Q: int, denominators: Sequence[int]) -> bool:
    """Check the three admissibility conditions for explicit denominators."""
    ks = as_values(chain)
    qs = list(denominators)
    if len(qs) != len(ks) + 2:
        return False
    if any(not 1 <= q <= Q for q in qs):
        return False
    for j in range(len(qs) - 1):
        if gcd(qs[j], qs[j + 1]) != 1 or qs[j] + qs[j + 1] <= Q:
            return False
    return all(ks[j - 1] * qs[j] == qs[j - 1] + qs[j + 1] for j in range(1, len(qs) - 1))


def unroll(chain, q0: int, q1: int) -> list[int]:
    qs = [q0, q1]
    for k in as_values(chain):
        qs.append(k * qs[-1] - qs[-2])
    return qs


@dataclass(frozen=True)
class Witness:
    Q: int
    q0: int
    q1: int
    denominators: tuple[int, ...]


@dataclass(frozen=True)
class OracleResult:
    """Either a witness, or the statement that none exists with Q <= q_max."""

    witness: Optional[Witness]
    q_max: int

    def __bool__(self):
        return self.witness is not None

    def __str__(self):
        if self.witness is None:
            return f"not-found-below({self.q_max})"
        w = self.witness
        return f"admissible-with-witness(Q={w.Q}, q0={w.q0}, q1={w.q1})"


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _q0_range(ks: Sequence[int], Q: int, q1: int) -> tuple[int, int]:
    """Range of q0 for which every unrolled denominator obeys the bounds.

    Each q_j is affine in q0 once q1 is fixed, so every condition
    1 <= q_j <= Q and q_j + q_{j+1} >= Q + 1 cuts an interval.
    """
    lo, hi = 1, Q
    coef = [(1, 0), (0, q1)]  # q_j = alpha*q0 + beta
    for k in ks:
        (a2, b2), (a1, b1) = coef[-2], coef[-1]
        coef.append((k * a1 - a2, k * b1 - b2))
    terms = [(c, 1, Q) for c in coef]
    terms += [((coef[j][0] + coef[j + 1][0], coef[j][1] + coef[j + 1][1]), Q + 1, None)
              for j in range(len(coef) - 1)]
    for (alpha, beta), low, high in terms:
        # low <= alpha*q0 + beta <= high
        if alpha == 0:
            if beta < low or (high is not None and beta > high):
                return 1, 0
            continue
        if alpha > 0:
            lo = max(lo, _ceil_div(low - beta, alpha))
            if high is not None:
                hi = min(hi, (high - beta) // alpha)
        else:
            hi = min(hi, (beta - low) // (-alpha))
            if high is not None:
                lo = max(lo, _ceil_div(beta - high, -alpha))
        if lo > hi:
            return 1, 0
    return lo, hi


def witnesses_at(chain, Q: int) -> list[Witness]:
    """All integer germs (q0, q1) of ``chain`` at order Q, left to right in F_Q."""
    ks = as_values(chain)
    found = []
    for q1 in range(1, Q + 1):
        lo, hi = _q0_range(ks, Q, q1)
        for q0 in range(lo, hi + 1):
            if gcd(q0, q1) == 1:
                found.append(Witness(Q, q0, q1, tuple(unroll(ks, q0, q1))))

    def position(w: Witness) -> Fraction:
        # a0/q0 is the left fraction of the consecutive pair with denominators (q0, q1)
        return Fraction((-pow(w.q1, -1, w.q0)) % w.q0, w.q0) if w.q0 > 1 else Fraction(0)

    found.sort(key=position)
    return found


def oracle_is_admissible(chain, Q_max: int) -> OracleResult:
    ks = as_values(chain)
    if not ks:
        raise ValueError("the oracle needs a nonempty chain")
    for Q in range(1, Q_max + 1):
        ws = witnesses_at(ks, Q)
        if ws:
            return OracleResult(ws[0], Q_max)
    return OracleResult(None, Q_max)


def naive_witnesses_at(chain, Q: int) -> list[Witness]:
    """Scan consecutive denominator runs of F_Q left to right (slow, for tests)."""
    ks = as_values(chain)
    qs = farey_denominators(Q)
    out = []
    for i in range(len(qs) - 1):
        run = unroll(ks, qs[i], qs[i + 1])
        if is_witness(ks, Q, run):
            out.append(Witness(Q, qs[i], qs[i + 1], tuple(run)))
    return out


def difference_violations(Q: int, r: int) -> Iterator[tuple[FareyFraction, ...]]:
    """Windows of r+2 consecutive fractions where
    a_{r+1}/q_{r+1} - a_0/q_0 != p_r(k) / (q_0 q_{r+1})."""
    fr = list(farey_sequence(Q))
    for i in range(len(fr) - r - 1):
        win = fr[i:i + r + 2]
        ks = valences_of([f.q for f in win])
        first, last = win[0], win[-1]
        lhs = Fraction(last.a, last.q) - Fraction(first.a, first.q)
        if lhs != Fraction(eval_p(ks), first.q * last.q):
            yield tuple(win)


def difference_formula_check(Q: int, r: int) -> bool:
    if Q < 1 or r < 1:
        raise ValueError("Q and r must be positive")
    return next(difference_violations(Q, r), None) is None
