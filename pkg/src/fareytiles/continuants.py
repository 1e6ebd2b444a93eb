"""Continuant polynomials and the germ recurrence.

``eval_p(k)`` evaluates the continuant p_r(k_1, ..., k_r) given by

    p_{-1} = 0,  p_0 = 1,  p_r = k_r * p_{r-1} - p_{r-2}

and ``germ_forms`` returns the affine forms x_{-1}, x_0, x_1, ... obtained by
running the same recurrence on the starting pair (x, y).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .exact import ONE, ZERO, AffineForm, rational


@dataclass(frozen=True, order=True)
class ValenceChain:
    values: tuple[int, ...]

    def __init__(self, values: Iterable[int] = ()):
        vals = tuple(int(v) for v in values)
        if any(v < 1 for v in vals):
            raise ValueError(f"valences must be positive integers, got {vals}")
        object.__setattr__(self, "values", vals)

    @property
    def r(self) -> int:
        return len(self.values)

    @property
    def norm(self) -> int:
        if not self.values:
            raise ValueError("the empty chain has no norm")
        return max(self.values)

    def reversed(self) -> "ValenceChain":
        return ValenceChain(self.values[::-1])

    def extend(self, k: int) -> "ValenceChain":
        return ValenceChain(self.values + (k,))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __str__(self):
        return "(" + ",".join(map(str, self.values)) + ")"


def as_values(chain) -> tuple[int, ...]:
    if isinstance(chain, ValenceChain):
        return chain.values
    return tuple(chain)


def eval_p(values: Sequence[int]) -> int:
    prev, cur = 0, 1
    for k in values:
        prev, cur = cur, k * cur - prev
    return cur


def continuant_sequence(values: Sequence[int]) -> list[int]:
    """[p_0, p_1(k_1), ..., p_r(k_1..k_r)]"""
    out = [1]
    prev, cur = 0, 1
    for k in values:
        prev, cur = cur, k * cur - prev
        out.append(cur)
    return out


def germ_forms(chain) -> list[AffineForm]:
    """[x_{-1}, x_0, x_1, ..., x_r] as affine forms in (x, y)."""
    forms = [AffineForm(ONE, ZERO, ZERO), AffineForm(ZERO, ONE, ZERO)]
    for k in as_values(chain):
        a1, b1, _ = forms[-1]
        a2, b2, _ = forms[-2]
        forms.append(AffineForm(k * a1 - a2, k * b1 - b2, ZERO))
    return forms


def germ_form_closed(chain, j: int) -> AffineForm:
    """x_j written through continuants: p_j(k_1..k_j)*y - p_{j-1}(k_2..k_j)*x."""
    vals = as_values(chain)
    if j == -1:
        return AffineForm(ONE, ZERO)
    if j == 0:
        return AffineForm(ZERO, ONE)
    return AffineForm(rational(-eval_p(vals[1:j])), rational(eval_p(vals[:j])))


def reduction_identity_check(chain) -> bool:
    vals = as_values(chain)
    if len(vals) < 2:
        raise ValueError("the reduction identity needs r >= 2")
    return eval_p(vals) == vals[0] * eval_p(vals[1:]) - eval_p(vals[2:])
