"""
COLOR ALGEBRA ENGINE - TUPLE SWEEPS
===================================
Exhaustive or budgeted enumeration of basis tuples for identity checks.

A sweep that fits the budget walks the whole space in lexicographic order.
Otherwise a fixed-seed sample of exactly `budget` tuples is drawn and walked
in lexicographic order too, so reports stay byte-identical across runs.
"""

import logging
import random
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import comb, prod
from typing import Iterator, List, Optional, Sequence, Tuple, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class SweepPlan:
    total: int
    size: int
    sampled: bool
    seed: Optional[int]
    _tuples: object

    def __iter__(self) -> Iterator[Tuple]:
        return iter(self._tuples)


def _decode(index: int, radices: Sequence[int]) -> Tuple[int, ...]:
    digits = []
    for r in reversed(radices):
        index, d = divmod(index, r)
        digits.append(d)
    return tuple(reversed(digits))


def plan_product(pools: Sequence[Sequence[T]], budget: Optional[int] = None,
                 seed: int = 0) -> SweepPlan:
    """Cartesian product of pools, sampled down to budget when needed"""
    pools = [list(p) for p in pools]
    radices = [len(p) for p in pools]
    total = prod(radices) if pools else 1
    if budget is None or total <= budget:
        return SweepPlan(total, total, False, None, product(*pools))
    rng = random.Random(seed)
    picks = sorted(rng.sample(range(total), budget))
    logger.debug("sampling %d of %d tuples (seed %d)", budget, total, seed)
    tuples = (tuple(p[d] for p, d in zip(pools, _decode(i, radices))) for i in picks)
    return SweepPlan(total, budget, True, seed, tuples)


def plan_multisets(pool: Sequence[T], k: int, budget: Optional[int] = None,
                   seed: int = 0) -> SweepPlan:
    """Sorted k-multisets of a pool, sampled down to budget when needed"""
    pool = list(pool)
    total = comb(len(pool) + k - 1, k) if pool else 0
    if budget is None or total <= budget:
        return SweepPlan(total, total, False, None, combinations_with_replacement(pool, k))
    rng = random.Random(seed)
    picks = set(rng.sample(range(total), budget))
    logger.debug("sampling %d of %d multisets (seed %d)", budget, total, seed)
    chosen: List[Tuple] = [t for i, t in enumerate(combinations_with_replacement(pool, k)) if i in picks]
    return SweepPlan(total, budget, True, seed, chosen)
