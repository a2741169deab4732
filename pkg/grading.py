"""
COLOR ALGEBRA ENGINE - GRADING GROUPS
=====================================
Finite abelian groups Z_n1 x ... x Z_np and grading maps on index sets.

Group elements are plain tuples of residues; the group object owns the
arithmetic and the membership checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import lcm, prod
from typing import List, Optional, Sequence, Tuple

from errors import ElementOutOfGroup, EmptyBlocks

GroupElement = Tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    """Product of cyclic groups with the given orders"""
    orders: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        for n in self.orders:
            if n < 1:
                raise ValueError(f"cyclic factor orders must be >= 1, got {self.orders}")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return prod(self.orders)

    @property
    def exponent(self) -> int:
        return lcm(1, *self.orders)

    def is_trivial(self) -> bool:
        return all(n == 1 for n in self.orders)

    def zero(self) -> GroupElement:
        return (0,) * self.rank

    def element(self, residues: Sequence[int]) -> GroupElement:
        """Reduce an arbitrary integer vector into the group"""
        if len(residues) != self.rank:
            raise ElementOutOfGroup(
                f"element {tuple(residues)} has {len(residues)} residues, group rank is {self.rank}",
                detail={"element": list(residues), "orders": list(self.orders)},
            )
        return tuple(int(r) % n for r, n in zip(residues, self.orders))

    def check(self, a: GroupElement) -> GroupElement:
        if len(a) != self.rank or any(not 0 <= r < n for r, n in zip(a, self.orders)):
            raise ElementOutOfGroup(
                f"{tuple(a)} is not a reduced element of Z{list(self.orders)}",
                detail={"element": list(a), "orders": list(self.orders)},
            )
        return tuple(a)

    def contains(self, a: GroupElement) -> bool:
        return len(a) == self.rank and all(0 <= r < n for r, n in zip(a, self.orders))

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, a: GroupElement) -> GroupElement:
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def sub(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return tuple((x - y) % n for x, y, n in zip(a, b, self.orders))

    def total(self, elements: Sequence[GroupElement]) -> GroupElement:
        acc = self.zero()
        for a in elements:
            acc = self.add(acc, a)
        return acc

    @cached_property
    def elements(self) -> Tuple[GroupElement, ...]:
        """All elements in lexicographic order"""
        return tuple(product(*(range(n) for n in self.orders)))

    def enumerate(self) -> List[GroupElement]:
        return list(self.elements)

    def generator(self, i: int) -> GroupElement:
        return tuple(1 if k == i else 0 for k in range(self.rank))


def product_group(*groups: AbelianGroup) -> AbelianGroup:
    return AbelianGroup(tuple(n for g in groups for n in g.orders))


def embed(groups: Sequence[AbelianGroup], i: int, a: GroupElement) -> GroupElement:
    """Place an element of the i-th factor inside the product group"""
    parts = [g.zero() for g in groups]
    parts[i] = groups[i].check(a)
    return tuple(r for part in parts for r in part)


def group_arithmetic(op: str, G: AbelianGroup, a: Optional[GroupElement] = None,
                     b: Optional[GroupElement] = None):
    """Dispatch one of add, neg, zero, enumerate"""
    if op == "zero":
        return G.zero()
    if op == "enumerate":
        return G.enumerate()
    if op == "add":
        return G.add(G.check(a), G.check(b))
    if op == "neg":
        return G.neg(G.check(a))
    raise ValueError(f"unknown group operation: {op}")


@dataclass(frozen=True)
class GradingMap:
    """Degree of every index of a vector space"""
    group: AbelianGroup
    degrees: Tuple[GroupElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.group.check(d) for d in self.degrees))

    @property
    def domain_size(self) -> int:
        return len(self.degrees)

    def __getitem__(self, index: int) -> GroupElement:
        return self.degrees[index]

    def __len__(self) -> int:
        return len(self.degrees)

    def negated(self) -> GradingMap:
        return GradingMap(self.group, tuple(self.group.neg(d) for d in self.degrees))


def block_grading(group: AbelianGroup, block_sizes: Sequence[int],
                  block_degrees: Sequence[GroupElement]) -> GradingMap:
    """First m_1 indices get a_1, the next m_2 get a_2, and so on"""
    if not block_sizes:
        raise EmptyBlocks("at least one block is required")
    if len(block_sizes) != len(block_degrees):
        raise EmptyBlocks(
            f"{len(block_sizes)} block sizes but {len(block_degrees)} block degrees"
        )
    if any(m < 1 for m in block_sizes):
        raise EmptyBlocks(f"every block must be nonempty, got sizes {list(block_sizes)}")
    degrees: List[GroupElement] = []
    for m, a in zip(block_sizes, block_degrees):
        degrees.extend([group.check(tuple(a))] * m)
    return GradingMap(group, tuple(degrees))


def block_index(block_sizes: Sequence[int]) -> List[int]:
    """Block number of every index"""
    return [k for k, m in enumerate(block_sizes) for _ in range(m)]
