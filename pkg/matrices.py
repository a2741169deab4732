"""
COLOR ALGEBRA ENGINE - SPARSE EXACT MATRICES
============================================
Square matrices over Q(z_L) stored as {(row, col): CycloScalar}.
Only nonzero entries are kept.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from errors import DimensionMismatch
from scalar import CycloScalar

Entry = Tuple[int, int]
Number = Union[int, Fraction, CycloScalar]


class SparseMatrix:
    __slots__ = ("size", "root_order", "entries")

    def __init__(self, size: int, root_order: int,
                 entries: Optional[Dict[Entry, Number]] = None):
        self.size = size
        self.root_order = root_order
        self.entries: Dict[Entry, CycloScalar] = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < size and 0 <= j < size):
                raise DimensionMismatch(f"entry ({i}, {j}) outside a {size}x{size} matrix")
            value = self._scalar(value)
            if value:
                self.entries[(i, j)] = value

    def _scalar(self, value: Number) -> CycloScalar:
        if isinstance(value, CycloScalar):
            if value.root_order != self.root_order:
                return value.lift(self.root_order)
            return value
        return CycloScalar.rational(self.root_order, value)

    @classmethod
    def zero(cls, size: int, root_order: int) -> SparseMatrix:
        return cls(size, root_order)

    @classmethod
    def identity(cls, size: int, root_order: int) -> SparseMatrix:
        return cls(size, root_order, {(i, i): 1 for i in range(size)})

    @classmethod
    def unit(cls, size: int, root_order: int, row: int, col: int, value: Number = 1) -> SparseMatrix:
        return cls(size, root_order, {(row, col): value})

    @classmethod
    def from_rows(cls, rows: List[List[Number]], root_order: int) -> SparseMatrix:
        size = len(rows)
        return cls(size, root_order, {
            (i, j): v for i, row in enumerate(rows) for j, v in enumerate(row)
        })

    def _check(self, other: SparseMatrix) -> None:
        if other.size != self.size:
            raise DimensionMismatch(f"matrix sizes differ: {self.size} vs {other.size}")

    def is_zero(self) -> bool:
        return not self.entries

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __getitem__(self, key: Entry) -> CycloScalar:
        value = self.entries.get(key)
        return value if value is not None else CycloScalar.zero(self.root_order)

    def __iter__(self) -> Iterator[Tuple[Entry, CycloScalar]]:
        return iter(sorted(self.entries.items()))

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        self._check(other)
        out = dict(self.entries)
        for key, value in other.entries.items():
            out[key] = out[key] + value if key in out else value
        return SparseMatrix(self.size, self.root_order, out)

    def __neg__(self) -> SparseMatrix:
        return SparseMatrix(self.size, self.root_order, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: SparseMatrix) -> SparseMatrix:
        return self + (-other)

    def scale(self, c: Number) -> SparseMatrix:
        c = self._scalar(c)
        if not c:
            return SparseMatrix(self.size, self.root_order)
        return SparseMatrix(self.size, self.root_order, {k: c * v for k, v in self.entries.items()})

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        self._check(other)
        by_row: Dict[int, List[Tuple[int, CycloScalar]]] = {}
        for (k, j), b in other.entries.items():
            by_row.setdefault(k, []).append((j, b))
        out: Dict[Entry, CycloScalar] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                term = a * b
                key = (i, j)
                out[key] = out[key] + term if key in out else term
        return SparseMatrix(self.size, self.root_order, out)

    def __mul__(self, other):
        if isinstance(other, SparseMatrix):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, exponent: int) -> SparseMatrix:
        result = SparseMatrix.identity(self.size, self.root_order)
        for _ in range(exponent):
            result = result @ self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.size == other.size and self.entries == other.entries

    __hash__ = None

    def kron(self, other: SparseMatrix) -> SparseMatrix:
        """Kronecker product, row index i*m + k for self (i, .) and other (k, .)"""
        m = other.size
        out = {}
        for (i, j), a in self.entries.items():
            for (k, l), b in other.entries.items():
                out[(i * m + k, j * m + l)] = a * b
        return SparseMatrix(self.size * m, self.root_order, out)

    def lift(self, new_order: int) -> SparseMatrix:
        return SparseMatrix(self.size, new_order,
                            {k: v.lift(new_order) for k, v in self.entries.items()})

    def trace(self) -> CycloScalar:
        total = CycloScalar.zero(self.root_order)
        for (i, j), v in self.entries.items():
            if i == j:
                total = total + v
        return total

    def permuted(self, order: List[int]) -> SparseMatrix:
        """Reindex so that new index k is old index order[k]"""
        position = {old: new for new, old in enumerate(order)}
        return SparseMatrix(self.size, self.root_order,
                            {(position[i], position[j]): v for (i, j), v in self.entries.items()})

    def to_entries(self) -> List[Dict]:
        return [{"row": i, "col": j, "value": v.to_terms()} for (i, j), v in self]

    def render(self) -> Dict:
        return {"size": self.size, "entries": [[i, j, str(v)] for (i, j), v in self]}

    def __repr__(self) -> str:
        body = ", ".join(f"({i},{j}): {v}" for (i, j), v in self)
        return f"SparseMatrix({self.size}, {{{body}}})"


def sum_matrices(matrices: Iterable[SparseMatrix], size: int, root_order: int) -> SparseMatrix:
    total = SparseMatrix.zero(size, root_order)
    for m in matrices:
        total = total + m
    return total
