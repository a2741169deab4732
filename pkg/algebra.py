"""
COLOR ALGEBRA ENGINE - GRADED ALGEBRAS
======================================
Structure-constant tables for color Lie (super)algebras, Lie algebras of
order F and color Lie algebras of order 3, with exhaustive validators.

Conventions:
- Every basis element carries a Z_F grade and a degree in the grading group.
- Bilinear constants are stored on whatever ordered pairs were given; the
  other ordering follows [X,Y] = -N(a,b)[Y,X].
- F-ary constants are stored on given orderings (builders use sorted
  tuples). Any other ordering is reached by adjacent swaps, each swap
  costing N(left, right) of the new neighbours. With trivial N this is
  plain full symmetry.
- For F > 1 the bilinear bracket is defined only when one argument has
  Z_F grade 0, and the F-ary bracket only on tuples from one nonzero grade.
- Matrix entry (row, col) of an element of degree a may be nonzero only
  when deg(col) - deg(row) = a and zf(col) - zf(row) = grade (mod F).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import lcm
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from errors import (
    DegreeMismatch, DimensionMismatch, EmptyComponent, GradeMismatch, GradingMismatch,
    InvalidFactor, MissingZfGrading, NotAssociative, NotGraded, SpecFormatError, SymmetryPrecondition,
    UnknownBasisElement, UnsupportedKind,
)
from factor import CommutationFactor, parity_split
from grading import AbelianGroup, GradingMap, GroupElement
from matrices import SparseMatrix
from scalar import CycloScalar, root_of_unity
from schemas import VerificationReport
from sweeps import plan_multisets, plan_product

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, CycloScalar]
Key = Union[int, str]


class AlgebraKind(str, Enum):
    COLOR_LIE = "color_lie"
    COLOR_LIE_SUPER = "color_lie_super"
    LIE_ORDER_F = "lie_order_f"
    COLOR_ORDER3 = "color_order3"

    @property
    def is_color(self) -> bool:
        return self in (AlgebraKind.COLOR_LIE, AlgebraKind.COLOR_LIE_SUPER)

    @property
    def has_f_ary(self) -> bool:
        return self in (AlgebraKind.LIE_ORDER_F, AlgebraKind.COLOR_ORDER3)


def color_kind(factor: CommutationFactor) -> AlgebraKind:
    """Color Lie algebra, or superalgebra when some N(a,a) = -1"""
    return AlgebraKind.COLOR_LIE_SUPER if parity_split(factor).is_super else AlgebraKind.COLOR_LIE


@dataclass(frozen=True)
class BasisElement:
    label: str
    zf_grade: int
    degree: GroupElement

    def to_dict(self) -> Dict:
        return {"label": self.label, "zf_grade": self.zf_grade, "degree": list(self.degree)}


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

class AlgebraElement:
    """Finite linear combination of basis indices with no stored zeros"""

    __slots__ = ("root_order", "terms")

    def __init__(self, root_order: int, terms: Optional[Mapping[int, Number]] = None):
        self.root_order = root_order
        self.terms: Dict[int, CycloScalar] = {}
        for i, c in (terms or {}).items():
            c = _as_scalar(c, root_order)
            if c:
                self.terms[i] = c

    @classmethod
    def zero(cls, root_order: int) -> AlgebraElement:
        return cls(root_order)

    @classmethod
    def basis(cls, root_order: int, index: int, coeff: Number = 1) -> AlgebraElement:
        return cls(root_order, {index: coeff})

    @classmethod
    def _from_dict(cls, root_order: int, terms: Dict[int, CycloScalar]) -> AlgebraElement:
        obj = cls.__new__(cls)
        obj.root_order = root_order
        obj.terms = terms
        return obj

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self) -> List[Tuple[int, CycloScalar]]:
        return sorted(self.terms.items())

    def coefficient(self, index: int) -> CycloScalar:
        return self.terms.get(index) or CycloScalar.zero(self.root_order)

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        acc = dict(self.terms)
        _accumulate(acc, other)
        return AlgebraElement._from_dict(self.root_order, acc)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement._from_dict(self.root_order, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        acc = dict(self.terms)
        _accumulate(acc, other, -1)
        return AlgebraElement._from_dict(self.root_order, acc)

    def scale(self, c: Number) -> AlgebraElement:
        c = _as_scalar(c, self.root_order)
        if not c:
            return AlgebraElement.zero(self.root_order)
        return AlgebraElement._from_dict(self.root_order, {i: c * v for i, v in self.terms.items()})

    def __rmul__(self, c: Number) -> AlgebraElement:
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def lift(self, new_order: int) -> AlgebraElement:
        return AlgebraElement._from_dict(
            new_order, {i: c.lift(new_order) for i, c in self.terms.items()}
        )

    def __repr__(self) -> str:
        return f"AlgebraElement({dict(self.items())})"


def _as_scalar(c: Number, root_order: int) -> CycloScalar:
    if isinstance(c, CycloScalar):
        return c if c.root_order == root_order else c.lift(root_order)
    return CycloScalar.rational(root_order, c)


def _accumulate(acc: Dict[int, CycloScalar], element: AlgebraElement, coeff=None) -> None:
    for i, v in element.terms.items():
        term = v if coeff is None else v * coeff
        if i in acc:
            total = acc[i] + term
            if total:
                acc[i] = total
            else:
                del acc[i]
        elif term:
            acc[i] = term


# ---------------------------------------------------------------------------
# Graded algebra
# ---------------------------------------------------------------------------

class GradedAlgebra:
    """
    Immutable structure-constant table.

    Stored constants are validated on construction: keys must name basis
    elements, the bracket must be defined on them, and values must sit in
    the right degree and Z_F grade. `strict=False` skips only the degree
    check so that corrupted tables can be built for validator tests.
    """

    def __init__(self, kind: Union[AlgebraKind, str], F: int, group: AbelianGroup,
                 factor: CommutationFactor, basis: Sequence[BasisElement],
                 bilinear: Optional[Mapping] = None, f_ary: Optional[Mapping] = None,
                 name: str = "", strict: bool = True):
        self.kind = AlgebraKind(kind)
        self.F = int(F)
        self.group = group
        self.factor = factor
        self.name = name
        self.root_order = factor.root_order
        self.basis: Tuple[BasisElement, ...] = tuple(basis)

        if self.F < 1:
            raise GradeMismatch(f"F must be >= 1, got {self.F}")
        if self.kind.is_color and self.F != 1:
            raise GradeMismatch(f"{self.kind.value} algebras have F = 1, got {self.F}")
        if self.kind == AlgebraKind.COLOR_ORDER3 and self.F != 3:
            raise GradeMismatch(f"color algebras of order 3 have F = 3, got {self.F}")
        if factor.group != group:
            raise InvalidFactor("factor is defined on a different grading group")

        self._index: Dict[str, int] = {}
        for i, b in enumerate(self.basis):
            if b.label in self._index:
                raise SpecFormatError(f"duplicate basis label {b.label!r}")
            if not 0 <= b.zf_grade < self.F:
                raise GradeMismatch(
                    f"basis element {b.label} has Z_F grade {b.zf_grade}, F = {self.F}"
                )
            group.check(b.degree)
            self._index[b.label] = i
        self._degrees = [b.degree for b in self.basis]
        self._grades = [b.zf_grade for b in self.basis]
        self._n_cache: Dict[Tuple[GroupElement, GroupElement], CycloScalar] = {}
        self.degree_violations: List[Tuple[Tuple[int, ...], int]] = []

        self._bilinear: Dict[Tuple[int, int], AlgebraElement] = {}
        for key, value in (bilinear or {}).items():
            i, j = (self._resolve(k) for k in key)
            if not self.bilinear_defined(i, j):
                raise GradeMismatch(
                    f"bracket [{self.basis[i].label}, {self.basis[j].label}] is not defined "
                    f"for Z_F grades {self._grades[i]} and {self._grades[j]}",
                    detail={"left": self.basis[i].label, "right": self.basis[j].label},
                )
            element = self._element(value)
            self._check_degree((i, j), element, strict)
            if element:
                self._bilinear[(i, j)] = element

        self._f_ary: Dict[Tuple[int, ...], AlgebraElement] = {}
        self._f_canonical: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
        for key, value in (f_ary or {}).items():
            t = tuple(self._resolve(k) for k in key)
            self._check_f_domain(t)
            element = self._element(value)
            self._check_degree(t, element, strict)
            if element:
                self._f_ary[t] = element
                self._f_canonical.setdefault(tuple(sorted(t)), t)

    # -- construction helpers ---------------------------------------------

    def _resolve(self, key: Key) -> int:
        if isinstance(key, str):
            if key not in self._index:
                raise UnknownBasisElement(f"unknown basis element {key!r}")
            return self._index[key]
        if not 0 <= key < len(self.basis):
            raise UnknownBasisElement(f"basis index {key} out of range")
        return key

    def _element(self, value) -> AlgebraElement:
        if isinstance(value, AlgebraElement):
            for i in value.terms:
                self._resolve(i)
            return value if value.root_order == self.root_order else value.lift(self.root_order)
        return self.element(value)

    def _check_degree(self, key: Tuple[int, ...], value: AlgebraElement, strict: bool) -> None:
        target = self.group.total([self._degrees[i] for i in key])
        grade = sum(self._grades[i] for i in key) % self.F
        for k in value.terms:
            if self._degrees[k] != target or self._grades[k] != grade:
                labels = [self.basis[i].label for i in key]
                if strict:
                    raise DegreeMismatch(
                        f"constant on {labels} has a term on {self.basis[k].label} "
                        f"(degree {self._degrees[k]}, grade {self._grades[k]}), "
                        f"expected degree {target}, grade {grade}",
                        detail={"args": labels, "term": self.basis[k].label},
                    )
                self.degree_violations.append((key, k))

    def _check_f_domain(self, t: Tuple[int, ...]) -> None:
        labels = [self.basis[i].label for i in t]
        if not self.kind.has_f_ary or self.F < 2:
            raise GradeMismatch(f"{self.kind.value} algebra with F = {self.F} has no F-ary bracket",
                                detail={"args": labels})
        if len(t) != self.F:
            raise GradeMismatch(f"F-ary bracket takes {self.F} arguments, got {len(t)}",
                                detail={"args": labels})
        grades = {self._grades[i] for i in t}
        if len(grades) != 1 or 0 in grades:
            raise GradeMismatch(
                f"F-ary bracket needs arguments from one nonzero grade, got grades {sorted(grades)}",
                detail={"args": labels},
            )

    def replace(self, **changes) -> GradedAlgebra:
        params = dict(kind=self.kind, F=self.F, group=self.group, factor=self.factor,
                      basis=self.basis, bilinear=self._bilinear, f_ary=self._f_ary,
                      name=self.name)
        params.update(changes)
        return GradedAlgebra(**params)

    # -- accessors -----------------------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def labels(self) -> List[str]:
        return [b.label for b in self.basis]

    def index_of(self, label: str) -> int:
        return self._resolve(label)

    def degree(self, i: int) -> GroupElement:
        return self._degrees[i]

    def grade(self, i: int) -> int:
        return self._grades[i]

    @property
    def stored_bilinear(self) -> Dict[Tuple[int, int], AlgebraElement]:
        return dict(sorted(self._bilinear.items()))

    @property
    def stored_f_ary(self) -> Dict[Tuple[int, ...], AlgebraElement]:
        return dict(sorted(self._f_ary.items()))

    def component(self, grade: int) -> List[int]:
        return [i for i, g in enumerate(self._grades) if g == grade]

    def f_domains(self) -> List[List[int]]:
        """Index sets on which the F-ary bracket is defined"""
        if not self.kind.has_f_ary or self.F < 2:
            return []
        return [c for c in (self.component(k) for k in range(1, self.F)) if c]

    def bilinear_defined(self, i: int, j: int) -> bool:
        if self.kind.has_f_ary and self.F > 1:
            return self._grades[i] == 0 or self._grades[j] == 0
        return True

    def element(self, terms: Union[Mapping[Key, Number], Iterable[Tuple[Key, Number]]]) -> AlgebraElement:
        """Build an element from {label or index: coefficient}"""
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[int, CycloScalar] = {}
        for key, c in pairs:
            i = self._resolve(key)
            _accumulate(acc, AlgebraElement.basis(self.root_order, i, _as_scalar(c, self.root_order)))
        return AlgebraElement._from_dict(self.root_order, acc)

    def basis_vector(self, key: Key) -> AlgebraElement:
        return AlgebraElement.basis(self.root_order, self._resolve(key))

    def zero(self) -> AlgebraElement:
        return AlgebraElement.zero(self.root_order)

    def N(self, a: GroupElement, b: GroupElement) -> CycloScalar:
        key = (a, b)
        value = self._n_cache.get(key)
        if value is None:
            value = self.factor(a, b)
            self._n_cache[key] = value
        return value

    def N_basis(self, i: int, j: int) -> CycloScalar:
        return self.N(self._degrees[i], self._degrees[j])

    # -- bracket lookup ------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> AlgebraElement:
        if not self.bilinear_defined(i, j):
            raise GradeMismatch(
                f"bracket [{self.basis[i].label}, {self.basis[j].label}] is not defined",
                detail={"left": self.basis[i].label, "right": self.basis[j].label},
            )
        value = self._bilinear.get((i, j))
        if value is not None:
            return value
        value = self._bilinear.get((j, i))
        if value is not None:
            return value.scale(-self.N_basis(i, j))
        return self.zero()

    def reorder_exponent(self, source: Sequence[int], target: Sequence[int]) -> int:
        """Exponent w with {target} = z^w {source}, via adjacent swaps"""
        current = list(source)
        exponent = 0
        for p, wanted in enumerate(target):
            q = current.index(wanted, p)
            while q > p:
                moving, passed = current[q], current[q - 1]
                exponent += self.factor.exponent(self._degrees[moving], self._degrees[passed])
                current[q - 1], current[q] = moving, passed
                q -= 1
        return exponent % self.root_order

    def f_bracket_basis(self, t: Sequence[int]) -> AlgebraElement:
        t = tuple(t)
        value = self._f_ary.get(t)
        if value is not None:
            return value
        source = self._f_canonical.get(tuple(sorted(t)))
        if source is None:
            return self.zero()
        w = self.reorder_exponent(source, t)
        value = self._f_ary[source]
        return value if w == 0 else value.scale(root_of_unity(self.root_order, w))

    # -- output --------------------------------------------------------------

    def render(self, x: AlgebraElement) -> str:
        if not x:
            return "0"
        parts = []
        for i, c in x.items():
            label = self.basis[i].label
            text = str(c)
            if text == "1":
                parts.append(label)
            elif text == "-1":
                parts.append(f"-{label}")
            elif " " in text:
                parts.append(f"({text})*{label}")
            else:
                parts.append(f"{text}*{label}")
        return " + ".join(parts).replace("+ -", "- ")

    def summary(self) -> Dict:
        return {
            "name": self.name,
            "kind": self.kind.value,
            "F": self.F,
            "group": list(self.group.orders),
            "root_order": self.root_order,
            "dimension": self.dimension,
            "components": {str(k): len(self.component(k)) for k in range(self.F)},
            "bilinear_entries": len(self._bilinear),
            "f_ary_entries": len(self._f_ary),
        }

    def __repr__(self) -> str:
        return f"GradedAlgebra({self.name or self.kind.value}, dim={self.dimension})"


# ---------------------------------------------------------------------------
# Bracket evaluation
# ---------------------------------------------------------------------------

def _check_element(A: GradedAlgebra, x: AlgebraElement) -> None:
    for i in x.terms:
        if not 0 <= i < A.dimension:
            raise UnknownBasisElement(f"basis index {i} is not in {A.name or 'the algebra'}")


def bracket_eval(A: GradedAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _check_element(A, x)
    _check_element(A, y)
    acc: Dict[int, CycloScalar] = {}
    for i, a in x.terms.items():
        for j, b in y.terms.items():
            value = A.bracket_basis(i, j)
            if value:
                _accumulate(acc, value, a * b)
    return AlgebraElement._from_dict(A.root_order, acc)


def f_bracket_eval(A: GradedAlgebra, *ys: AlgebraElement) -> AlgebraElement:
    if not A.kind.has_f_ary or A.F < 2:
        raise UnsupportedKind(f"{A.kind.value} algebra has no F-ary bracket")
    if len(ys) != A.F:
        raise GradeMismatch(f"F-ary bracket takes {A.F} arguments, got {len(ys)}")
    grades = set()
    for y in ys:
        _check_element(A, y)
        grades.update(A.grade(i) for i in y.terms)
    if 0 in grades or len(grades) > 1:
        raise GradeMismatch(
            f"F-ary bracket needs arguments from one nonzero grade, got grades {sorted(grades)}"
        )
    acc: Dict[int, CycloScalar] = {}
    partial: List[Tuple[Tuple[int, ...], CycloScalar]] = [((), CycloScalar.one(A.root_order))]
    for y in ys:
        partial = [(t + (i,), c * v) for t, c in partial for i, v in y.terms.items()]
    for t, c in partial:
        value = A.f_bracket_basis(t)
        if value:
            _accumulate(acc, value, c)
    return AlgebraElement._from_dict(A.root_order, acc)


def weighted_product(degrees: Sequence[GroupElement], factor: CommutationFactor,
                     word: Callable[[Tuple[int, ...]], object], zero):
    """
    Sum over orderings p of the positions of
    prod_{i<j, j before i in p} N(a_i, a_j) * word(p).
    `word` receives the ordering of positions and returns a matrix or element.
    """
    n = len(degrees)
    L = factor.root_order
    total = zero
    for order in permutations(range(n)):
        exponent = 0
        for x in range(n):
            for y in range(x + 1, n):
                if order[x] > order[y]:
                    exponent += factor.exponent(degrees[order[y]], degrees[order[x]])
        value = word(order)
        if exponent % L:
            value = value.scale(root_of_unity(L, exponent))
        total = total + value
    return total


# ---------------------------------------------------------------------------
# Validators
# ---------------------------------------------------------------------------

def _labels(A: GradedAlgebra, t: Iterable[int]) -> List[str]:
    return [A.basis[i].label for i in t]


def check_symmetries(A: GradedAlgebra) -> VerificationReport:
    """(Anti)symmetry with factor of both brackets, plus degree compatibility"""
    report = VerificationReport(name="symmetries")
    n = A.dimension

    for key, k in A.degree_violations:
        report.record("degree", _labels(A, key), A.basis[k].label, "degree-compatible support")
    report.count("degree", len(A.stored_bilinear) + len(A.stored_f_ary) + len(A.degree_violations))

    stored = A.stored_bilinear
    pairs = 0
    for i in range(n):
        for j in range(i, n):
            if not A.bilinear_defined(i, j):
                continue
            pairs += 1
            report.count("antisymmetry")
            forward = stored.get((i, j))
            backward = stored.get((j, i))
            if i == j:
                if forward is not None and forward != forward.scale(-A.N_basis(i, i)):
                    report.record("antisymmetry", _labels(A, (i, i)),
                                  A.render(forward), A.render(forward.scale(-A.N_basis(i, i))))
            elif forward is not None and backward is not None:
                expected = backward.scale(-A.N_basis(i, j))
                if forward != expected:
                    report.record("antisymmetry", _labels(A, (i, j)),
                                  A.render(forward), A.render(expected))
    report.note_space(pairs, False, None)

    groups: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}
    for t in A.stored_f_ary:
        groups.setdefault(tuple(sorted(t)), []).append(t)
    f_ary = A.stored_f_ary
    for canonical, orderings in sorted(groups.items()):
        report.count("f_ary_symmetry")
        source = A._f_canonical[canonical]
        value = f_ary[source]
        for other in orderings:
            if other == source:
                continue
            expected = value.scale(root_of_unity(A.root_order, A.reorder_exponent(source, other)))
            if f_ary[other] != expected:
                report.record("f_ary_symmetry", _labels(A, other),
                              A.render(f_ary[other]), A.render(expected))
        for x, y in zip(canonical, canonical[1:]):
            if x == y and A.N_basis(x, x) != 1:
                report.record("f_ary_symmetry", _labels(A, canonical), A.render(value), "0")
                break
    report.note_space(len(groups), False, None)

    logger.debug("symmetries of %s: %s", A.name, report.status.value)
    return report


def _color_identity(A: GradedAlgebra, report: VerificationReport, identity: str,
                    i: int, j: int, k: int) -> None:
    """[X,[Y,Z]] = [[X,Y],Z] + N(a,b)[Y,[X,Z]]"""
    x, y, z = (A.basis_vector(m) for m in (i, j, k))
    lhs = bracket_eval(A, x, A.bracket_basis(j, k))
    rhs = bracket_eval(A, A.bracket_basis(i, j), z)
    rhs = rhs + bracket_eval(A, y, A.bracket_basis(i, k)).scale(A.N_basis(i, j))
    report.count(identity)
    if lhs != rhs:
        report.record(identity, _labels(A, (i, j, k)), A.render(lhs), A.render(rhs))


def _derivation_identity(A: GradedAlgebra, report: VerificationReport,
                         x: int, t: Tuple[int, ...]) -> None:
    """[X,{Y_1..Y_F}] = sum_i N(a, b_1+..+b_{i-1}) {Y_1,..,[X,Y_i],..,Y_F}"""
    a = A.degree(x)
    X = A.basis_vector(x)
    lhs = bracket_eval(A, X, A.f_bracket_basis(t))
    rhs = A.zero()
    preceding = A.group.zero()
    for pos, y in enumerate(t):
        moved = A.bracket_basis(x, y)
        if moved:
            args = [A.basis_vector(m) for m in t]
            args[pos] = moved
            rhs = rhs + f_bracket_eval(A, *args).scale(A.N(a, preceding))
        preceding = A.group.add(preceding, A.degree(y))
    report.count("derivation")
    if lhs != rhs:
        report.record("derivation", _labels(A, (x,) + t), A.render(lhs), A.render(rhs))


def _cyclic_identity(A: GradedAlgebra, report: VerificationReport, t: Tuple[int, ...]) -> None:
    """sum_i prod_{j<i} N(a_j, S - a_j) [Y_i, {Y_{i+1}, .., Y_{i-1}}] = 0"""
    degrees = [A.degree(m) for m in t]
    S = A.group.total(degrees)
    total = A.zero()
    exponent = 0
    for i in range(len(t)):
        rest = t[i + 1:] + t[:i]
        term = bracket_eval(A, A.basis_vector(t[i]), A.f_bracket_basis(rest))
        if term:
            total = total + term.scale(root_of_unity(A.root_order, exponent))
        exponent += A.factor.exponent(degrees[i], A.group.sub(S, degrees[i]))
    report.count("cyclic")
    if total:
        report.record("cyclic", _labels(A, t), A.render(total), "0")


def check_jacobi(A: GradedAlgebra, budget: Optional[int] = None, seed: int = 0) -> VerificationReport:
    """
    Every Jacobi identity of the algebra's kind, swept over basis tuples.
    Requires check_symmetries to pass.
    """
    symmetries = check_symmetries(A)
    if not symmetries.passed:
        first = symmetries.counterexamples[0]
        raise SymmetryPrecondition(
            f"{A.name or 'algebra'} fails {first.identity} at {first.witness}; "
            "Jacobi identities are not checked",
            detail=first.to_dict(),
        )
    report = VerificationReport(name="jacobi")
    everything = list(range(A.dimension))

    if A.kind.is_color or A.F == 1:
        plan = plan_product([everything] * 3, budget, seed)
        report.note_space(plan.total, plan.sampled, plan.seed)
        for i, j, k in plan:
            _color_identity(A, report, "color_jacobi", i, j, k)
        return report

    g0 = A.component(0)
    plan = plan_product([g0] * 3, budget, seed)
    report.note_space(plan.total, plan.sampled, plan.seed)
    for i, j, k in plan:
        _color_identity(A, report, "jacobi_g0", i, j, k)

    modules = [i for i in everything if A.grade(i) != 0]
    plan = plan_product([g0, g0, modules], budget, seed)
    report.note_space(plan.total, plan.sampled, plan.seed)
    for i, j, k in plan:
        _color_identity(A, report, "jacobi_module", i, j, k)

    for domain in A.f_domains():
        plan = plan_product([g0] + [domain] * A.F, budget, seed)
        report.note_space(plan.total, plan.sampled, plan.seed)
        for t in plan:
            _derivation_identity(A, report, t[0], tuple(t[1:]))
        plan = plan_product([domain] * (A.F + 1), budget, seed)
        report.note_space(plan.total, plan.sampled, plan.seed)
        for t in plan:
            _cyclic_identity(A, report, tuple(t))

    logger.info("jacobi for %s: %d checks, %s", A.name, report.checks_run, report.status.value)
    return report


# ---------------------------------------------------------------------------
# Associative envelopes
# ---------------------------------------------------------------------------

class AssociativeAlgebra:
    """Graded basis with a sparse product table e_i e_j = sum_k c_k e_k"""

    def __init__(self, group: AbelianGroup, root_order: int, basis: Sequence[BasisElement],
                 products: Mapping[Tuple[int, int], Union[AlgebraElement, Mapping]],
                 F: int = 1, factor: Optional[CommutationFactor] = None, name: str = ""):
        self.group = group
        self.root_order = root_order
        self.basis = tuple(basis)
        self.F = F
        self.factor = factor
        self.name = name
        self._degrees = [b.degree for b in self.basis]
        self._grades = [b.zf_grade % F for b in self.basis]
        self._products: Dict[Tuple[int, int], AlgebraElement] = {}
        n = len(self.basis)
        for (i, j), value in products.items():
            if not (0 <= i < n and 0 <= j < n):
                raise UnknownBasisElement(f"product key ({i}, {j}) outside the basis")
            if not isinstance(value, AlgebraElement):
                value = AlgebraElement(root_order, value)
            elif value.root_order != root_order:
                value = value.lift(root_order)
            target = group.add(self._degrees[i], self._degrees[j])
            grade = (self._grades[i] + self._grades[j]) % F
            for k in value.terms:
                if self._degrees[k] != target or self._grades[k] != grade:
                    raise NotGraded(
                        f"product {self.basis[i].label}*{self.basis[j].label} has a term on "
                        f"{self.basis[k].label}",
                        detail={"left": self.basis[i].label, "right": self.basis[j].label,
                                "term": self.basis[k].label},
                    )
            if value:
                self._products[(i, j)] = value

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def degree(self, i: int) -> GroupElement:
        return self._degrees[i]

    def product_basis(self, i: int, j: int) -> AlgebraElement:
        return self._products.get((i, j)) or AlgebraElement.zero(self.root_order)

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        acc: Dict[int, CycloScalar] = {}
        for i, a in x.terms.items():
            for j, b in y.terms.items():
                value = self._products.get((i, j))
                if value:
                    _accumulate(acc, value, a * b)
        return AlgebraElement._from_dict(self.root_order, acc)

    def word(self, indices: Sequence[int]) -> AlgebraElement:
        result = AlgebraElement.basis(self.root_order, indices[0])
        for i in indices[1:]:
            result = self.multiply(result, AlgebraElement.basis(self.root_order, i))
        return result

    def render(self, x: AlgebraElement) -> str:
        if not x:
            return "0"
        return " + ".join(f"({c})*{self.basis[i].label}" for i, c in x.items())


def check_associative(A: AssociativeAlgebra, budget: Optional[int] = None,
                      seed: int = 0) -> VerificationReport:
    report = VerificationReport(name="associativity")
    everything = list(range(A.dimension))
    plan = plan_product([everything] * 3, budget, seed)
    report.note_space(plan.total, plan.sampled, plan.seed)
    for i, j, k in plan:
        report.count("associativity")
        left = A.multiply(A.product_basis(i, j), AlgebraElement.basis(A.root_order, k))
        right = A.multiply(AlgebraElement.basis(A.root_order, i), A.product_basis(j, k))
        if left != right:
            report.record("associativity", [A.basis[m].label for m in (i, j, k)],
                          A.render(left), A.render(right))
    return report


def from_associative(kind: Union[AlgebraKind, str], A: AssociativeAlgebra,
                     factor: Optional[CommutationFactor] = None, name: str = "",
                     budget: Optional[int] = None, seed: int = 0) -> GradedAlgebra:
    """
    Commutator-type brackets of an associative graded algebra:
    [x,y] = xy - N(a,b)yx, and the N-weighted symmetrized F-fold product.
    """
    kind = AlgebraKind(kind)
    associativity = check_associative(A, budget, seed)
    if not associativity.passed:
        first = associativity.counterexamples[0]
        raise NotAssociative(
            f"{A.name or 'input'} is not associative at {first.witness}",
            detail=first.to_dict(),
        )
    F = 1 if kind.is_color else (3 if kind == AlgebraKind.COLOR_ORDER3 else A.F)
    if kind.is_color and any(b.zf_grade % A.F for b in A.basis):
        raise GradeMismatch("color Lie algebras need every basis element in Z_F grade 0")
    if kind.has_f_ary and A.F != F:
        raise GradeMismatch(f"{kind.value} needs a Z_{F}-graded input, got Z_{A.F}")

    factor = factor or A.factor or CommutationFactor.trivial(A.group, A.root_order)
    L = lcm(factor.root_order, A.root_order)
    factor = factor.lift(L)
    basis = [BasisElement(b.label, b.zf_grade % F, b.degree) for b in A.basis]
    shell = GradedAlgebra(kind, F, A.group, factor, basis, name=name or A.name)

    bilinear: Dict[Tuple[int, int], AlgebraElement] = {}
    n = A.dimension
    for i in range(n):
        for j in range(i, n):
            if not shell.bilinear_defined(i, j):
                continue
            value = A.product_basis(i, j).lift(L) - A.product_basis(j, i).lift(L).scale(
                shell.N_basis(i, j))
            if value:
                bilinear[(i, j)] = value

    f_ary: Dict[Tuple[int, ...], AlgebraElement] = {}
    for domain in shell.f_domains():
        for t in combinations_with_replacement(domain, F):
            words: Dict[Tuple[int, ...], AlgebraElement] = {}

            def word(order, t=t, words=words):
                key = tuple(t[p] for p in order)
                if key not in words:
                    words[key] = A.word(key).lift(L)
                return words[key]

            value = weighted_product([A.degree(i) for i in t], factor, word,
                                     AlgebraElement.zero(L))
            if value:
                f_ary[t] = value

    logger.debug("%s from associative %s: %d bilinear, %d F-ary constants",
                 kind.value, A.name, len(bilinear), len(f_ary))
    return shell.replace(bilinear=bilinear, f_ary=f_ary)


def extract_elementary(A: GradedAlgebra, i: int) -> GradedAlgebra:
    """g_0 + g_i as an elementary algebra, g_i relabelled as grade 1"""
    if not A.kind.has_f_ary or A.F < 2:
        raise UnsupportedKind(f"{A.kind.value} algebra with F = {A.F} has no graded components")
    if not 1 <= i < A.F:
        raise GradeMismatch(f"component index must be in 1..{A.F - 1}, got {i}")
    kept = [k for k in range(A.dimension) if A.grade(k) in (0, i)]
    if not any(A.grade(k) == i for k in kept):
        raise EmptyComponent(f"component g_{i} of {A.name or 'the algebra'} is empty")
    position = {old: new for new, old in enumerate(kept)}

    def remap(value: AlgebraElement) -> AlgebraElement:
        return AlgebraElement._from_dict(
            value.root_order, {position[k]: c for k, c in value.terms.items()}
        )

    basis = [BasisElement(A.basis[k].label, 1 if A.grade(k) == i else 0, A.degree(k)) for k in kept]
    bilinear = {
        (position[p], position[q]): remap(v)
        for (p, q), v in A.stored_bilinear.items() if p in position and q in position
    }
    f_ary = {
        tuple(position[p] for p in t): remap(v)
        for t, v in A.stored_f_ary.items() if all(p in position for p in t)
    }
    return GradedAlgebra(A.kind, A.F, A.group, A.factor, basis, bilinear, f_ary,
                         name=f"{A.name}_el{i}" if A.name else "")


def lift_algebra(A: GradedAlgebra, new_order: int) -> GradedAlgebra:
    return A.replace(
        factor=A.factor.lift(new_order),
        bilinear={k: v.lift(new_order) for k, v in A.stored_bilinear.items()},
        f_ary={k: v.lift(new_order) for k, v in A.stored_f_ary.items()},
    )


def compare_tables(A: GradedAlgebra, B: GradedAlgebra, check_kind: bool = True) -> VerificationReport:
    """Basis-by-label comparison of kind, grading and every bracket value"""
    report = VerificationReport(name="table_equality")
    structure = [("kind", A.kind.value, B.kind.value)] if check_kind else []
    structure += [
        ("F", A.F, B.F),
        ("group", list(A.group.orders), list(B.group.orders)),
        ("labels", sorted(A.labels), sorted(B.labels)),
    ]
    for what, left, right in structure:
        report.count("structure")
        if left != right:
            report.record("structure", [what], left, right)
    if not report.passed:
        return report
    for b in A.basis:
        other = B.basis[B.index_of(b.label)]
        report.count("structure")
        if (b.zf_grade, b.degree) != (other.zf_grade, other.degree):
            report.record("structure", [b.label], b.to_dict(), other.to_dict())
    if not report.passed:
        return report

    L = lcm(A.root_order, B.root_order)
    A, B = lift_algebra(A, L), lift_algebra(B, L)
    to_b = [B.index_of(label) for label in A.labels]

    def translate(x: AlgebraElement) -> AlgebraElement:
        return AlgebraElement._from_dict(L, {to_b[k]: c for k, c in x.terms.items()})

    n = A.dimension
    for i in range(n):
        for j in range(n):
            if not A.bilinear_defined(i, j):
                continue
            report.count("bilinear")
            left = translate(A.bracket_basis(i, j))
            right = B.bracket_basis(to_b[i], to_b[j])
            if left != right:
                report.record("bilinear", _labels(A, (i, j)), B.render(left), B.render(right))
    for domain in A.f_domains():
        for t in combinations_with_replacement(domain, A.F):
            report.count("f_ary")
            left = translate(A.f_bracket_basis(t))
            right = B.f_bracket_basis([to_b[k] for k in t])
            if left != right:
                report.record("f_ary", _labels(A, t), B.render(left), B.render(right))
    report.note_space(report.checks_run, False, None)
    return report


def tables_equal(A: GradedAlgebra, B: GradedAlgebra) -> bool:
    return compare_tables(A, B).passed


# ---------------------------------------------------------------------------
# Representations
# ---------------------------------------------------------------------------

@dataclass
class MatrixRep:
    """Matrices for basis labels on a graded vector space"""
    dimension: int
    zf_grades: Optional[Tuple[int, ...]]
    degree_map: GradingMap
    matrices: Dict[str, SparseMatrix] = field(default_factory=dict)
    name: str = ""

    def lift(self, new_order: int) -> MatrixRep:
        return MatrixRep(self.dimension, self.zf_grades, self.degree_map,
                         {k: m.lift(new_order) for k, m in self.matrices.items()}, self.name)

    def grades_for(self, F: int) -> Tuple[int, ...]:
        """Z_F grades of the carrier space; ungraded spaces are fine only for F = 1"""
        if self.zf_grades is None:
            if F == 1:
                return (0,) * self.dimension
            raise MissingZfGrading(
                f"representation {self.name or ''} has no Z_{F} grading of its carrier space"
            )
        if len(self.zf_grades) != self.dimension:
            raise MissingZfGrading(
                f"representation of dimension {self.dimension} has {len(self.zf_grades)} Z_F grades"
            )
        return tuple(self.zf_grades)


def _rep_table(A: GradedAlgebra, R: MatrixRep, L: int) -> List[SparseMatrix]:
    if R.degree_map.domain_size != R.dimension:
        raise DimensionMismatch(
            f"representation of dimension {R.dimension} has {R.degree_map.domain_size} degrees"
        )
    R.grades_for(A.F)
    if R.degree_map.group != A.group:
        raise GradingMismatch("representation is graded by a different group")
    for label, m in R.matrices.items():
        A.index_of(label)
        if m.size != R.dimension:
            raise DimensionMismatch(
                f"matrix for {label} is {m.size}x{m.size}, representation dimension is {R.dimension}"
            )
    zero = SparseMatrix.zero(R.dimension, L)
    return [
        R.matrices[b.label].lift(L) if b.label in R.matrices else zero
        for b in A.basis
    ]


def _rho(table: List[SparseMatrix], x: AlgebraElement, size: int, L: int) -> SparseMatrix:
    total = SparseMatrix.zero(size, L)
    for i, c in x.terms.items():
        if table[i]:
            total = total + table[i].scale(c.lift(L))
    return total


def _check_rep_grading(report: VerificationReport, labels: List[str], degrees: List[GroupElement],
                       grades: List[int], F: int, R: MatrixRep, table: List[SparseMatrix]) -> None:
    group = R.degree_map.group
    zf = R.grades_for(F)
    for k, m in enumerate(table):
        report.count("grading")
        for (row, col), value in m:
            shift = group.sub(R.degree_map[col], R.degree_map[row])
            zf_shift = (zf[col] - zf[row]) % F
            if shift != degrees[k] or zf_shift != grades[k] % F:
                report.record("grading", [labels[k], f"({row},{col})"], str(value),
                              f"entry allowed only where degree shift is {degrees[k]}")
                break


def check_representation(A: GradedAlgebra, R: MatrixRep, budget: Optional[int] = None,
                         seed: int = 0) -> VerificationReport:
    """rho of every bracket equals the matching matrix combination"""
    report = VerificationReport(name="representation")
    L = lcm(A.root_order, *(m.root_order for m in R.matrices.values()))
    A_lifted = A if L == A.root_order else lift_algebra(A, L)
    table = _rep_table(A_lifted, R, L)
    n = R.dimension
    _check_rep_grading(report, A.labels, [A.degree(i) for i in range(A.dimension)],
                       [A.grade(i) for i in range(A.dimension)], A.F, R, table)

    everything = list(range(A.dimension))
    plan = plan_product([everything, everything], budget, seed)
    report.note_space(plan.total, plan.sampled, plan.seed)
    for i, j in plan:
        if not A_lifted.bilinear_defined(i, j):
            continue
        report.count("bilinear")
        lhs = table[i] @ table[j] - (table[j] @ table[i]).scale(A_lifted.N_basis(i, j))
        rhs = _rho(table, A_lifted.bracket_basis(i, j), n, L)
        if lhs != rhs:
            report.record("bilinear", _labels(A, (i, j)), lhs.render(), rhs.render())

    for domain in A_lifted.f_domains():
        plan = plan_multisets(domain, A.F, budget, seed)
        report.note_space(plan.total, plan.sampled, plan.seed)
        for t in plan:
            report.count("f_ary")

            def word(order, t=t):
                m = table[t[order[0]]]
                for p in order[1:]:
                    m = m @ table[t[p]]
                return m

            lhs = weighted_product([A.degree(i) for i in t], A_lifted.factor, word,
                                   SparseMatrix.zero(n, L))
            rhs = _rho(table, A_lifted.f_bracket_basis(t), n, L)
            if lhs != rhs:
                report.record("f_ary", _labels(A, t), lhs.render(), rhs.render())

    logger.info("representation of %s: %d checks, %s", A.name, report.checks_run,
                report.status.value)
    return report


def check_associative_representation(A: AssociativeAlgebra, R: MatrixRep,
                                     budget: Optional[int] = None, seed: int = 0) -> VerificationReport:
    """rho(e_i e_j) = rho(e_i) rho(e_j) on every basis pair"""
    report = VerificationReport(name="associative_representation")
    L = lcm(A.root_order, *(m.root_order for m in R.matrices.values()))
    labels = [b.label for b in A.basis]
    zero = SparseMatrix.zero(R.dimension, L)
    for label, m in R.matrices.items():
        if label not in labels:
            raise UnknownBasisElement(f"unknown basis element {label!r}")
        if m.size != R.dimension:
            raise DimensionMismatch(f"matrix for {label} has size {m.size}, expected {R.dimension}")
    table = [R.matrices[l].lift(L) if l in R.matrices else zero for l in labels]
    _check_rep_grading(report, labels, [A.degree(i) for i in range(A.dimension)],
                       [b.zf_grade for b in A.basis], A.F, R, table)
    everything = list(range(A.dimension))
    plan = plan_product([everything, everything], budget, seed)
    report.note_space(plan.total, plan.sampled, plan.seed)
    for i, j in plan:
        report.count("product")
        lhs = table[i] @ table[j]
        rhs = _rho(table, A.product_basis(i, j).lift(L), R.dimension, L)
        if lhs != rhs:
            report.record("product", [labels[i], labels[j]], lhs.render(), rhs.render())
    return report


def adjoint_embedding(A: GradedAlgebra) -> MatrixRep:
    """(ad X_a) e_b = sum_c C_ab^c e_c, column-vector convention"""
    if not A.kind.is_color:
        raise UnsupportedKind(f"adjoint embedding needs a color Lie algebra, got {A.kind.value}")
    n = A.dimension
    matrices = {}
    for a in range(n):
        entries = {}
        for b in range(n):
            for c, value in A.bracket_basis(a, b).terms.items():
                entries[(c, b)] = value
        matrices[A.basis[a].label] = SparseMatrix(n, A.root_order, entries)
    degrees = GradingMap(A.group, tuple(A.degree(i) for i in range(n))).negated()
    return MatrixRep(n, (0,) * n, degrees, matrices, name=f"ad({A.name})" if A.name else "ad")
