"""
COLOR ALGEBRA ENGINE - COMMUTATION FACTORS AND MULTIPLIERS
==========================================================
Bicharacters N(a,b) = z_L^(a^T B b), their parity split, the sign-twisted
factor N_plus(a,b) = (-1)^(|a||b|) N(a,b), and triangular bicharacter
multipliers sigma used for decoloration.

Validators sweep the full value table and report the first counterexample
per axiom in lexicographic order; they never raise on a violation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import Dict, Optional, Sequence, Tuple

from errors import InvalidFactor, NoBicharacterMultiplier, ParityNotLinear, MultiplierMismatch
from grading import AbelianGroup, GroupElement, product_group
from scalar import CycloScalar, root_of_unity
from schemas import VerificationReport
from sweeps import plan_product

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, ...], ...]


@lru_cache(maxsize=None)
def _zeta(L: int, k: int) -> CycloScalar:
    return root_of_unity(L, k)


def _square(group: AbelianGroup, exponents: Sequence[Sequence[int]], L: int, what: str) -> Matrix:
    p = group.rank
    rows = tuple(tuple(int(x) % L for x in row) for row in exponents)
    if len(rows) != p or any(len(row) != p for row in rows):
        raise InvalidFactor(
            f"{what} exponent matrix must be {p}x{p} for group Z{list(group.orders)}",
            detail={"exponents": [list(r) for r in exponents]},
        )
    return rows


class _ExponentForm:
    """Shared evaluation of z_L^(a^T M b)"""

    group: AbelianGroup
    root_order: int
    exponents: Matrix

    def exponent(self, a: GroupElement, b: GroupElement) -> int:
        total = 0
        for i, ai in enumerate(a):
            if ai:
                row = self.exponents[i]
                for j, bj in enumerate(b):
                    if bj:
                        total += ai * row[j] * bj
        return total % self.root_order

    def __call__(self, a: GroupElement, b: GroupElement) -> CycloScalar:
        return _zeta(self.root_order, self.exponent(a, b))

    def is_trivial(self) -> bool:
        return not any(any(row) for row in self.exponents)

    def scaled_exponents(self, new_order: int) -> Matrix:
        if new_order % self.root_order:
            raise ValueError(f"{new_order} is not a multiple of {self.root_order}")
        step = new_order // self.root_order
        return tuple(tuple(x * step for x in row) for row in self.exponents)


@dataclass(frozen=True)
class CommutationFactor(_ExponentForm):
    """N(a,b) = z_L^(a^T B b) on a finite abelian group"""
    group: AbelianGroup
    root_order: int
    exponents: Matrix

    def __post_init__(self):
        object.__setattr__(
            self, "exponents", _square(self.group, self.exponents, self.root_order, "factor")
        )

    @classmethod
    def trivial(cls, group: AbelianGroup, root_order: Optional[int] = None) -> CommutationFactor:
        L = root_order or lcm(2, group.exponent)
        return cls(group, L, tuple((0,) * group.rank for _ in range(group.rank)))

    def lift(self, new_order: int) -> CommutationFactor:
        if new_order == self.root_order:
            return self
        return CommutationFactor(self.group, new_order, self.scaled_exponents(new_order))

    def to_dict(self) -> Dict:
        return {"root_order": self.root_order, "exponents": [list(r) for r in self.exponents]}


@dataclass(frozen=True)
class Multiplier(_ExponentForm):
    """Bicharacter 2-cocycle sigma(a,b) = z_L^(a^T S b)"""
    group: AbelianGroup
    root_order: int
    exponents: Matrix

    def __post_init__(self):
        object.__setattr__(
            self, "exponents", _square(self.group, self.exponents, self.root_order, "multiplier")
        )

    def inverse(self) -> Multiplier:
        return Multiplier(self.group, self.root_order,
                          tuple(tuple(-x for x in row) for row in self.exponents))

    def lift(self, new_order: int) -> Multiplier:
        if new_order == self.root_order:
            return self
        return Multiplier(self.group, new_order, self.scaled_exponents(new_order))

    def to_dict(self) -> Dict:
        return {"root_order": self.root_order, "exponents": [list(r) for r in self.exponents]}


@dataclass(frozen=True)
class ParitySplit:
    """Z_2 grading |a| induced by N(a,a) = (-1)^|a|, as a linear form on residues"""
    group: AbelianGroup
    weights: Tuple[int, ...]

    def __call__(self, a: GroupElement) -> int:
        return sum(w * x for w, x in zip(self.weights, a)) % 2

    @property
    def parity(self) -> Dict[GroupElement, int]:
        return {a: self(a) for a in self.group.elements}

    @property
    def is_super(self) -> bool:
        return any(self.weights)

    @property
    def odd_elements(self) -> Tuple[GroupElement, ...]:
        return tuple(a for a in self.group.elements if self(a))


# ---------------------------------------------------------------------------
# Named factors
# ---------------------------------------------------------------------------

def clifford_factor(n: int, p: int = 2) -> CommutationFactor:
    """q^(sum_{i<j} a_i b_j - a_j b_i) on Z_n^p with q = z_n"""
    L = lcm(2, n)
    step = L // n
    rows = tuple(
        tuple(step if i < j else (-step if i > j else 0) for j in range(p)) for i in range(p)
    )
    return CommutationFactor(AbelianGroup((n,) * p), L, rows)


def product_factor(*factors: CommutationFactor) -> CommutationFactor:
    """N(a,b) = prod_k N_k(a_k, b_k) on the product group"""
    group = product_group(*(f.group for f in factors))
    L = lcm(2, *(f.root_order for f in factors))
    size = group.rank
    rows = [[0] * size for _ in range(size)]
    offset = 0
    for f in factors:
        block = f.scaled_exponents(L)
        for i, row in enumerate(block):
            for j, x in enumerate(row):
                rows[offset + i][offset + j] = x
        offset += f.group.rank
    return CommutationFactor(group, L, tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def evaluate_factor(N: CommutationFactor, a: GroupElement, b: GroupElement) -> CycloScalar:
    N.group.check(a)
    N.group.check(b)
    return N(a, b)


def validate_factor(N: CommutationFactor, budget: Optional[int] = None,
                    seed: int = 0) -> VerificationReport:
    """Sweep the commutation-factor axioms over all pairs and triples"""
    G = N.group
    L = N.root_order
    report = VerificationReport(name="factor_axioms")
    elements = G.elements

    plan = plan_product([elements, elements], budget, seed)
    report.note_space(plan.total, plan.sampled, plan.seed)
    for a, b in plan:
        report.count("antisymmetry")
        if (N.exponent(a, b) + N.exponent(b, a)) % L:
            report.record("antisymmetry", [a, b], str(N(a, b) * N(b, a)), "1")

    plan = plan_product([elements, elements, elements], budget, seed)
    report.note_space(2 * plan.total, plan.sampled, plan.seed)
    for a, b, c in plan:
        report.count("bicharacter_right")
        if (N.exponent(a, G.add(b, c)) - N.exponent(a, b) - N.exponent(a, c)) % L:
            report.record("bicharacter_right", [a, b, c],
                          str(N(a, G.add(b, c))), str(N(a, b) * N(a, c)))
        report.count("bicharacter_left")
        if (N.exponent(G.add(a, b), c) - N.exponent(a, c) - N.exponent(b, c)) % L:
            report.record("bicharacter_left", [a, b, c],
                          str(N(G.add(a, b), c)), str(N(a, c) * N(b, c)))

    for a in elements:
        report.count("self_sign")
        if (2 * N.exponent(a, a)) % L:
            report.record("self_sign", [a], str(N(a, a)), "+1 or -1")
    report.total += len(elements)

    logger.debug("factor axioms: %d checks, %s", report.checks_run, report.status.value)
    return report


def parity_split(N: CommutationFactor) -> ParitySplit:
    L = N.root_order
    for a in N.group.elements:
        e = N.exponent(a, a)
        if e and 2 * e != L:
            raise InvalidFactor(
                f"N{a, a} = {N(a, a)} is not +1 or -1",
                detail={"element": list(a)},
            )
    weights = tuple(
        1 if n > 1 and N.exponent(N.group.generator(i), N.group.generator(i)) else 0
        for i, n in enumerate(N.group.orders)
    )
    split = ParitySplit(N.group, weights)
    for a in N.group.elements:
        if (1 if N.exponent(a, a) else 0) != split(a):
            raise ParityNotLinear(
                f"parity of {a} is not a linear form in the residues",
                detail={"element": list(a)},
            )
    return split


def sign_factor(N: CommutationFactor) -> CommutationFactor:
    """(-1)^(|a||b|) as a commutation factor, doubling L when it is odd"""
    split = parity_split(N)
    L = N.root_order if N.root_order % 2 == 0 else 2 * N.root_order
    half = L // 2
    w = split.weights
    rows = tuple(tuple(half * wi * wj for wj in w) for wi in w)
    return CommutationFactor(N.group, L, rows)


def n_plus(N: CommutationFactor) -> CommutationFactor:
    split = parity_split(N)
    if not split.is_super:
        return N
    base = N if N.root_order % 2 == 0 else N.lift(2 * N.root_order)
    signs = sign_factor(base)
    rows = tuple(
        tuple(b + s for b, s in zip(brow, srow))
        for brow, srow in zip(base.exponents, signs.exponents)
    )
    plus = CommutationFactor(N.group, base.root_order, rows)
    for a in N.group.elements:
        if plus.exponent(a, a):
            raise ParityNotLinear(
                f"N_plus{a, a} = {plus(a, a)} after sign twist",
                detail={"element": list(a)},
            )
    return plus


def bicharacter_multiplier(N_plus: CommutationFactor) -> Multiplier:
    """
    Triangular splitting S_ij = -B_ij (i > j), 0 (i < j), S_ii = -B_ii / 2,
    so that sigma(a,b) / sigma(b,a) = N_plus(a,b)^-1.
    """
    for a in N_plus.group.elements:
        if N_plus.exponent(a, a):
            raise InvalidFactor(
                f"N_plus{a, a} = {N_plus(a, a)}, expected 1",
                detail={"element": list(a)},
            )
    factor = N_plus
    if any(factor.exponents[i][i] % 2 for i in range(factor.group.rank)):
        factor = factor.lift(2 * factor.root_order)
    L = factor.root_order
    B = factor.exponents
    p = factor.group.rank
    rows = []
    for i in range(p):
        row = []
        for j in range(p):
            if i > j:
                row.append(-B[i][j] % L)
            elif i == j:
                row.append((-(B[i][i] // 2)) % L)
            else:
                row.append(0)
        rows.append(tuple(row))
    orders = factor.group.orders
    for i in range(p):
        for j in range(p):
            if (orders[i] * rows[i][j]) % L or (orders[j] * rows[i][j]) % L:
                raise NoBicharacterMultiplier(
                    f"splitting entry S[{i}][{j}] = {rows[i][j]} is not well defined on "
                    f"Z{orders[i]} x Z{orders[j]} with root order {L}",
                    detail={"row": i, "col": j},
                )
    return Multiplier(factor.group, L, tuple(rows))


def validate_multiplier(sigma: Multiplier, N_plus: Optional[CommutationFactor] = None,
                        budget: Optional[int] = None, seed: int = 0) -> VerificationReport:
    """Cocycle identity on triples and, given N_plus, the ratio condition on pairs"""
    G = sigma.group
    report = VerificationReport(name="multiplier")
    elements = G.elements
    L = sigma.root_order

    plan = plan_product([elements, elements, elements], budget, seed)
    report.note_space(plan.total, plan.sampled, plan.seed)
    for a, b, c in plan:
        report.count("cocycle")
        left = sigma.exponent(a, G.add(b, c)) + sigma.exponent(b, c)
        right = sigma.exponent(a, b) + sigma.exponent(G.add(a, b), c)
        if (left - right) % L:
            report.record("cocycle", [a, b, c],
                          str(sigma(a, G.add(b, c)) * sigma(b, c)),
                          str(sigma(a, b) * sigma(G.add(a, b), c)))

    if N_plus is not None:
        M = lcm(L, N_plus.root_order)
        s_step = M // L
        n_step = M // N_plus.root_order
        plan = plan_product([elements, elements], budget, seed)
        report.note_space(plan.total, plan.sampled, plan.seed)
        for a, b in plan:
            report.count("ratio")
            ratio = (sigma.exponent(a, b) - sigma.exponent(b, a)) * s_step
            if (ratio + N_plus.exponent(a, b) * n_step) % M:
                report.record("ratio", [a, b],
                              str(root_of_unity(M, ratio)),
                              str(root_of_unity(M, -N_plus.exponent(a, b) * n_step)))
    return report


def check_multiplier_matches(sigma: Multiplier, N_plus: CommutationFactor) -> None:
    """Raise MultiplierMismatch unless sigma(a,b)/sigma(b,a) = N_plus(a,b)^-1 everywhere"""
    report = validate_multiplier(sigma, N_plus)
    if not report.passed:
        first = report.counterexamples[0]
        raise MultiplierMismatch(
            f"multiplier fails {first.identity} at {first.witness}",
            detail=first.to_dict(),
        )
