"""
COLOR ALGEBRA ENGINE - EXCHANGE ALGEBRAS AND REALIZATIONS
=========================================================
Normal ordering for algebras given by exchange rules:

- color oscillators theta^i, d_i with sign epsilon
- Lambda variables theta^a_k exchanging with N^-1
- quons at q = 0, a_i a^j = delta_ij, with no other relations

and the realizations built on them: differential operators M = theta M d,
quon bilinears a^i M_ij a_j, and the Lambda (x) g decoloration check.

Canonical order is every raising letter before every lowering letter;
inside a kind, letters with an exchange rule are sorted by rank.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from algebra import (
    AlgebraElement, GradedAlgebra, MatrixRep, lift_algebra, weighted_product,
)
from errors import GradingMismatch, InvalidFactor, MissingZfGrading, UnknownGenerator, UnsupportedKind
from factor import CommutationFactor, validate_factor
from grading import GradingMap, GroupElement
from matrices import SparseMatrix
from scalar import CycloScalar
from schemas import VerificationReport
from sweeps import plan_multisets, plan_product

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
Number = Union[int, Fraction, CycloScalar]

LEFTMOST = "leftmost"
RIGHTMOST = "rightmost"

# Smallest Lambda multiplicity that keeps every lifted Jacobi triple nonvanishing
MIN_LAMBDA_MULTIPLICITY = 3
REWRITE_CACHE_SIZE = 65536


@dataclass(frozen=True)
class Generator:
    name: str
    raising: bool
    degree: GroupElement = ()
    family: int = 0
    index: int = 0


class NormalElement:
    """Linear combination of words; normal form when built by normalize"""

    __slots__ = ("root_order", "terms")

    def __init__(self, root_order: int, terms: Optional[Mapping[Word, Number]] = None):
        self.root_order = root_order
        self.terms: Dict[Word, CycloScalar] = {}
        for word, c in (terms or {}).items():
            c = c if isinstance(c, CycloScalar) else CycloScalar.rational(root_order, c)
            if c.root_order != root_order:
                c = c.lift(root_order)
            if c:
                self.terms[tuple(word)] = c

    @classmethod
    def zero(cls, root_order: int) -> NormalElement:
        return cls(root_order)

    @classmethod
    def one(cls, root_order: int) -> NormalElement:
        return cls(root_order, {(): 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _combine(self, other: NormalElement, sign: int) -> NormalElement:
        out = dict(self.terms)
        for word, c in other.terms.items():
            term = c if sign > 0 else -c
            value = out[word] + term if word in out else term
            if value:
                out[word] = value
            else:
                out.pop(word, None)
        return NormalElement(self.root_order, out)

    def __add__(self, other: NormalElement) -> NormalElement:
        return self._combine(other, 1)

    def __sub__(self, other: NormalElement) -> NormalElement:
        return self._combine(other, -1)

    def __neg__(self) -> NormalElement:
        return NormalElement(self.root_order, {w: -c for w, c in self.terms.items()})

    def scale(self, c: Number) -> NormalElement:
        c = c if isinstance(c, CycloScalar) else CycloScalar.rational(self.root_order, c)
        return NormalElement(self.root_order, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormalElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return f"NormalElement({dict(sorted(self.terms.items()))})"


class ExchangeAlgebra:
    """
    Generators with exchange rules x y -> c y x (same kind, applied when y
    ranks before x), contractions lowering * raising -> delta + c' raising *
    lowering (c' absent for quons), and letters whose square vanishes.
    """

    def __init__(self, root_order: int, generators: Sequence[Generator],
                 swap: Optional[Mapping[Tuple[int, int], CycloScalar]] = None,
                 contraction: Optional[Mapping[Tuple[int, int], CycloScalar]] = None,
                 cross: Optional[Mapping[Tuple[int, int], CycloScalar]] = None,
                 self_square_zero: Iterable[int] = (), name: str = "",
                 cache_size: int = REWRITE_CACHE_SIZE):
        self.root_order = root_order
        self.generators = tuple(generators)
        self.swap = dict(swap or {})
        self.contraction = dict(contraction or {})
        self.cross = dict(cross or {})
        self.self_square_zero = frozenset(self_square_zero)
        self.name = name
        self._index = {g.name: i for i, g in enumerate(self.generators)}
        self._normalize_cached = lru_cache(maxsize=cache_size)(self._normalize_uncached)

    def __len__(self) -> int:
        return len(self.generators)

    def index_of(self, name: str) -> int:
        if name not in self._index:
            raise UnknownGenerator(f"unknown generator {name!r} in {self.name or 'exchange algebra'}")
        return self._index[name]

    def letter(self, key: Union[int, str]) -> int:
        if isinstance(key, str):
            return self.index_of(key)
        if not 0 <= key < len(self.generators):
            raise UnknownGenerator(f"generator index {key} out of range")
        return key

    def word(self, letters: Sequence[Union[int, str]], coeff: Number = 1) -> NormalElement:
        """A raw word, not yet normalized"""
        return NormalElement(self.root_order, {tuple(self.letter(x) for x in letters): coeff})

    def render(self, x: NormalElement) -> str:
        if not x:
            return "0"
        parts = []
        for word, c in sorted(x.terms.items()):
            letters = " ".join(self.generators[i].name for i in word) or "1"
            parts.append(letters if str(c) == "1" else f"({c}) {letters}")
        return " + ".join(parts)

    # -- rewriting -----------------------------------------------------------

    def _rewrite(self, word: Word, p: int) -> Optional[List[Tuple[Word, CycloScalar]]]:
        x, y = word[p], word[p + 1]
        if x == y and x in self.self_square_zero:
            return []
        gx, gy = self.generators[x], self.generators[y]
        if not gx.raising and gy.raising:
            out = []
            rest = word[:p] + word[p + 2:]
            delta = self.contraction.get((x, y))
            if delta:
                out.append((rest, delta))
            c = self.cross.get((x, y))
            if c:
                out.append((word[:p] + (y, x) + word[p + 2:], c))
            return out
        if gx.raising == gy.raising and y < x and (x, y) in self.swap:
            return [(word[:p] + (y, x) + word[p + 2:], self.swap[(x, y)])]
        return None

    def _normalize_word(self, word: Word, strategy: str) -> Dict[Word, CycloScalar]:
        """Memoized per algebra; callers must not mutate the returned dict"""
        return self._normalize_cached(word, strategy)

    def cache_info(self):
        return self._normalize_cached.cache_info()

    def _normalize_uncached(self, word: Word, strategy: str) -> Dict[Word, CycloScalar]:
        positions = range(len(word) - 1)
        if strategy == RIGHTMOST:
            positions = reversed(positions)
        result: Dict[Word, CycloScalar] = {word: CycloScalar.one(self.root_order)}
        for p in positions:
            rewrites = self._rewrite(word, p)
            if rewrites is None:
                continue
            result = {}
            for new_word, c in rewrites:
                for w, v in self._normalize_word(new_word, strategy).items():
                    term = c * v
                    total = result[w] + term if w in result else term
                    if total:
                        result[w] = total
                    else:
                        result.pop(w, None)
            break
        return result

    def is_normal(self, word: Word) -> bool:
        return all(self._rewrite(word, p) is None for p in range(len(word) - 1))


def normalize(A: ExchangeAlgebra, x: Union[NormalElement, Sequence[Union[int, str]]],
              coeff: Number = 1, strategy: str = LEFTMOST) -> NormalElement:
    """Rewrite to canonical order; accepts a raw word or a sum of raw words"""
    if strategy not in (LEFTMOST, RIGHTMOST):
        raise ValueError(f"unknown rewrite strategy {strategy!r}")
    if not isinstance(x, NormalElement):
        x = A.word(x, coeff)
    out: Dict[Word, CycloScalar] = {}
    for word, c in x.terms.items():
        for letter in word:
            A.letter(letter)
        for w, v in A._normalize_word(word, strategy).items():
            term = c * v
            total = out[w] + term if w in out else term
            if total:
                out[w] = total
            else:
                out.pop(w, None)
    return NormalElement(A.root_order, out)


def multiply(A: ExchangeAlgebra, x: NormalElement, y: NormalElement) -> NormalElement:
    raw: Dict[Word, CycloScalar] = {}
    for u, a in x.terms.items():
        for v, b in y.terms.items():
            w = u + v
            term = a * b
            raw[w] = raw[w] + term if w in raw else term
    return normalize(A, NormalElement(A.root_order, raw))


def product(A: ExchangeAlgebra, *xs: NormalElement) -> NormalElement:
    result = NormalElement.one(A.root_order)
    for x in xs:
        result = multiply(A, result, x)
    return result


# ---------------------------------------------------------------------------
# Flavors
# ---------------------------------------------------------------------------

def color_oscillators(factor: CommutationFactor, grading: GradingMap, epsilon: int) -> ExchangeAlgebra:
    """
    theta^i (degree -gr i) and d_i (degree gr i):
    theta theta = -eps N theta theta, d d = -eps N d d,
    d_i theta^j = delta_ij - eps N(gr i, -gr j) theta^j d_i
    """
    if epsilon not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {epsilon}")
    if grading.group != factor.group:
        raise GradingMismatch("oscillator grading and factor use different groups")
    G = factor.group
    L = factor.root_order
    m = grading.domain_size
    gens = [Generator(f"th{i + 1}", True, G.neg(grading[i]), 0, i) for i in range(m)]
    gens += [Generator(f"d{i + 1}", False, grading[i], 0, i) for i in range(m)]
    swap, contraction, cross = {}, {}, {}
    zero_squares = []
    for i in range(m):
        for j in range(m):
            c = factor(grading[i], grading[j]) * (-epsilon)
            if j < i:
                swap[(i, j)] = c
                swap[(m + i, m + j)] = c
            if i == j and CycloScalar.one(L) + factor(grading[i], grading[i]) * epsilon:
                zero_squares += [i, m + i]
            if i == j:
                contraction[(m + i, j)] = CycloScalar.one(L)
            cross[(m + i, j)] = factor(grading[i], G.neg(grading[j])) * (-epsilon)
    return ExchangeAlgebra(L, gens, swap, contraction, cross, zero_squares,
                           name=f"oscillators(eps={epsilon:+d})")


def lambda_algebra(factor: CommutationFactor, degrees: Optional[Sequence[GroupElement]] = None,
                   multiplicity: int = 3) -> ExchangeAlgebra:
    """theta^a_k theta^b_l = N^-1(a,b) theta^b_l theta^a_k; theta^2 = 0 on N(a,a) = -1"""
    if multiplicity < 1:
        raise ValueError(f"multiplicity must be >= 1, got {multiplicity}")
    G = factor.group
    degrees = sorted({G.check(tuple(d)) for d in degrees}) if degrees is not None else list(G.elements)
    gens = [
        Generator(f"th{_vector(a)}_{k + 1}", True, a, 0, k)
        for a in degrees for k in range(multiplicity)
    ]
    swap = {}
    zero_squares = []
    for x, gx in enumerate(gens):
        if factor.exponent(gx.degree, gx.degree) * 2 == factor.root_order:
            zero_squares.append(x)
        for y in range(x):
            swap[(x, y)] = factor(gx.degree, gens[y].degree).inverse()
    return ExchangeAlgebra(factor.root_order, gens, swap, self_square_zero=zero_squares,
                           name=f"Lambda(k={multiplicity})")


def quon_algebra(sizes: Sequence[int], root_order: int = 2) -> ExchangeAlgebra:
    """Families of q = 0 quons with globally disjoint indices"""
    if any(n < 0 for n in sizes):
        raise ValueError(f"quon family sizes must be >= 0, got {list(sizes)}")
    single = len(sizes) == 1
    raising, lowering = [], []
    for f, n in enumerate(sizes):
        tag = "a" if single else f"a{f}"
        raising += [Generator(f"{tag}^{i + 1}", True, (), f, i) for i in range(n)]
        lowering += [Generator(f"{tag}_{i + 1}", False, (), f, i) for i in range(n)]
    total = len(raising)
    contraction = {(total + k, k): CycloScalar.one(root_order) for k in range(total)}
    return ExchangeAlgebra(root_order, raising + lowering, contraction=contraction,
                           name="quons(" + ",".join(str(n) for n in sizes) + ")")


def make_exchange_algebra(flavor: str, **params) -> ExchangeAlgebra:
    if flavor == "color_oscillator":
        factor = params["factor"]
        if not validate_factor(factor).passed:
            raise InvalidFactor("oscillator factor fails the commutation factor axioms")
        return color_oscillators(factor, params["grading"], params.get("epsilon", 1))
    if flavor == "lambda":
        factor = params["factor"]
        if not validate_factor(factor).passed:
            raise InvalidFactor("Lambda factor fails the commutation factor axioms")
        return lambda_algebra(factor, params.get("degrees"), params.get("multiplicity", 3))
    if flavor == "quon":
        return quon_algebra(params["sizes"], params.get("root_order", 2))
    raise ValueError(f"unknown exchange algebra flavor {flavor!r}")


def _vector(a: GroupElement) -> str:
    return "(" + ",".join(str(x) for x in a) + ")"


# ---------------------------------------------------------------------------
# Quon bilinears
# ---------------------------------------------------------------------------

def quon_bilinear(A: ExchangeAlgebra, M: SparseMatrix, raising: Sequence[int],
                  lowering: Sequence[int]) -> NormalElement:
    """sum_ij M_ij a^i a_j for the given raising and lowering letters"""
    return NormalElement(A.root_order, {
        (raising[i], lowering[j]): v.lift(A.root_order) for (i, j), v in M
    })


def quon_matrix_units(n: int) -> Tuple[ExchangeAlgebra, Dict[Tuple[int, int], NormalElement]]:
    """e^i_j = a^i a_j, 1-based keys"""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    A = quon_algebra((n,))
    units = {(i + 1, j + 1): A.word((i, n + j)) for i in range(n) for j in range(n)}
    return A, units


# ---------------------------------------------------------------------------
# Realizations
# ---------------------------------------------------------------------------

def _check_carrier_grading(A: GradedAlgebra, R: MatrixRep) -> None:
    if R.degree_map.group != A.group:
        raise GradingMismatch("representation is graded by a different group")
    for b in A.basis:
        M = R.matrices.get(b.label)
        if M is None:
            continue
        for (row, col), _ in M:
            if A.group.sub(R.degree_map[col], R.degree_map[row]) != b.degree:
                raise GradingMismatch(
                    f"matrix of {b.label} has entry ({row},{col}) off its degree",
                    detail={"label": b.label, "entry": [row, col]},
                )


def differential_realization(A: GradedAlgebra, R: MatrixRep,
                             epsilon: int = 1) -> Tuple[Dict[str, NormalElement], VerificationReport]:
    """
    M_a = theta^i (M_a)_ij d_j in color oscillators, checked against
    [|M, theta^i|] = theta^j M_ji, [|M, d_i|] = -N(gr j - gr i, gr i) M_ij d_j
    and [|M_a, M_b|] = C_ab^c M_c.
    """
    if not A.kind.is_color:
        raise UnsupportedKind(f"differential realization needs a color Lie algebra, got {A.kind.value}")
    _check_carrier_grading(A, R)
    L = lcm(A.root_order, *(m.root_order for m in R.matrices.values()))
    A = A if L == A.root_order else lift_algebra(A, L)
    factor = A.factor
    G = A.group
    gr = R.degree_map
    osc = color_oscillators(factor, gr, epsilon)
    m = R.dimension
    report = VerificationReport(name="differential_realization")

    realized: Dict[str, NormalElement] = {}
    for b in A.basis:
        M = R.matrices.get(b.label)
        realized[b.label] = (quon_bilinear(osc, M.lift(L), range(m), range(m, 2 * m))
                             if M is not None else NormalElement.zero(L))

    def theta(i: int) -> NormalElement:
        return osc.word((i,))

    def d(i: int) -> NormalElement:
        return osc.word((m + i,))

    def commutator(x: NormalElement, a: GroupElement, y: NormalElement, b: GroupElement) -> NormalElement:
        return multiply(osc, x, y) - multiply(osc, y, x).scale(factor(a, b))

    for b in A.basis:
        Mx = realized[b.label]
        M = R.matrices.get(b.label)
        M = M.lift(L) if M is not None else SparseMatrix.zero(m, L)
        for i in range(m):
            report.count("theta_action")
            lhs = commutator(Mx, b.degree, theta(i), G.neg(gr[i]))
            rhs = NormalElement(L, {(j,): M[(j, i)] for j in range(m)})
            if lhs != rhs:
                report.record("theta_action", [b.label, osc.generators[i].name],
                              osc.render(lhs), osc.render(rhs))

            report.count("derivative_action")
            lhs = commutator(Mx, b.degree, d(i), gr[i])
            rhs = NormalElement(L, {
                (m + j,): -factor(G.sub(gr[j], gr[i]), gr[i]) * M[(i, j)] for j in range(m)
            })
            if lhs != rhs:
                report.record("derivative_action", [b.label, osc.generators[m + i].name],
                              osc.render(lhs), osc.render(rhs))

    for i in range(A.dimension):
        for j in range(A.dimension):
            report.count("bracket")
            x, y = A.basis[i], A.basis[j]
            lhs = commutator(realized[x.label], x.degree, realized[y.label], y.degree)
            rhs = NormalElement.zero(L)
            for k, c in A.bracket_basis(i, j).terms.items():
                rhs = rhs + realized[A.basis[k].label].scale(c)
            if lhs != rhs:
                report.record("bracket", [x.label, y.label], osc.render(lhs), osc.render(rhs))

    report.note_space(report.checks_run, False, None)
    logger.info("differential realization of %s (eps=%+d): %s", A.name, epsilon, report.status.value)
    return realized, report


BLOCK_ORDER = {0: 0, 2: 1, 1: 2}


def quon_realization(A: GradedAlgebra, R: MatrixRep,
                     budget: Optional[int] = None, seed: int = 0
                     ) -> Tuple[Dict[str, NormalElement], VerificationReport]:
    """
    Reorder the carrier space as V0, V2, V1, give each block its own quon
    family and realize every basis element as sum a^i M_ij a_j; then check
    every bracket of the table on the realized elements.
    """
    if R.zf_grades is None or len(R.zf_grades) != R.dimension:
        raise MissingZfGrading("quon realization needs the Z_F grading of the carrier space")
    grades = R.grades_for(A.F)
    L = lcm(A.root_order, *(m.root_order for m in R.matrices.values()))
    A = A if L == A.root_order else lift_algebra(A, L)
    order = sorted(range(R.dimension), key=lambda i: (BLOCK_ORDER.get(grades[i] % 3, grades[i]), i))
    blocks = sorted({BLOCK_ORDER.get(g % 3, g) for g in grades})
    sizes = [sum(1 for g in grades if BLOCK_ORDER.get(g % 3, g) == blk) for blk in blocks]
    Q = quon_algebra(sizes, L)
    n = R.dimension
    raising, lowering = list(range(n)), list(range(n, 2 * n))
    permuted_grades = [grades[i] for i in order]

    report = VerificationReport(name="quon_realization")
    realized: Dict[str, NormalElement] = {}
    for b in A.basis:
        M = R.matrices.get(b.label)
        if M is None:
            realized[b.label] = NormalElement.zero(L)
            continue
        P = M.lift(L).permuted(order)
        report.count("block_form")
        for (row, col), v in P:
            if (permuted_grades[col] - permuted_grades[row]) % A.F != b.zf_grade % A.F:
                report.record("block_form", [b.label, f"({row},{col})"], str(v),
                              f"grade {b.zf_grade} shift")
                break
        realized[b.label] = quon_bilinear(Q, P, raising, lowering)

    def combine(x: AlgebraElement) -> NormalElement:
        out = NormalElement.zero(L)
        for k, c in x.terms.items():
            out = out + realized[A.basis[k].label].scale(c)
        return out

    dim = A.dimension
    plan = plan_product([list(range(dim))] * 2, budget, seed)
    report.note_space(plan.total, plan.sampled, plan.seed)
    for i, j in plan:
        if not A.bilinear_defined(i, j):
            continue
        report.count("bilinear")
        x, y = realized[A.basis[i].label], realized[A.basis[j].label]
        lhs = multiply(Q, x, y) - multiply(Q, y, x).scale(A.N_basis(i, j))
        rhs = combine(A.bracket_basis(i, j))
        if lhs != rhs:
            report.record("bilinear", [A.basis[i].label, A.basis[j].label],
                          Q.render(lhs), Q.render(rhs))

    for domain in A.f_domains():
        plan = plan_multisets(domain, A.F, budget, seed)
        report.note_space(plan.total, plan.sampled, plan.seed)
        for t in plan:
            report.count("f_ary")
            ys = [realized[A.basis[k].label] for k in t]
            lhs = weighted_product([A.degree(k) for k in t], A.factor,
                                   lambda p: product(Q, *(ys[q] for q in p)),
                                   NormalElement.zero(L))
            rhs = combine(A.f_bracket_basis(t))
            if lhs != rhs:
                report.record("f_ary", [A.basis[k].label for k in t], Q.render(lhs), Q.render(rhs))

    logger.info("quon realization of %s: %d checks, %s", A.name, report.checks_run, report.status.value)
    return realized, report


# ---------------------------------------------------------------------------
# Lambda (x) g
# ---------------------------------------------------------------------------

@dataclass
class LambdaElement:
    """sum of (Lambda word, basis index) -> coefficient"""
    root_order: int
    terms: Dict[Tuple[Word, int], CycloScalar] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def add(self, other: LambdaElement, coeff: Optional[CycloScalar] = None) -> LambdaElement:
        out = dict(self.terms)
        for key, c in other.terms.items():
            term = c if coeff is None else c * coeff
            total = out[key] + term if key in out else term
            if total:
                out[key] = total
            else:
                out.pop(key, None)
        return LambdaElement(self.root_order, out)

    def __add__(self, other: LambdaElement) -> LambdaElement:
        return self.add(other)

    def __neg__(self) -> LambdaElement:
        return LambdaElement(self.root_order, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: LambdaElement) -> LambdaElement:
        return self + (-other)


def _tensor(Lam: ExchangeAlgebra, words: NormalElement, value: AlgebraElement, L: int) -> LambdaElement:
    out: Dict[Tuple[Word, int], CycloScalar] = {}
    for w, a in words.terms.items():
        for k, b in value.terms.items():
            out[(w, k)] = a * b
    return LambdaElement(L, {k: v for k, v in out.items() if v})


def lambda_bracket(Lam: ExchangeAlgebra, A: GradedAlgebra, u: LambdaElement,
                   v: LambdaElement) -> LambdaElement:
    """[th (x) X, ps (x) Y] = th ps (x) [X, Y]"""
    L = A.root_order
    total = LambdaElement(L)
    for (w1, i), a in u.terms.items():
        for (w2, j), b in v.terms.items():
            value = A.bracket_basis(i, j)
            if not value:
                continue
            words = normalize(Lam, NormalElement(L, {w1 + w2: a * b}))
            total = total + _tensor(Lam, words, value, L)
    return total


def lambda_f_bracket(Lam: ExchangeAlgebra, A: GradedAlgebra, *us: LambdaElement) -> LambdaElement:
    """{th1 (x) Y1, ..., thF (x) YF} = th1 ... thF (x) {Y1, ..., YF}"""
    L = A.root_order
    total = LambdaElement(L)
    partial: List[Tuple[Word, Tuple[int, ...], CycloScalar]] = [((), (), CycloScalar.one(L))]
    for u in us:
        partial = [(w + w2, t + (i,), c * a) for w, t, c in partial for (w2, i), a in u.terms.items()]
    for w, t, c in partial:
        value = A.f_bracket_basis(t)
        if not value:
            continue
        words = normalize(Lam, NormalElement(L, {w: c}))
        total = total + _tensor(Lam, words, value, L)
    return total


def lambda_decoloration_check(A: GradedAlgebra, multiplicity: int = 3,
                              budget: Optional[int] = None, seed: int = 0) -> VerificationReport:
    """
    Lift every basis tuple to (Lambda (x) A)_0 with distinct theta letters
    and check the identities of an ordinary Lie algebra (of order 3):
    antisymmetry, Jacobi, symmetry of the triple bracket, derivation and
    cyclic identities. Each degree gets at least as many letters as the
    longest swept tuple has arguments.
    """
    if multiplicity < MIN_LAMBDA_MULTIPLICITY:
        raise ValueError(f"multiplicity must be >= {MIN_LAMBDA_MULTIPLICITY}, got {multiplicity}")
    G = A.group
    L = A.root_order
    letters = max(multiplicity, A.F + 1 if A.kind.has_f_ary else 3)
    Lam = lambda_algebra(A.factor, {G.neg(b.degree) for b in A.basis}, letters)
    report = VerificationReport(name="lambda_decoloration")

    def lift(t: Sequence[int]) -> List[LambdaElement]:
        seen: Dict[GroupElement, int] = {}
        out = []
        for i in t:
            a = G.neg(A.degree(i))
            k = seen.get(a, 0)
            seen[a] = k + 1
            letter = Lam.index_of(f"th{_vector(a)}_{k + 1}")
            out.append(LambdaElement(L, {((letter,), i): CycloScalar.one(L)}))
        return out

    def br(u: LambdaElement, v: LambdaElement) -> LambdaElement:
        return lambda_bracket(Lam, A, u, v)

    def record(identity: str, t: Sequence[int], lhs: LambdaElement, rhs: LambdaElement) -> None:
        report.count(identity)
        if lhs != rhs:
            report.record(identity, [A.basis[i].label for i in t],
                          _render_lambda(Lam, A, lhs), _render_lambda(Lam, A, rhs))

    everything = list(range(A.dimension))
    plan = plan_product([everything] * 2, budget, seed)
    report.note_space(plan.total, plan.sampled, plan.seed)
    for t in plan:
        if not A.bilinear_defined(*t):
            continue
        u, v = lift(t)
        record("antisymmetry", t, br(u, v), -br(v, u))

    if not A.kind.has_f_ary:
        plan = plan_product([everything] * 3, budget, seed)
        report.note_space(plan.total, plan.sampled, plan.seed)
        for t in plan:
            u, v, w = lift(t)
            lhs = br(u, br(v, w)) + br(v, br(w, u)) + br(w, br(u, v))
            record("jacobi", t, lhs, LambdaElement(L))
        logger.info("lambda decoloration of %s: %s", A.name, report.status.value)
        return report

    g0 = A.component(0)
    modules = [i for i in everything if A.grade(i) != 0]
    plan = plan_product([g0] * 3, budget, seed)
    report.note_space(plan.total, plan.sampled, plan.seed)
    for t in plan:
        u, v, w = lift(t)
        record("jacobi_g0", t, br(u, br(v, w)) + br(v, br(w, u)) + br(w, br(u, v)), LambdaElement(L))
    plan = plan_product([g0, g0, modules], budget, seed)
    report.note_space(plan.total, plan.sampled, plan.seed)
    for t in plan:
        u, v, w = lift(t)
        record("jacobi_module", t, br(u, br(v, w)), br(br(u, v), w) + br(v, br(u, w)))

    F = A.F
    for domain in A.f_domains():
        plan = plan_product([domain] * F, budget, seed)
        report.note_space(plan.total, plan.sampled, plan.seed)
        for t in plan:
            us = lift(t)
            base = lambda_f_bracket(Lam, A, *us)
            for p in range(F - 1):
                swapped = us[:p] + [us[p + 1], us[p]] + us[p + 2:]
                record("f_symmetry", t, base, lambda_f_bracket(Lam, A, *swapped))

        plan = plan_product([g0] + [domain] * F, budget, seed)
        report.note_space(plan.total, plan.sampled, plan.seed)
        for t in plan:
            x, *ys = lift(t)
            lhs = br(x, lambda_f_bracket(Lam, A, *ys))
            rhs = LambdaElement(L)
            for p in range(F):
                args = list(ys)
                args[p] = br(x, ys[p])
                rhs = rhs + lambda_f_bracket(Lam, A, *args)
            record("derivation", t, lhs, rhs)

        plan = plan_product([domain] * (F + 1), budget, seed)
        report.note_space(plan.total, plan.sampled, plan.seed)
        for t in plan:
            ys = lift(t)
            total = LambdaElement(L)
            for p in range(F + 1):
                rest = ys[p + 1:] + ys[:p]
                total = total + br(ys[p], lambda_f_bracket(Lam, A, *rest))
            record("cyclic", t, total, LambdaElement(L))

    logger.info("lambda decoloration of %s: %d checks, %s", A.name, report.checks_run,
                report.status.value)
    return report


def _render_lambda(Lam: ExchangeAlgebra, A: GradedAlgebra, x: LambdaElement) -> str:
    if not x:
        return "0"
    parts = []
    for (w, i), c in sorted(x.terms.items()):
        letters = " ".join(Lam.generators[k].name for k in w) or "1"
        parts.append(f"({c}) {letters} (x) {A.basis[i].label}")
    return " + ".join(parts)
