"""
COLOR ALGEBRA ENGINE - CONSTRUCTIONS
====================================
Builders for the concrete algebras the engine ships:

- generalized Clifford algebras C_n^p and their matrix representations
- color gl({m}) over a grading group with a commutation factor
- Clifford tensor products C_n^p (x) g for Lie and order-3 algebras
- mat(m1,m2,m3) and its elementary part, the order-3 Poincare algebra,
  the adjoint order-3 algebra over a classical Lie algebra
- the color order-3 families (Clifford doubling of color gl, triple
  block algebra over three grading groups)
- decoloration by a bicharacter multiplier, and its inverse

Every builder returns immutable tables; the matching defining
representation is returned next to the algebra when one exists.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import lcm
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from algebra import (
    AlgebraElement, AlgebraKind, AssociativeAlgebra, BasisElement, GradedAlgebra, MatrixRep,
    adjoint_embedding, bracket_eval, color_kind, extract_elementary, f_bracket_eval,
    from_associative,
)
from errors import (
    EmptyBlocks, InvalidFactor, SpecFormatError, UnsupportedKind, UnsupportedRep,
)
from factor import (
    CommutationFactor, Multiplier, bicharacter_multiplier, check_multiplier_matches,
    clifford_factor, n_plus, product_factor, sign_factor, validate_factor,
)
from grading import AbelianGroup, GradingMap, GroupElement, block_grading, block_index, embed
from matrices import SparseMatrix
from scalar import CycloScalar, root_of_unity
from schemas import VerificationReport

logger = logging.getLogger(__name__)

TRIVIAL_GROUP = AbelianGroup(())


@dataclass
class BuildResult:
    """Algebra plus optional defining representation and multiplier"""
    algebra: GradedAlgebra
    representation: Optional[MatrixRep] = None
    multiplier: Optional[Multiplier] = None
    colored_factor: Optional[CommutationFactor] = None


def _vector(a: GroupElement) -> str:
    return "(" + ",".join(str(x) for x in a) + ")"


def _require_valid(factor: CommutationFactor) -> None:
    report = validate_factor(factor)
    if not report.passed:
        first = report.counterexamples[0]
        raise InvalidFactor(
            f"commutation factor fails {first.identity} at {first.witness}",
            detail=first.to_dict(),
        )


def _trivial_factor(group: AbelianGroup = TRIVIAL_GROUP) -> CommutationFactor:
    return CommutationFactor.trivial(group)


# ---------------------------------------------------------------------------
# Generalized Clifford algebras
# ---------------------------------------------------------------------------

def _clifford_label(a: GroupElement) -> str:
    if len(a) == 1:
        return "1" if a[0] == 0 else ("e" if a[0] == 1 else f"e^{a[0]}")
    return "e" + _vector(a)


def clifford_phase(a: GroupElement, b: GroupElement) -> int:
    """Exponent k of q in e_a e_b = q^k e_(a+b)"""
    return -sum(a[j] * b[i] for i in range(len(a)) for j in range(i + 1, len(a)))


def clifford_matrices(n: int, p: int, root_order: int) -> Tuple[List[SparseMatrix], GradingMap]:
    """Generator matrices rho_1..rho_p and the grading of the n^p index space"""
    step = root_order // n
    sigma1 = SparseMatrix(n, root_order, {(i, (i + 1) % n): 1 for i in range(n)})
    if p == 1:
        degrees = tuple((i,) for i in range(n))
        return [sigma1], GradingMap(AbelianGroup((n,)), degrees)
    if p == 2:
        sigma2 = SparseMatrix(n, root_order, {(i, i): root_of_unity(root_order, step * i) for i in range(n)})
        identity = SparseMatrix.identity(n, root_order)
        rho1 = sigma1.kron(identity)
        rho2 = sigma2.kron(sigma1)
        degrees = tuple((i, k) for i in range(n) for k in range(n))
        return [rho1, rho2], GradingMap(AbelianGroup((n, n)), degrees)
    raise UnsupportedRep(f"no matrix representation for C_{n}^{p} with p > 2")


def build_generalized_clifford(n: int, p: int = 2,
                               with_rep: bool = True) -> Tuple[AssociativeAlgebra, Optional[MatrixRep]]:
    """C_n^p on the monomials e_1^a_1 ... e_p^a_p, with rho_a = rho_1^a_1 ... rho_p^a_p"""
    if n < 1 or p < 1:
        raise ValueError(f"Clifford algebra needs n >= 1 and p >= 1, got n={n}, p={p}")
    factor = clifford_factor(n, p)
    L = factor.root_order
    step = L // n
    G = factor.group
    basis = [BasisElement(_clifford_label(a), 0, a) for a in G.elements]
    position = {a: i for i, a in enumerate(G.elements)}
    products = {
        (position[a], position[b]): {position[G.add(a, b)]: root_of_unity(L, step * clifford_phase(a, b))}
        for a in G.elements for b in G.elements
    }
    algebra = AssociativeAlgebra(G, L, basis, products, F=1, factor=factor, name=f"C_{n}^{p}")
    if not with_rep:
        return algebra, None
    if p > 2:
        raise UnsupportedRep(f"no matrix representation for C_{n}^{p} with p > 2", algebra=algebra)

    generators, degree_map = clifford_matrices(n, p, L)
    size = generators[0].size
    matrices = {}
    for a in G.elements:
        m = SparseMatrix.identity(size, L)
        for gen, power in zip(generators, a):
            m = m @ (gen ** power)
        matrices[_clifford_label(a)] = m
    rep = MatrixRep(size, (0,) * size, degree_map, matrices, name=f"rho(C_{n}^{p})")
    return algebra, rep


# ---------------------------------------------------------------------------
# Matrix units and color gl
# ---------------------------------------------------------------------------

def _block_degrees(group: AbelianGroup, block_sizes: Sequence[int],
                   block_degrees: Optional[Sequence[GroupElement]]) -> List[GroupElement]:
    if block_degrees is not None:
        return [tuple(d) for d in block_degrees]
    if len(block_sizes) > group.size:
        raise EmptyBlocks(
            f"{len(block_sizes)} blocks but only {group.size} group elements; give block degrees"
        )
    return list(group.elements[:len(block_sizes)])


def matrix_unit_algebra(block_sizes: Sequence[int], factor: CommutationFactor,
                        block_degrees: Optional[Sequence[GroupElement]] = None,
                        prefix: str = "E") -> AssociativeAlgebra:
    """Full matrix algebra with E^p_q of degree gr(q) - gr(p)"""
    group = factor.group
    gr = block_grading(group, block_sizes, _block_degrees(group, block_sizes, block_degrees))
    m = gr.domain_size
    units = [(p, q) for p in range(m) for q in range(m)]
    position = {u: i for i, u in enumerate(units)}
    basis = [BasisElement(f"{prefix}{p + 1}_{q + 1}", 0, group.sub(gr[q], gr[p])) for p, q in units]
    products = {
        (position[(p, q)], position[(r, s)]): {position[(p, s)]: 1}
        for p, q in units for r, s in units if q == r
    }
    return AssociativeAlgebra(group, factor.root_order, basis, products, F=1, factor=factor,
                              name=f"M_{m}")


def build_color_gl(block_sizes: Sequence[int], factor: CommutationFactor,
                   block_degrees: Optional[Sequence[GroupElement]] = None) -> BuildResult:
    """gl({m}) with [E^p_q, E^r_s] = d_rq E^p_s - N(gr q - gr p, gr s - gr r) d_ps E^r_q"""
    _require_valid(factor)
    group = factor.group
    gr = block_grading(group, block_sizes, _block_degrees(group, block_sizes, block_degrees))
    m = gr.domain_size
    L = factor.root_order
    units = [(p, q) for p in range(m) for q in range(m)]
    position = {u: i for i, u in enumerate(units)}
    basis = [BasisElement(f"E{p + 1}_{q + 1}", 0, group.sub(gr[q], gr[p])) for p, q in units]

    bilinear = {}
    for i, (p, q) in enumerate(units):
        for j in range(i, len(units)):
            r, s = units[j]
            terms: Dict[int, CycloScalar] = {}
            if r == q:
                terms[position[(p, s)]] = CycloScalar.one(L)
            if p == s:
                sign = -factor(group.sub(gr[q], gr[p]), group.sub(gr[s], gr[r]))
                k = position[(r, q)]
                terms[k] = terms[k] + sign if k in terms else sign
            value = AlgebraElement(L, terms)
            if value:
                bilinear[(i, j)] = value

    name = "gl(" + ",".join(str(x) for x in block_sizes) + ")"
    algebra = GradedAlgebra(color_kind(factor), 1, group, factor, basis, bilinear, name=name)
    matrices = {basis[position[(p, q)]].label: SparseMatrix.unit(m, L, p, q) for p, q in units}
    rep = MatrixRep(m, (0,) * m, gr, matrices, name=f"defining({name})")
    return BuildResult(algebra, rep)


def build_classical_lie(name: str) -> BuildResult:
    """gl<m>, sl2, nonabelian2 or abelian<d> over the trivial group"""
    factor = _trivial_factor()
    L = factor.root_order
    if name.startswith("gl") and name[2:].isdigit():
        result = build_color_gl((int(name[2:]),), factor)
        result.algebra = result.algebra.replace(name=name)
        return result
    if name == "sl2":
        basis = [BasisElement(x, 0, ()) for x in ("H", "E", "F")]
        bilinear = {("H", "E"): {1: 2}, ("H", "F"): {2: -2}, ("E", "F"): {0: 1}}
        matrices = {
            "H": SparseMatrix(2, L, {(0, 0): 1, (1, 1): -1}),
            "E": SparseMatrix.unit(2, L, 0, 1),
            "F": SparseMatrix.unit(2, L, 1, 0),
        }
        dim = 2
    elif name == "nonabelian2":
        basis = [BasisElement(x, 0, ()) for x in ("x", "y")]
        bilinear = {("x", "y"): {1: 1}}
        matrices = {"x": SparseMatrix.unit(2, L, 0, 0), "y": SparseMatrix.unit(2, L, 0, 1)}
        dim = 2
    elif name.startswith("abelian") and name[7:].isdigit() and int(name[7:]) >= 1:
        basis = [BasisElement(f"T{k + 1}", 0, ()) for k in range(int(name[7:]))]
        bilinear = {}
        matrices = {}
        dim = 1
    else:
        raise UnsupportedKind(f"unknown classical Lie algebra {name!r}")
    algebra = GradedAlgebra(AlgebraKind.COLOR_LIE, 1, TRIVIAL_GROUP, factor, basis,
                            bilinear, name=name)
    rep = MatrixRep(dim, (0,) * dim, GradingMap(TRIVIAL_GROUP, ((),) * dim), matrices,
                    name=f"defining({name})")
    return BuildResult(algebra, rep)


# ---------------------------------------------------------------------------
# Clifford tensor products
# ---------------------------------------------------------------------------

def tensor_clifford(base: GradedAlgebra, n: int, p: int = 2) -> GradedAlgebra:
    """
    C_n^p (x) base over Z_n^p. Bilinear constants pick up q^phase(a,b),
    trilinear ones q^(phase(a,b) + phase(a+b,c)).
    """
    if base.group.rank or not base.factor.is_trivial():
        raise UnsupportedKind("tensor_clifford needs an ungraded base with trivial factor")
    if base.kind.is_color:
        kind = AlgebraKind.COLOR_LIE
    elif base.kind.has_f_ary and base.F == 3:
        kind = AlgebraKind.COLOR_ORDER3
    else:
        raise UnsupportedKind(f"tensor_clifford needs a Lie algebra or an order-3 algebra, got "
                              f"{base.kind.value} with F = {base.F}")
    clifford = clifford_factor(n, p)
    L = lcm(clifford.root_order, base.root_order)
    factor = clifford.lift(L)
    step = L // n
    G = factor.group
    elements = G.elements
    d = base.dimension
    position = {a: k for k, a in enumerate(elements)}
    basis = [BasisElement(f"{b.label}^{_vector(a)}", b.zf_grade, a) for a in elements for b in base.basis]

    def split(i: int) -> Tuple[GroupElement, int]:
        return elements[i // d], i % d

    def carry(value: AlgebraElement, c: GroupElement, exponent: int) -> AlgebraElement:
        coeff = root_of_unity(L, step * exponent)
        offset = position[c] * d
        return AlgebraElement(L, {offset + g: coeff * v.lift(L) for g, v in value.terms.items()})

    bilinear = {}
    for i in range(len(basis)):
        a, alpha = split(i)
        for j in range(i, len(basis)):
            b, beta = split(j)
            if not base.bilinear_defined(alpha, beta):
                continue
            value = base.bracket_basis(alpha, beta)
            if value:
                bilinear[(i, j)] = carry(value, G.add(a, b), clifford_phase(a, b))

    f_ary = {}
    for domain in base.f_domains():
        lifted = sorted(position[a] * d + alpha for a in elements for alpha in domain)
        for t in combinations_with_replacement(lifted, 3):
            (a, x), (b, y), (c, z) = (split(k) for k in t)
            value = base.f_bracket_basis((x, y, z))
            if value:
                ab = G.add(a, b)
                f_ary[t] = carry(value, G.add(ab, c), clifford_phase(a, b) + clifford_phase(ab, c))

    name = f"C_{n}^{p}*{base.name}" if base.name else f"C_{n}^{p}"
    return GradedAlgebra(kind, base.F, G, factor, basis, bilinear, f_ary, name=name)


def tensor_clifford_rep(base: GradedAlgebra, base_rep: MatrixRep, algebra: GradedAlgebra,
                        n: int, p: int = 2) -> MatrixRep:
    """rho(T^a) = rho_a (x) M for the Clifford tensor algebra built from base"""
    L = algebra.root_order
    generators, clifford_degrees = clifford_matrices(n, p, L)
    size = generators[0].size
    G = algebra.group
    d_rep = base_rep.dimension
    zero = SparseMatrix.zero(d_rep, L)
    matrices = {}
    for a in G.elements:
        rho = SparseMatrix.identity(size, L)
        for gen, power in zip(generators, a):
            rho = rho @ (gen ** power)
        for b in base.basis:
            M = base_rep.matrices.get(b.label, zero).lift(L)
            if M:
                matrices[f"{b.label}^{_vector(a)}"] = rho.kron(M)
    degrees = tuple(clifford_degrees[c] for c in range(size) for _ in range(d_rep))
    grades = tuple(base_rep.zf_grades[k] for _ in range(size) for k in range(d_rep))
    return MatrixRep(size * d_rep, grades, GradingMap(G, degrees), matrices,
                     name=f"rho({algebra.name})")


# ---------------------------------------------------------------------------
# Order-3 matrix algebras
# ---------------------------------------------------------------------------

def _block_units(sizes: Sequence[int], elementary: bool) -> Tuple[List[Tuple[int, int]], List[str], List[int]]:
    """Matrix units ordered X, Y, Z with their labels and Z_3 grades"""
    if len(sizes) != 3 or any(m < 1 for m in sizes):
        raise EmptyBlocks(f"order-3 block algebras need three nonempty blocks, got {list(sizes)}")
    blocks = block_index(sizes)
    M = len(blocks)
    units, labels, grades = [], [], []
    for grade in (0, 1) if elementary else (0, 1, 2):
        for I in range(M):
            for J in range(M):
                if (blocks[J] - blocks[I]) % 3 == grade:
                    units.append((I, J))
                    labels.append(f"{'XYZ'[grade]}[{I + 1},{J + 1}]")
                    grades.append(grade)
    return units, labels, grades


def _six_delta_terms(y1: Tuple[int, int], y2: Tuple[int, int],
                     y3: Tuple[int, int]) -> List[Tuple[int, int]]:
    """Matrix units produced by the fully symmetrized triple product of units"""
    (I, J), (K, L), (M, N) = y1, y2, y3
    out = []
    if J == K and L == M:
        out.append((I, N))
    if N == I and J == K:
        out.append((M, L))
    if L == M and N == I:
        out.append((K, J))
    if J == M and N == K:
        out.append((I, L))
    if N == K and L == I:
        out.append((M, J))
    if L == I and J == M:
        out.append((K, N))
    return out


def build_mat_order3(m1: int, m2: int, m3: int, elementary: bool = False) -> BuildResult:
    """mat(m1,m2,m3): X, Y, Z blocks of a Z_3-graded matrix algebra as a Lie algebra of order 3"""
    sizes = (m1, m2, m3)
    units, labels, grades = _block_units(sizes, elementary)
    position = {u: i for i, u in enumerate(units)}
    factor = _trivial_factor()
    L = factor.root_order
    basis = [BasisElement(label, g, ()) for label, g in zip(labels, grades)]

    bilinear = {}
    for i, (I, J) in enumerate(units):
        for j in range(i, len(units)):
            if grades[i] and grades[j]:
                continue
            K, Lx = units[j]
            terms: Dict[int, int] = {}
            if J == K:
                terms[position[(I, Lx)]] = terms.get(position[(I, Lx)], 0) + 1
            if Lx == I:
                terms[position[(K, J)]] = terms.get(position[(K, J)], 0) - 1
            value = AlgebraElement(L, terms)
            if value:
                bilinear[(i, j)] = value

    f_ary = {}
    for grade in (1,) if elementary else (1, 2):
        domain = [i for i, g in enumerate(grades) if g == grade]
        for t in combinations_with_replacement(domain, 3):
            terms: Dict[int, int] = {}
            for unit in _six_delta_terms(*(units[k] for k in t)):
                k = position[unit]
                terms[k] = terms.get(k, 0) + 1
            value = AlgebraElement(L, terms)
            if value:
                f_ary[t] = value

    tag = "mat_el" if elementary else "mat"
    name = f"{tag}({m1},{m2},{m3})"
    algebra = GradedAlgebra(AlgebraKind.LIE_ORDER_F, 3, TRIVIAL_GROUP, factor, basis,
                            bilinear, f_ary, name=name)
    size = sum(sizes)
    blocks = block_index(sizes)
    matrices = {label: SparseMatrix.unit(size, L, I, J) for (I, J), label in zip(units, labels)}
    rep = MatrixRep(size, tuple(blocks), GradingMap(TRIVIAL_GROUP, ((),) * size), matrices,
                    name=f"defining({name})")
    return BuildResult(algebra, rep)


def block_matrix_algebra(sizes: Sequence[int],
                         index_degrees: Optional[Sequence[GroupElement]] = None,
                         factor: Optional[CommutationFactor] = None) -> AssociativeAlgebra:
    """Associative Z_3 x Gamma graded algebra of all units, labelled like mat(m1,m2,m3)"""
    units, labels, grades = _block_units(sizes, elementary=False)
    factor = factor or _trivial_factor()
    group = factor.group
    M = sum(sizes)
    degrees = [tuple(d) for d in index_degrees] if index_degrees is not None else [group.zero()] * M
    if len(degrees) != M:
        raise EmptyBlocks(f"{len(degrees)} index degrees for {M} indices")
    position = {u: i for i, u in enumerate(units)}
    basis = [
        BasisElement(label, g, group.sub(degrees[J], degrees[I]))
        for (I, J), label, g in zip(units, labels, grades)
    ]
    products = {
        (position[(I, J)], position[(K, L)]): {position[(I, L)]: 1}
        for I, J in units for K, L in units if J == K
    }
    name = "blocks(" + ",".join(str(m) for m in sizes) + ")"
    return AssociativeAlgebra(group, factor.root_order, basis, products, F=3, factor=factor, name=name)


def clifford_tensor_associative(A: AssociativeAlgebra, n: int,
                                labeler: Optional[Callable[[int, str], str]] = None) -> AssociativeAlgebra:
    """C_n^1 (x) A, Z_n graded by the power of e"""
    labeler = labeler or (lambda k, label: f"e{k}*{label}")
    d = A.dimension
    basis = [
        BasisElement(labeler(k, b.label), k, b.degree) for k in range(n) for b in A.basis
    ]
    products = {}
    for k in range(n):
        for l in range(n):
            offset = ((k + l) % n) * d
            for i in range(d):
                for j in range(d):
                    value = A.product_basis(i, j)
                    if value:
                        products[(k * d + i, l * d + j)] = {offset + g: c for g, c in value.terms.items()}
    return AssociativeAlgebra(A.group, A.root_order, basis, products, F=n, factor=A.factor,
                              name=f"C_{n}^1*{A.name}")


def cyclic_embedding_check(m: int) -> VerificationReport:
    """
    The map e^k (x) E_pq -> sum_b E_(b,p),(b+k,q) from C_3^1 (x) gl(m) into
    mat(m,m,m) preserves every bilinear and trilinear bracket.
    """
    gl = matrix_unit_algebra((m,), _trivial_factor())
    source = from_associative(AlgebraKind.LIE_ORDER_F, clifford_tensor_associative(gl, 3))
    target = build_mat_order3(m, m, m).algebra
    report = VerificationReport(name="cyclic_embedding")

    def image(x: AlgebraElement) -> AlgebraElement:
        terms: Dict[str, CycloScalar] = {}
        for i, c in x.terms.items():
            k, rest = divmod(i, m * m)
            p, q = divmod(rest, m)
            for b in range(3):
                row, col = b * m + p, ((b + k) % 3) * m + q
                label = f"{'XYZ'[k]}[{row + 1},{col + 1}]"
                terms[label] = c
        return target.element(terms)

    n = source.dimension
    for i in range(n):
        for j in range(n):
            if not source.bilinear_defined(i, j):
                continue
            report.count("bilinear")
            lhs = image(source.bracket_basis(i, j))
            rhs = bracket_eval(target, image(source.basis_vector(i)), image(source.basis_vector(j)))
            if lhs != rhs:
                report.record("bilinear", [source.basis[i].label, source.basis[j].label],
                              target.render(lhs), target.render(rhs))
    for domain in source.f_domains():
        for t in combinations_with_replacement(domain, 3):
            report.count("f_ary")
            lhs = image(source.f_bracket_basis(t))
            rhs = f_bracket_eval(target, *(image(source.basis_vector(k)) for k in t))
            if lhs != rhs:
                report.record("f_ary", [source.basis[k].label for k in t],
                              target.render(lhs), target.render(rhs))
    report.note_space(report.checks_run, False, None)
    return report


# ---------------------------------------------------------------------------
# Poincare and adjoint order-3 algebras
# ---------------------------------------------------------------------------

def _lorentz_label(mu: int, nu: int, D: int) -> str:
    return f"L_{mu}{nu}" if D <= 10 else f"L_{mu}_{nu}"


def build_iso3_poincare(D: int) -> GradedAlgebra:
    """Poincare algebra in D dimensions with a vector module and {V,V,V} in P"""
    if D < 2:
        raise ValueError(f"Poincare order-3 algebra needs D >= 2, got {D}")
    factor = _trivial_factor()
    L = factor.root_order
    pairs = [(mu, nu) for mu in range(D) for nu in range(mu + 1, D)]
    basis = [BasisElement(_lorentz_label(mu, nu, D), 0, ()) for mu, nu in pairs]
    basis += [BasisElement(f"P_{mu}", 0, ()) for mu in range(D)]
    basis += [BasisElement(f"V_{mu}", 1, ()) for mu in range(D)]
    lorentz = {pair: k for k, pair in enumerate(pairs)}
    P = {mu: len(pairs) + mu for mu in range(D)}
    V = {mu: len(pairs) + D + mu for mu in range(D)}

    def eta(mu: int, nu: int) -> int:
        if mu != nu:
            return 0
        return 1 if mu == 0 else -1

    def add_L(terms: Dict[int, int], c: int, mu: int, nu: int) -> None:
        if not c or mu == nu:
            return
        k, sign = (lorentz[(mu, nu)], 1) if mu < nu else (lorentz[(nu, mu)], -1)
        terms[k] = terms.get(k, 0) + c * sign

    def add(terms: Dict[int, int], c: int, k: int) -> None:
        if c:
            terms[k] = terms.get(k, 0) + c

    bilinear = {}
    for (mu, nu), i in lorentz.items():
        for (rho, sigma), j in lorentz.items():
            if j < i:
                continue
            terms: Dict[int, int] = {}
            add_L(terms, eta(nu, sigma), rho, mu)
            add_L(terms, -eta(mu, sigma), rho, nu)
            add_L(terms, eta(nu, rho), mu, sigma)
            add_L(terms, -eta(mu, rho), nu, sigma)
            bilinear[(i, j)] = AlgebraElement(L, terms)
        for family in (P, V):
            for rho, j in family.items():
                terms = {}
                add(terms, eta(nu, rho), family[mu])
                add(terms, -eta(mu, rho), family[nu])
                bilinear[(i, j)] = AlgebraElement(L, terms)

    f_ary = {}
    for mu, nu, rho in combinations_with_replacement(range(D), 3):
        terms = {}
        add(terms, eta(mu, nu), P[rho])
        add(terms, eta(mu, rho), P[nu])
        add(terms, eta(rho, nu), P[mu])
        f_ary[(V[mu], V[nu], V[rho])] = AlgebraElement(L, terms)

    return GradedAlgebra(AlgebraKind.LIE_ORDER_F, 3, TRIVIAL_GROUP, factor, basis,
                         bilinear, f_ary, name=f"iso3(1,{D - 1})")


def build_adjoint_order3(base: GradedAlgebra) -> GradedAlgebra:
    """g_0 + ad(g_0) with {A_a,A_b,A_c} = g_ab J_c + g_ac J_b + g_bc J_a, g the Killing form"""
    if not base.kind.is_color or base.group.rank or not base.factor.is_trivial():
        raise UnsupportedKind("adjoint order-3 algebra needs an ordinary Lie algebra")
    ad = adjoint_embedding(base)
    n = base.dimension
    L = base.root_order
    mats = [ad.matrices[b.label] for b in base.basis]
    killing = [[(mats[a] @ mats[b]).trace() for b in range(n)] for a in range(n)]

    basis = [BasisElement(f"J_{b.label}", 0, ()) for b in base.basis]
    basis += [BasisElement(f"A_{b.label}", 1, ()) for b in base.basis]

    def shifted(value: AlgebraElement, offset: int) -> AlgebraElement:
        return AlgebraElement(L, {offset + k: c for k, c in value.terms.items()})

    bilinear = {}
    for a in range(n):
        for b in range(n):
            value = base.bracket_basis(a, b)
            if value:
                if a <= b:
                    bilinear[(a, b)] = value
                bilinear[(a, n + b)] = shifted(value, n)

    f_ary = {}
    for a, b, c in combinations_with_replacement(range(n), 3):
        terms: Dict[int, CycloScalar] = {}
        for coeff, k in ((killing[a][b], c), (killing[a][c], b), (killing[b][c], a)):
            if coeff:
                terms[k] = terms[k] + coeff if k in terms else coeff
        value = AlgebraElement(L, terms)
        if value:
            f_ary[(n + a, n + b, n + c)] = value

    return GradedAlgebra(AlgebraKind.LIE_ORDER_F, 3, TRIVIAL_GROUP, _trivial_factor(), basis,
                         bilinear, f_ary, name=f"adjoint3({base.name})")


# ---------------------------------------------------------------------------
# Color order-3 families
# ---------------------------------------------------------------------------

def clifford_tensor_gl(block_sizes: Sequence[int], factor: CommutationFactor,
                       block_degrees: Optional[Sequence[GroupElement]] = None) -> GradedAlgebra:
    """<1,e> (x) gl({m}): X = 1 (x) E, Y = e (x) E, elementary color algebra of order 3"""
    _require_valid(factor)
    gl = matrix_unit_algebra(block_sizes, factor, block_degrees, prefix="")
    tensor = clifford_tensor_associative(gl, 3, labeler=lambda k, label: f"{'XYZ'[k]}{label}")
    full = from_associative(AlgebraKind.COLOR_ORDER3, tensor, factor)
    name = "clifford_gl(" + ",".join(str(m) for m in block_sizes) + ")"
    return extract_elementary(full, 1).replace(name=name)


def _triple_index_degrees(factors: Sequence[CommutationFactor], block_sizes: Sequence[Sequence[int]],
                          block_degrees: Optional[Sequence[Optional[Sequence[GroupElement]]]]):
    groups = [f.group for f in factors]
    degrees: List[GroupElement] = []
    local: List[GradingMap] = []
    for k, (N, sizes) in enumerate(zip(factors, block_sizes)):
        chosen = block_degrees[k] if block_degrees else None
        gr = block_grading(N.group, sizes, _block_degrees(N.group, sizes, chosen))
        local.append(gr)
        degrees.extend(embed(groups, k, gr[i]) for i in range(gr.domain_size))
    return degrees, local


def triple_gl(factors: Sequence[CommutationFactor], block_sizes: Sequence[Sequence[int]],
              block_degrees: Optional[Sequence[Optional[Sequence[GroupElement]]]] = None) -> GradedAlgebra:
    """Elementary 3x3 block algebra over Gamma_1 x Gamma_2 x Gamma_3 with the product factor"""
    if len(factors) != 3 or len(block_sizes) != 3:
        raise EmptyBlocks("triple_gl needs three factors and three block-size lists")
    for N in factors:
        _require_valid(N)
    degrees, _ = _triple_index_degrees(factors, block_sizes, block_degrees)
    factor = product_factor(*factors)
    sizes = [sum(s) for s in block_sizes]
    assoc = block_matrix_algebra(sizes, degrees, factor)
    full = from_associative(AlgebraKind.COLOR_ORDER3, assoc, factor)
    name = "triple_gl(" + ";".join(",".join(str(m) for m in s) for s in block_sizes) + ")"
    return extract_elementary(full, 1).replace(name=name)


def build_color_order3_family(variant: str, **params) -> GradedAlgebra:
    if variant == "clifford_tensor_gl":
        return clifford_tensor_gl(params["block_sizes"], params["factor"], params.get("block_degrees"))
    if variant == "triple_gl":
        return triple_gl(params["factors"], params["block_sizes"], params.get("block_degrees"))
    raise UnsupportedKind(f"unknown color order-3 family {variant!r}")


def cross_check_family(variant: str, **params) -> VerificationReport:
    """Compare the family's table with the closed-form brackets it should satisfy"""
    A = build_color_order3_family(variant, **params)
    report = VerificationReport(name="printed_brackets")
    L = A.root_order

    if variant == "clifford_tensor_gl":
        factor = params["factor"].lift(L)
        G = factor.group
        sizes = params["block_sizes"]
        gr = block_grading(G, sizes, _block_degrees(G, sizes, params.get("block_degrees")))
        m = gr.domain_size
        Y = [(p, q) for p in range(m) for q in range(m)]

        def deg(u):
            return G.sub(gr[u[1]], gr[u[0]])

        for y1, y2, y3 in product(Y, repeat=3):
            (p, q), (r, s), (t, u) = y1, y2, y3
            n12, n13, n23 = factor(deg(y1), deg(y2)), factor(deg(y1), deg(y3)), factor(deg(y2), deg(y3))
            terms: List[Tuple[CycloScalar, Tuple[int, int]]] = []
            if q == r and s == t:
                terms.append((CycloScalar.one(L), (p, u)))
            if s == t and u == p:
                terms.append((n12 * n13, (r, q)))
            if u == p and q == r:
                terms.append((n13 * n23, (t, s)))
            if q == t and u == r:
                terms.append((n23, (p, s)))
            if s == p and q == t:
                terms.append((n12, (r, u)))
            if u == r and s == p:
                terms.append((n12 * n13 * n23, (t, q)))
            expected = A.zero()
            for c, (i, j) in terms:
                expected = expected + A.basis_vector(f"X{i + 1}_{j + 1}").scale(c)
            labels = [f"Y{a + 1}_{b + 1}" for a, b in (y1, y2, y3)]
            actual = A.f_bracket_basis([A.index_of(x) for x in labels])
            report.count("six_term")
            if actual != expected:
                report.record("six_term", labels, A.render(actual), A.render(expected))

    elif variant == "triple_gl":
        factors = [N.lift(L) for N in params["factors"]]
        block_sizes = params["block_sizes"]
        _, local = _triple_index_degrees(factors, block_sizes, params.get("block_degrees"))
        N1, N2, N3 = factors
        m1, m2, m3 = (sum(s) for s in block_sizes)
        first = range(m1)
        second = range(m1, m1 + m2)
        third = range(m1 + m2, m1 + m2 + m3)

        def gr(k: int, i: int) -> GroupElement:
            offset = (0, m1, m1 + m2)[k]
            return local[k][i - offset]

        def unit(letter: str, i: int, j: int) -> str:
            return f"{letter}[{i + 1},{j + 1}]"

        def bracket(x: str, y: str) -> AlgebraElement:
            return A.bracket_basis(A.index_of(x), A.index_of(y))

        for i in first:
            for j in first:
                for k in first:
                    for l2 in second:
                        report.count("block1_action")
                        expected = A.basis_vector(unit("Y", i, l2)) if k == j else A.zero()
                        actual = bracket(unit("X", i, j), unit("Y", k, l2))
                        if actual != expected:
                            report.record("block1_action", [unit("X", i, j), unit("Y", k, l2)],
                                          A.render(actual), A.render(expected))
        G2 = N2.group
        for i2 in second:
            for j2 in second:
                for k in first:
                    for l2 in second:
                        report.count("block2_action")
                        expected = A.zero()
                        if i2 == l2:
                            c = -N2(G2.sub(gr(1, i2), gr(1, j2)), G2.neg(gr(1, l2)))
                            expected = A.basis_vector(unit("Y", k, j2)).scale(c)
                        actual = bracket(unit("X", i2, j2), unit("Y", k, l2))
                        if actual != expected:
                            report.record("block2_action", [unit("X", i2, j2), unit("Y", k, l2)],
                                          A.render(actual), A.render(expected))
        G1, G3 = N1.group, N3.group
        for i in first:
            for j2 in second:
                for k2 in second:
                    for l3 in third:
                        for m3_ in third:
                            for n in first:
                                report.count("triple")
                                expected = A.zero()
                                if j2 == k2 and l3 == m3_:
                                    expected = expected + A.basis_vector(unit("X", i, n))
                                if l3 == m3_ and n == i:
                                    c = N2(G2.neg(gr(1, j2)), gr(1, k2)) * N1(gr(0, i), G1.neg(gr(0, n)))
                                    expected = expected + A.basis_vector(unit("X", k2, j2)).scale(c)
                                if n == i and j2 == k2:
                                    c = N3(G3.neg(gr(2, l3)), gr(2, m3_)) * N1(gr(0, i), G1.neg(gr(0, n)))
                                    expected = expected + A.basis_vector(unit("X", m3_, l3)).scale(c)
                                labels = [unit("Y", i, j2), unit("Y", k2, l3), unit("Y", m3_, n)]
                                actual = A.f_bracket_basis([A.index_of(x) for x in labels])
                                if actual != expected:
                                    report.record("triple", labels, A.render(actual), A.render(expected))
    else:
        raise UnsupportedKind(f"unknown color order-3 family {variant!r}")

    report.note_space(report.checks_run, False, None)
    return report


# ---------------------------------------------------------------------------
# Decoloration
# ---------------------------------------------------------------------------

def _chain_exponent(sigma: Multiplier, group: AbelianGroup, degrees: Sequence[GroupElement]) -> int:
    """Exponent of sigma(-a,-b) sigma(-a-b,-c) ... along a tuple of degrees"""
    total = 0
    acc = group.neg(degrees[0])
    for d in degrees[1:]:
        nd = group.neg(d)
        total += sigma.exponent(acc, nd)
        acc = group.add(acc, nd)
    return total


def _rescale(A: GradedAlgebra, sigma: Multiplier, L: int, direction: int):
    step = L // sigma.root_order
    bilinear = {}
    for key, value in A.stored_bilinear.items():
        e = direction * step * _chain_exponent(sigma, A.group, [A.degree(i) for i in key])
        bilinear[key] = value.lift(L).scale(root_of_unity(L, e))
    f_ary = {}
    for key, value in A.stored_f_ary.items():
        e = direction * step * _chain_exponent(sigma, A.group, [A.degree(i) for i in key])
        f_ary[key] = value.lift(L).scale(root_of_unity(L, e))
    return bilinear, f_ary


def decolor(A: GradedAlgebra, sigma: Optional[Multiplier] = None) -> BuildResult:
    """
    Rescale constants by sigma(-a,-b) (bilinear) and sigma(-a,-b) sigma(-a-b,-c)
    (trilinear). The result carries only the sign factor (-1)^(|a||b|).
    """
    plus = n_plus(A.factor)
    if sigma is None:
        sigma = bicharacter_multiplier(plus)
    check_multiplier_matches(sigma, plus)
    signs = sign_factor(A.factor)
    L = lcm(A.root_order, sigma.root_order, signs.root_order)
    bilinear, f_ary = _rescale(A, sigma, L, 1)
    kind = {
        AlgebraKind.COLOR_LIE: AlgebraKind.COLOR_LIE,
        AlgebraKind.COLOR_LIE_SUPER: AlgebraKind.COLOR_LIE_SUPER,
        AlgebraKind.COLOR_ORDER3: AlgebraKind.LIE_ORDER_F,
        AlgebraKind.LIE_ORDER_F: AlgebraKind.LIE_ORDER_F,
    }[A.kind]
    out = GradedAlgebra(kind, A.F, A.group, signs.lift(L), A.basis, bilinear, f_ary,
                        name=f"decolor({A.name})" if A.name else "decolor")
    logger.info("decolored %s with multiplier %s", A.name, [list(r) for r in sigma.exponents])
    return BuildResult(out, multiplier=sigma, colored_factor=A.factor)


def recolor(A: GradedAlgebra, sigma: Multiplier, factor: CommutationFactor,
            kind: AlgebraKind) -> GradedAlgebra:
    """Undo decolor: divide constants back by the multiplier chain"""
    L = lcm(A.root_order, sigma.root_order, factor.root_order)
    bilinear, f_ary = _rescale(A, sigma, L, -1)
    name = A.name[len("decolor("):-1] if A.name.startswith("decolor(") else A.name
    return GradedAlgebra(kind, A.F, A.group, factor.lift(L), A.basis, bilinear, f_ary, name=name)


# ---------------------------------------------------------------------------
# Named constructions
# ---------------------------------------------------------------------------

def parse_base(name: str) -> BuildResult:
    """gl<m>, sl2, nonabelian2, abelian<d>, mat:a,b,c, mat_el:a,b,c, iso3:D"""
    if ":" in name:
        tag, _, arg = name.partition(":")
        try:
            values = [int(x) for x in arg.split(",")]
        except ValueError as e:
            raise SpecFormatError(f"bad base algebra parameters {name!r}") from e
        if tag in ("mat", "mat_el") and len(values) == 3:
            return build_mat_order3(*values, elementary=(tag == "mat_el"))
        if tag == "iso3" and len(values) == 1:
            return BuildResult(build_iso3_poincare(values[0]))
        raise UnsupportedKind(f"unknown base algebra {name!r}")
    return build_classical_lie(name)


CONSTRUCTIONS = (
    "color_gl", "clifford", "tensor_clifford", "mat3", "iso3", "adjoint3",
    "color3_family", "decolor", "from_associative",
)


def build_construction(name: str, params: Dict[str, Any]) -> BuildResult:
    """Dispatch a named construction with already-parsed parameters"""
    if name == "color_gl":
        return build_color_gl(params["sizes"], params["factor"], params.get("block_degrees"))
    if name == "clifford":
        n, p = params.get("n", 3), params.get("p", 2)
        assoc, rep = build_generalized_clifford(n, p, with_rep=p <= 2)
        algebra = from_associative(AlgebraKind.COLOR_LIE, assoc, name=f"C_{n}^{p}")
        return BuildResult(algebra, rep)
    if name == "tensor_clifford":
        base = parse_base(params.get("base", "gl2"))
        n, p = params.get("n", 3), params.get("p", 2)
        algebra = tensor_clifford(base.algebra, n, p)
        rep = None
        if base.representation is not None and p <= 2:
            rep = tensor_clifford_rep(base.algebra, base.representation, algebra, n, p)
        return BuildResult(algebra, rep)
    if name == "mat3":
        sizes = params.get("sizes", (1, 1, 1))
        return build_mat_order3(*sizes, elementary=params.get("elementary", False))
    if name == "iso3":
        return BuildResult(build_iso3_poincare(params.get("dim", 4)))
    if name == "adjoint3":
        return BuildResult(build_adjoint_order3(parse_base(params.get("base", "sl2")).algebra))
    if name == "color3_family":
        variant = params.get("variant", "clifford_tensor_gl")
        if variant == "triple_gl":
            return BuildResult(triple_gl(params["factors"], params["block_sizes"]))
        return BuildResult(clifford_tensor_gl(params["sizes"], params["factor"],
                                              params.get("block_degrees")))
    if name == "decolor":
        return decolor(params["algebra"])
    if name == "from_associative":
        source = params.get("source", "clifford")
        kind = AlgebraKind(params.get("kind", "color_lie"))
        if source == "clifford":
            assoc, rep = build_generalized_clifford(params.get("n", 3), params.get("p", 2),
                                                    with_rep=params.get("p", 2) <= 2)
        elif source == "block_matrix":
            assoc, rep = block_matrix_algebra(params.get("sizes", (1, 1, 1))), None
        elif source == "clifford_gl":
            m = params.get("m", 1)
            gl = matrix_unit_algebra((m,), _trivial_factor())
            assoc, rep = clifford_tensor_associative(gl, 3), None
        else:
            raise UnsupportedKind(f"unknown associative source {source!r}")
        return BuildResult(from_associative(kind, assoc), rep)
    raise UnsupportedKind(f"unknown construction {name!r}; choose one of {', '.join(CONSTRUCTIONS)}")
