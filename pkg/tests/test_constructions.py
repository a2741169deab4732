"""
COLOR ALGEBRA ENGINE - CONSTRUCTION TESTS
=========================================
Run with: pytest tests/test_constructions.py -v
"""

import sys
from math import lcm
from pathlib import Path

import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from algebra import (
    AlgebraKind,
    check_associative,
    check_associative_representation,
    check_jacobi,
    check_representation,
    check_symmetries,
    compare_tables,
    from_associative,
    tables_equal,
)
from constructions import (
    CONSTRUCTIONS,
    block_matrix_algebra,
    build_adjoint_order3,
    build_classical_lie,
    build_color_gl,
    build_construction,
    build_generalized_clifford,
    build_iso3_poincare,
    build_mat_order3,
    clifford_matrices,
    clifford_tensor_gl,
    cross_check_family,
    cyclic_embedding_check,
    decolor,
    parse_base,
    recolor,
    tensor_clifford,
    tensor_clifford_rep,
    triple_gl,
)
from errors import (
    EmptyBlocks,
    InvalidFactor,
    MultiplierMismatch,
    SpecFormatError,
    UnsupportedKind,
    UnsupportedRep,
)
from factor import CommutationFactor, Multiplier, sign_factor
from grading import AbelianGroup
from matrices import SparseMatrix
from scalar import root_of_unity

Z2 = AbelianGroup((2,))
TRIVIAL = AbelianGroup(())
Q_DEGREES = [(0, 0), (1, 0), (0, 1)]


def q_factor() -> CommutationFactor:
    return CommutationFactor(AbelianGroup((3, 3)), 3, ((0, 1), (-1, 0)))


def super_factor() -> CommutationFactor:
    return CommutationFactor(Z2, 2, ((1,),))


class TestGeneralizedClifford:

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_generator_relations(self, n):
        L = lcm(2, n)
        (rho1, rho2), degrees = clifford_matrices(n, 2, L)
        identity = SparseMatrix.identity(n * n, L)
        q = root_of_unity(L, L // n)
        assert rho1 ** n == identity
        assert rho2 ** n == identity
        assert all(rho1 ** k != identity for k in range(1, n))
        assert rho1 @ rho2 == (rho2 @ rho1).scale(q)
        assert degrees.domain_size == n * n

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_representation_is_faithful_on_products(self, n):
        assoc, rep = build_generalized_clifford(n, 2)
        assert assoc.dimension == n * n
        assert rep.dimension == n * n
        assert check_associative_representation(assoc, rep).passed

    def test_single_generator(self):
        assoc, rep = build_generalized_clifford(4, 1)
        assert [b.label for b in assoc.basis] == ["1", "e", "e^2", "e^3"]
        assert check_associative_representation(assoc, rep).passed

    def test_three_generators_have_no_matrices(self):
        assoc, rep = build_generalized_clifford(2, 3, with_rep=False)
        assert rep is None
        assert check_associative(assoc).passed
        with pytest.raises(UnsupportedRep):
            build_generalized_clifford(2, 3)

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            build_generalized_clifford(0, 2)

    def test_color_lie_algebra(self):
        result = build_construction("clifford", {"n": 3, "p": 2})
        assert result.algebra.dimension == 9
        assert check_jacobi(result.algebra).passed
        assert check_representation(result.algebra, result.representation).passed


class TestColorGl:

    def test_q_factor_blocks(self):
        result = build_color_gl((1, 1, 1), q_factor(), Q_DEGREES)
        assert result.algebra.kind == AlgebraKind.COLOR_LIE
        assert result.algebra.dimension == 9
        assert check_jacobi(result.algebra).passed
        assert check_representation(result.algebra, result.representation).passed

    def test_super_blocks(self):
        result = build_color_gl((2, 1), super_factor())
        assert result.algebra.kind == AlgebraKind.COLOR_LIE_SUPER
        assert check_representation(result.algebra, result.representation).passed

    def test_invalid_factor(self):
        symmetric = CommutationFactor(AbelianGroup((3, 3)), 3, ((0, 1), (1, 0)))
        with pytest.raises(InvalidFactor):
            build_color_gl((1, 1), symmetric)

    def test_too_many_blocks_without_degrees(self):
        with pytest.raises(EmptyBlocks):
            build_color_gl((1, 1, 1), super_factor())

    def test_dispatch(self):
        result = build_construction("color_gl", {
            "sizes": (1, 1, 1), "factor": q_factor(), "block_degrees": Q_DEGREES,
        })
        assert result.algebra.name == "gl(1,1,1)"


class TestClassicalLie:

    @pytest.mark.parametrize("name", ["gl2", "sl2", "nonabelian2", "abelian3"])
    def test_defining_representations(self, name):
        result = build_classical_lie(name)
        assert check_jacobi(result.algebra).passed
        assert check_representation(result.algebra, result.representation).passed

    def test_unknown(self):
        with pytest.raises(UnsupportedKind):
            build_classical_lie("so5")


class TestCliffordTensor:

    def test_lie_base(self):
        base = build_classical_lie("nonabelian2")
        A = tensor_clifford(base.algebra, 2)
        assert A.kind == AlgebraKind.COLOR_LIE
        assert A.dimension == 8
        assert check_jacobi(A).passed
        rep = tensor_clifford_rep(base.algebra, base.representation, A, 2)
        assert check_representation(A, rep).passed

    def test_gl2_base_with_three_generators_per_axis(self):
        result = build_construction("tensor_clifford", {"base": "gl2", "n": 3})
        assert result.algebra.dimension == 36
        assert check_jacobi(result.algebra, budget=3000, seed=5).passed
        assert check_representation(result.algebra, result.representation).passed

    def test_order_three_base(self):
        base = build_mat_order3(1, 1, 1, elementary=True)
        A = tensor_clifford(base.algebra, 2)
        assert A.kind == AlgebraKind.COLOR_ORDER3
        assert check_symmetries(A).passed
        assert check_jacobi(A, budget=3000, seed=5).passed

    def test_graded_base_rejected(self):
        A = build_color_gl((1, 1, 1), q_factor(), Q_DEGREES).algebra
        with pytest.raises(UnsupportedKind):
            tensor_clifford(A, 3)


class TestOrderThreeMatrices:

    @pytest.mark.parametrize("sizes", [(1, 1, 1), (2, 1, 1), (1, 2, 1)])
    def test_identities_and_representation(self, sizes):
        result = build_mat_order3(*sizes)
        m = sum(sizes)
        assert result.algebra.dimension == m * m
        assert check_jacobi(result.algebra).passed
        assert check_representation(result.algebra, result.representation).passed

    def test_elementary_part(self):
        result = build_mat_order3(2, 1, 1, elementary=True)
        assert result.algebra.component(2) == []
        assert check_jacobi(result.algebra).passed
        assert check_representation(result.algebra, result.representation).passed

    def test_two_by_two_blocks_match_block_matrices(self):
        result = build_mat_order3(2, 2, 2)
        assert result.algebra.dimension == 36
        assert check_jacobi(result.algebra).passed
        commutators = from_associative(AlgebraKind.LIE_ORDER_F, block_matrix_algebra((2, 2, 2)))
        assert tables_equal(result.algebra, commutators)

    def test_needs_three_blocks(self):
        with pytest.raises(EmptyBlocks):
            build_mat_order3(1, 0, 1)

    def test_cyclic_embedding(self):
        for m in (1, 2):
            report = cyclic_embedding_check(m)
            assert report.passed
            assert report.parts["f_ary"] > 0


class TestPoincareAndAdjoint:

    def test_poincare_four_dimensions(self):
        A = build_iso3_poincare(4)
        assert A.dimension == 14
        assert len(A.component(1)) == 4
        report = check_jacobi(A)
        assert report.passed
        assert set(report.parts) == {"jacobi_g0", "jacobi_module", "derivation", "cyclic"}

    def test_poincare_needs_two_dimensions(self):
        with pytest.raises(ValueError):
            build_iso3_poincare(1)

    def test_spot_values(self):
        A = build_iso3_poincare(4)
        t = [A.index_of(x) for x in ("V_0", "V_0", "V_0")]
        assert A.f_bracket_basis(t) == A.element({"P_0": 3})
        assert A.bracket_basis(A.index_of("L_01"), A.index_of("P_0")) == A.element({"P_1": -1})

    def test_adjoint_sl2(self):
        A = build_adjoint_order3(build_classical_lie("sl2").algebra)
        assert A.dimension == 6
        assert check_jacobi(A).passed

    def test_adjoint_needs_lie_algebra(self):
        with pytest.raises(UnsupportedKind):
            build_adjoint_order3(build_mat_order3(1, 1, 1).algebra)


class TestColorOrderThreeFamilies:

    def test_clifford_tensor_gl(self):
        A = clifford_tensor_gl((1, 1), q_factor(), Q_DEGREES[:2])
        assert A.kind == AlgebraKind.COLOR_ORDER3
        assert A.dimension == 8
        assert check_jacobi(A).passed
        report = cross_check_family("clifford_tensor_gl", block_sizes=(1, 1), factor=q_factor(),
                                    block_degrees=Q_DEGREES[:2])
        assert report.passed
        assert report.parts == {"six_term": 64}

    def test_triple_gl(self):
        factors = (super_factor(), CommutationFactor.trivial(TRIVIAL), super_factor())
        sizes = ((1, 1), (1,), (1, 1))
        A = triple_gl(factors, sizes)
        assert A.group.orders == (2, 2)
        assert check_jacobi(A, budget=3000, seed=11).passed
        report = cross_check_family("triple_gl", factors=factors, block_sizes=sizes)
        assert report.passed
        assert set(report.parts) == {"block1_action", "block2_action", "triple"}

    def test_dispatch(self):
        result = build_construction("color3_family", {
            "variant": "clifford_tensor_gl", "sizes": (1, 1), "factor": q_factor(),
            "block_degrees": Q_DEGREES[:2],
        })
        assert result.algebra.name == "clifford_gl(1,1)"

    def test_unknown_variant(self):
        with pytest.raises(UnsupportedKind):
            cross_check_family("quadruple_gl")


class TestDecoloration:

    def setup_method(self):
        self.colored = build_color_gl((1, 1, 1), q_factor(), Q_DEGREES).algebra

    def test_color_lie_becomes_ordinary(self):
        result = decolor(self.colored)
        A = result.algebra
        assert A.kind == AlgebraKind.COLOR_LIE
        assert A.factor.is_trivial()
        assert result.colored_factor == self.colored.factor
        assert check_jacobi(A).passed

    def test_recolor_round_trip(self):
        result = decolor(self.colored)
        back = recolor(result.algebra, result.multiplier, self.colored.factor, self.colored.kind)
        assert back.name == self.colored.name
        assert tables_equal(back, self.colored)

    def test_wrong_multiplier(self):
        trivial = Multiplier(self.colored.group, 3, ((0, 0), (0, 0)))
        with pytest.raises(MultiplierMismatch):
            decolor(self.colored, trivial)

    def test_superalgebra_keeps_signs(self):
        A = build_color_gl((2, 1), super_factor()).algebra
        result = decolor(A)
        assert result.algebra.kind == AlgebraKind.COLOR_LIE_SUPER
        assert result.algebra.factor == sign_factor(A.factor).lift(result.algebra.root_order)
        assert compare_tables(result.algebra, A).passed

    @pytest.mark.parametrize("base, budget", [("gl1", None), ("gl2", 3000)])
    def test_clifford_tensor_round_trip(self, base, budget):
        colored = tensor_clifford(build_classical_lie(base).algebra, 3)
        result = decolor(colored)
        assert result.algebra.factor.is_trivial()
        assert check_jacobi(result.algebra, budget=budget, seed=3).passed
        back = recolor(result.algebra, result.multiplier, colored.factor, colored.kind)
        assert tables_equal(back, colored)

    def test_order_three(self):
        A = clifford_tensor_gl((1, 1), q_factor(), Q_DEGREES[:2])
        result = decolor(A)
        assert result.algebra.kind == AlgebraKind.LIE_ORDER_F
        assert result.algebra.factor.is_trivial()
        assert check_jacobi(result.algebra).passed


class TestNamedConstructions:

    def test_all_names_listed(self):
        assert set(CONSTRUCTIONS) == {
            "color_gl", "clifford", "tensor_clifford", "mat3", "iso3", "adjoint3",
            "color3_family", "decolor", "from_associative",
        }

    def test_block_matrix_source(self):
        result = build_construction("from_associative", {
            "source": "block_matrix", "kind": "lie_order_f", "sizes": (1, 1, 1),
        })
        assert tables_equal(result.algebra, build_mat_order3(1, 1, 1).algebra)

    def test_clifford_gl_source(self):
        result = build_construction("from_associative", {
            "source": "clifford_gl", "kind": "lie_order_f", "m": 1,
        })
        assert result.algebra.F == 3
        assert check_jacobi(result.algebra).passed

    def test_iso3_and_adjoint(self):
        assert build_construction("iso3", {"dim": 3}).algebra.dimension == 9
        assert build_construction("adjoint3", {"base": "gl2"}).algebra.dimension == 8

    def test_unknown_construction(self):
        with pytest.raises(UnsupportedKind):
            build_construction("e8", {})

    def test_parse_base(self):
        assert parse_base("mat_el:1,1,1").algebra.name == "mat_el(1,1,1)"
        with pytest.raises(SpecFormatError):
            parse_base("mat:1,x,1")
        with pytest.raises(UnsupportedKind):
            parse_base("so:3")
