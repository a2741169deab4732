"""
COLOR ALGEBRA ENGINE - GRADED ALGEBRA TESTS
===========================================
Run with: pytest tests/test_algebra.py -v
"""

import sys
from pathlib import Path

import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from algebra import (
    AlgebraKind,
    AssociativeAlgebra,
    BasisElement,
    GradedAlgebra,
    MatrixRep,
    adjoint_embedding,
    bracket_eval,
    check_associative,
    check_associative_representation,
    check_jacobi,
    check_representation,
    check_symmetries,
    compare_tables,
    extract_elementary,
    f_bracket_eval,
    from_associative,
    tables_equal,
    weighted_product,
)
from constructions import (
    block_matrix_algebra,
    build_classical_lie,
    build_color_gl,
    build_generalized_clifford,
    build_mat_order3,
    matrix_unit_algebra,
)
from errors import (
    DegreeMismatch,
    EmptyComponent,
    GradeMismatch,
    GradingMismatch,
    MissingZfGrading,
    NotAssociative,
    SymmetryPrecondition,
    UnknownBasisElement,
    UnsupportedKind,
)
from factor import CommutationFactor
from grading import AbelianGroup, GradingMap
from matrices import SparseMatrix

Z2 = AbelianGroup((2,))
TRIVIAL = AbelianGroup(())


def super_factor() -> CommutationFactor:
    """N(a,b) = (-1)^(ab) on Z_2"""
    return CommutationFactor(Z2, 2, ((1,),))


def q_factor() -> CommutationFactor:
    return CommutationFactor(AbelianGroup((3, 3)), 3, ((0, 1), (-1, 0)))


def sl2() -> GradedAlgebra:
    return build_classical_lie("sl2").algebra


def broken_sl2() -> GradedAlgebra:
    """[H,E] = 3E breaks the Jacobi identity on (H, E, F)"""
    return sl2().replace(bilinear={
        ("H", "E"): {"E": 3}, ("H", "F"): {"F": -2}, ("E", "F"): {"H": 1},
    })


class TestGradedAlgebraTables:

    def test_reversed_lookup_uses_factor(self):
        A = sl2()
        assert A.bracket_basis(A.index_of("E"), A.index_of("H")) == A.element({"E": -2})
        assert A.bracket_basis(A.index_of("E"), A.index_of("E")) == A.zero()

    def test_super_bracket_is_symmetric_on_odd_pairs(self):
        A = build_color_gl((1, 1), super_factor()).algebra
        assert A.kind == AlgebraKind.COLOR_LIE_SUPER
        odd = A.index_of("E1_2"), A.index_of("E2_1")
        expected = A.element({"E1_1": 1, "E2_2": 1})
        assert A.bracket_basis(*odd) == expected
        assert A.bracket_basis(*reversed(odd)) == expected

    def test_unknown_label(self):
        with pytest.raises(UnknownBasisElement):
            sl2().replace(bilinear={("H", "W"): {"H": 1}})

    def test_degree_mismatch_is_rejected(self):
        basis = [BasisElement("a", 0, (0,)), BasisElement("b", 0, (1,))]
        with pytest.raises(DegreeMismatch):
            GradedAlgebra("color_lie", 1, Z2, CommutationFactor.trivial(Z2), basis,
                          {("a", "b"): {"a": 1}})

    def test_color_kind_needs_f_one(self):
        with pytest.raises(GradeMismatch):
            GradedAlgebra("color_lie", 3, TRIVIAL, CommutationFactor.trivial(TRIVIAL), [])

    def test_bilinear_between_nonzero_grades_is_undefined(self):
        A = build_mat_order3(1, 1, 1).algebra
        with pytest.raises(GradeMismatch):
            A.replace(bilinear={("Y[1,2]", "Y[2,3]"): {}})
        with pytest.raises(GradeMismatch):
            A.bracket_basis(A.index_of("Y[1,2]"), A.index_of("Z[1,3]"))

    def test_f_ary_needs_one_nonzero_grade(self):
        A = build_mat_order3(1, 1, 1).algebra
        with pytest.raises(GradeMismatch):
            A.replace(f_ary={("X[1,1]", "X[2,2]", "X[3,3]"): {}})
        with pytest.raises(GradeMismatch):
            A.replace(f_ary={("Y[1,2]", "Y[2,3]", "Z[1,3]"): {}})

    def test_f_ary_lookup_any_order(self):
        A = build_mat_order3(1, 1, 1).algebra
        t = [A.index_of(x) for x in ("Y[1,2]", "Y[2,3]", "Y[3,1]")]
        expected = A.element({"X[1,1]": 1, "X[2,2]": 1, "X[3,3]": 1})
        assert A.f_bracket_basis(t) == expected
        assert A.f_bracket_basis(list(reversed(t))) == expected

    def test_summary(self):
        summary = build_mat_order3(1, 1, 1).algebra.summary()
        assert summary["kind"] == "lie_order_f"
        assert summary["F"] == 3
        assert summary["components"] == {"0": 3, "1": 3, "2": 3}


class TestBracketEval:

    def test_bilinearity(self):
        A = sl2()
        x = A.element({"H": 1, "E": 1})
        y = A.basis_vector("F")
        assert bracket_eval(A, x, y) == A.element({"F": -2, "H": 1})

    def test_f_bracket_rejects_mixed_grades(self):
        A = build_mat_order3(1, 1, 1).algebra
        X, Y = A.basis_vector("X[1,1]"), A.basis_vector("Y[1,2]")
        with pytest.raises(GradeMismatch):
            f_bracket_eval(A, X, Y, Y)

    def test_f_bracket_on_lie_algebra(self):
        A = sl2()
        with pytest.raises(UnsupportedKind):
            f_bracket_eval(A, A.basis_vector("H"))

    def test_element_outside_algebra(self):
        A = sl2()
        other = build_classical_lie("gl3").algebra
        with pytest.raises(UnknownBasisElement):
            bracket_eval(A, other.basis_vector("E3_3"), A.basis_vector("H"))


class TestWeightedProduct:

    def test_two_odd_elements_give_commutator(self):
        a = SparseMatrix(2, 2, {(0, 1): 1})
        b = SparseMatrix(2, 2, {(1, 0): 1, (0, 0): 3})
        mats = [a, b]
        total = weighted_product([(1,), (1,)], super_factor(),
                                 lambda order: mats[order[0]] @ mats[order[1]],
                                 SparseMatrix.zero(2, 2))
        assert total == a @ b - b @ a

    def test_trivial_factor_symmetrizes(self):
        a = SparseMatrix.unit(3, 1, 0, 1)
        b = SparseMatrix.unit(3, 1, 1, 2)
        c = SparseMatrix.unit(3, 1, 2, 0)
        mats = [a, b, c]
        total = weighted_product([(), (), ()], CommutationFactor.trivial(TRIVIAL, 1),
                                 lambda o: mats[o[0]] @ mats[o[1]] @ mats[o[2]],
                                 SparseMatrix.zero(3, 1))
        assert total == SparseMatrix.identity(3, 1)


class TestSymmetries:

    def test_classical_algebras_pass(self):
        assert check_symmetries(sl2()).passed
        assert check_symmetries(build_mat_order3(2, 1, 1).algebra).passed

    def test_inconsistent_pair(self):
        basis = [BasisElement("x", 0, ()), BasisElement("y", 0, ())]
        A = GradedAlgebra("color_lie", 1, TRIVIAL, CommutationFactor.trivial(TRIVIAL), basis,
                          {("x", "y"): {"y": 1}, ("y", "x"): {"y": 1}})
        report = check_symmetries(A)
        assert not report.passed
        assert report.failures("antisymmetry")[0].witness == ["x", "y"]

    def test_degree_violation_recorded_when_not_strict(self):
        basis = [BasisElement("a", 0, (0,)), BasisElement("b", 0, (1,))]
        A = GradedAlgebra("color_lie", 1, Z2, CommutationFactor.trivial(Z2), basis,
                          {("a", "b"): {"a": 1}}, strict=False)
        report = check_symmetries(A)
        assert [c.identity for c in report.counterexamples] == ["degree"]
        assert report.counterexamples[0].witness == ["a", "b"]


class TestJacobi:

    def test_sl2(self):
        report = check_jacobi(sl2())
        assert report.passed
        assert report.parts == {"color_jacobi": 27}
        assert report.total == 27

    def test_broken_sl2(self):
        report = check_jacobi(broken_sl2())
        assert not report.passed
        assert report.failures("color_jacobi")

    def test_color_gl_over_q_factor(self):
        A = build_color_gl((1, 1, 1), q_factor(), [(0, 0), (1, 0), (0, 1)]).algebra
        assert check_jacobi(A).passed

    def test_super_gl(self):
        assert check_jacobi(build_color_gl((2, 1), super_factor()).algebra).passed

    def test_order_three_identities(self):
        report = check_jacobi(build_mat_order3(1, 1, 1).algebra)
        assert report.passed
        assert set(report.parts) == {"jacobi_g0", "jacobi_module", "derivation", "cyclic"}

    def test_negated_f_ary_constant_breaks_derivation(self):
        A = build_mat_order3(2, 1, 1).algebra
        key = tuple(sorted(A.index_of(x) for x in ("Y[1,3]", "Y[3,4]", "Y[4,2]")))
        f_ary = A.stored_f_ary
        assert f_ary[key] == A.element({"X[1,2]": 1})
        f_ary[key] = -f_ary[key]
        broken = A.replace(f_ary=f_ary)
        assert check_symmetries(broken).passed
        report = check_jacobi(broken)
        assert not report.passed
        assert report.failures("derivation")

    def test_symmetry_failure_blocks_jacobi(self):
        basis = [BasisElement("x", 0, ()), BasisElement("y", 0, ())]
        A = GradedAlgebra("color_lie", 1, TRIVIAL, CommutationFactor.trivial(TRIVIAL), basis,
                          {("x", "x"): {"x": 1}})
        with pytest.raises(SymmetryPrecondition):
            check_jacobi(A)

    def test_budget_sampling_is_deterministic(self):
        A = build_classical_lie("gl3").algebra
        first = check_jacobi(A, budget=50, seed=3)
        second = check_jacobi(A, budget=50, seed=3)
        assert first.sampled
        assert first.checks_run == 50
        assert first.total == 729
        assert first.to_dict() == second.to_dict()


class TestAssociative:

    def test_clifford_is_associative(self):
        assoc, rep = build_generalized_clifford(3, 2)
        assert check_associative(assoc).passed
        assert check_associative_representation(assoc, rep).passed

    def test_non_associative_input(self):
        basis = [BasisElement("a", 0, ()), BasisElement("b", 0, ())]
        A = AssociativeAlgebra(TRIVIAL, 1, basis, {(0, 0): {1: 1}, (1, 0): {0: 1}})
        assert not check_associative(A).passed
        with pytest.raises(NotAssociative):
            from_associative(AlgebraKind.COLOR_LIE, A)

    def test_commutator_matches_color_gl(self):
        for factor, sizes in ((CommutationFactor.trivial(TRIVIAL), (2,)), (super_factor(), (1, 1))):
            A = from_associative(AlgebraKind.COLOR_LIE, matrix_unit_algebra(sizes, factor))
            B = build_color_gl(sizes, factor).algebra
            assert compare_tables(A, B, check_kind=False).passed

    def test_symmetrized_product_matches_block_algebra(self):
        A = from_associative(AlgebraKind.LIE_ORDER_F, block_matrix_algebra((2, 1, 1)))
        assert tables_equal(A, build_mat_order3(2, 1, 1).algebra)

    def test_extract_elementary(self):
        A = extract_elementary(build_mat_order3(1, 2, 1).algebra, 1)
        assert tables_equal(A, build_mat_order3(1, 2, 1, elementary=True).algebra)

    def test_extract_elementary_errors(self):
        with pytest.raises(UnsupportedKind):
            extract_elementary(sl2(), 1)
        with pytest.raises(GradeMismatch):
            extract_elementary(build_mat_order3(1, 1, 1).algebra, 3)
        with pytest.raises(EmptyComponent):
            extract_elementary(build_mat_order3(1, 1, 1, elementary=True).algebra, 2)


class TestCompareTables:

    def test_value_mismatch(self):
        report = compare_tables(sl2(), broken_sl2())
        assert not report.passed
        assert report.failures("bilinear")

    def test_label_mismatch(self):
        report = compare_tables(sl2(), build_classical_lie("gl2").algebra)
        assert report.failures("structure")[0].witness == ["labels"]


class TestRepresentation:

    def test_sl2_defining(self):
        result = build_classical_lie("sl2")
        report = check_representation(result.algebra, result.representation)
        assert report.passed
        assert report.parts == {"grading": 3, "bilinear": 9}

    def test_swapped_matrices_fail(self):
        result = build_classical_lie("sl2")
        rep = result.representation
        swapped = MatrixRep(rep.dimension, rep.zf_grades, rep.degree_map, {
            "H": rep.matrices["H"], "E": rep.matrices["F"], "F": rep.matrices["E"],
        })
        assert not check_representation(result.algebra, swapped).passed

    def test_super_gl_defining(self):
        result = build_color_gl((2, 1), super_factor())
        assert check_representation(result.algebra, result.representation).passed

    def test_order_three_defining(self):
        result = build_mat_order3(2, 1, 1)
        report = check_representation(result.algebra, result.representation)
        assert report.passed
        assert report.parts["f_ary"] > 0

    def test_order_three_needs_carrier_grades(self):
        result = build_mat_order3(1, 1, 1)
        rep = result.representation
        ungraded = MatrixRep(rep.dimension, None, rep.degree_map, rep.matrices)
        with pytest.raises(MissingZfGrading):
            check_representation(result.algebra, ungraded)

    def test_grading_group_mismatch(self):
        result = build_classical_lie("sl2")
        rep = result.representation
        wrong = MatrixRep(2, (0, 0), GradingMap(Z2, ((0,), (1,))), rep.matrices)
        with pytest.raises(GradingMismatch):
            check_representation(result.algebra, wrong)

    def test_misgraded_matrix(self):
        result = build_color_gl((1, 1), super_factor())
        rep = result.representation
        matrices = dict(rep.matrices)
        matrices["E1_1"] = SparseMatrix(2, 2, {(0, 1): 1})
        report = check_representation(result.algebra, MatrixRep(2, (0, 0), rep.degree_map, matrices))
        assert report.failures("grading")[0].witness[0] == "E1_1"


class TestAdjointEmbedding:

    def test_sl2(self):
        A = sl2()
        assert check_representation(A, adjoint_embedding(A)).passed

    def test_color_gl(self):
        A = build_color_gl((1, 1, 1), q_factor(), [(0, 0), (1, 0), (0, 1)]).algebra
        assert check_representation(A, adjoint_embedding(A)).passed

    def test_super_gl(self):
        A = build_color_gl((1, 1), super_factor()).algebra
        assert check_representation(A, adjoint_embedding(A)).passed

    def test_order_three_rejected(self):
        with pytest.raises(UnsupportedKind):
            adjoint_embedding(build_mat_order3(1, 1, 1).algebra)
