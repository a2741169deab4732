"""
COLOR ALGEBRA ENGINE - GRADING GROUP TESTS
==========================================
Run with: pytest tests/test_grading.py -v
"""

import sys
from itertools import product
from pathlib import Path

import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from errors import ElementOutOfGroup, EmptyBlocks
from grading import (
    AbelianGroup,
    GradingMap,
    block_grading,
    block_index,
    embed,
    group_arithmetic,
    product_group,
)


class TestAbelianGroup:
    """Componentwise modular arithmetic"""

    def setup_method(self):
        self.z3z3 = AbelianGroup((3, 3))

    def test_examples(self):
        assert group_arithmetic("add", self.z3z3, (1, 2), (2, 2)) == (0, 1)
        assert group_arithmetic("neg", AbelianGroup((3,)), (1,)) == (2,)
        assert group_arithmetic("enumerate", AbelianGroup((2, 2))) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert group_arithmetic("zero", self.z3z3) == (0, 0)

    def test_rank_mismatch(self):
        with pytest.raises(ElementOutOfGroup):
            group_arithmetic("add", self.z3z3, (1,), (2, 2))
        with pytest.raises(ElementOutOfGroup):
            self.z3z3.check((3, 0))

    def test_unknown_operation(self):
        with pytest.raises(ValueError):
            group_arithmetic("mul", self.z3z3, (1, 1), (1, 1))

    @pytest.mark.parametrize("orders", [(2,), (3,), (2, 2), (3, 3), (2, 4), (3, 3, 3), (9, 9)])
    def test_group_axioms_exhaustive(self, orders):
        G = AbelianGroup(orders)
        elements = G.elements
        assert len(elements) == G.size
        for a in elements:
            assert G.add(a, G.zero()) == a
            assert G.add(a, G.neg(a)) == G.zero()
        for a, b in product(elements, repeat=2):
            assert G.add(a, b) == G.add(b, a)
        if G.size <= 27:
            for a, b, c in product(elements, repeat=3):
                assert G.add(G.add(a, b), c) == G.add(a, G.add(b, c))

    def test_trivial_group(self):
        for G in (AbelianGroup(()), AbelianGroup((1, 1))):
            assert G.is_trivial()
            assert G.size == 1
        assert AbelianGroup(()).elements == ((),)

    def test_exponent_and_element(self):
        G = AbelianGroup((2, 3))
        assert G.exponent == 6
        assert G.element((5, -1)) == (1, 2)

    def test_bad_orders(self):
        with pytest.raises(ValueError):
            AbelianGroup((0, 2))


class TestProductGroup:
    """Products and embeddings of grading groups"""

    def test_embed(self):
        groups = [AbelianGroup((2,)), AbelianGroup(()), AbelianGroup((3, 3))]
        P = product_group(*groups)
        assert P.orders == (2, 3, 3)
        assert embed(groups, 0, (1,)) == (1, 0, 0)
        assert embed(groups, 1, ()) == (0, 0, 0)
        assert embed(groups, 2, (2, 1)) == (0, 2, 1)

    def test_embed_checks_membership(self):
        with pytest.raises(ElementOutOfGroup):
            embed([AbelianGroup((2,))], 0, (2,))


class TestBlockGrading:
    """Block layouts of grading maps"""

    def test_examples(self):
        Z3 = AbelianGroup((3,))
        assert block_grading(Z3, (1, 1, 1), [(0,), (1,), (2,)]).degrees == ((0,), (1,), (2,))
        G = AbelianGroup((2, 2))
        gr = block_grading(G, (2, 1), [(0, 1), (1, 1)])
        assert gr.degrees == ((0, 1), (0, 1), (1, 1))
        assert block_grading(Z3, (3,), [(0,)]).degrees == ((0,),) * 3

    def test_monotone_and_surjective(self):
        G = AbelianGroup((4,))
        sizes, degrees = (2, 3, 1), [(3,), (1,), (2,)]
        gr = block_grading(G, sizes, degrees)
        assert set(gr.degrees) == set(degrees)
        assert [gr[i] for i in range(len(gr))] == [(3,), (3,), (1,), (1,), (1,), (2,)]
        assert block_index(sizes) == [0, 0, 1, 1, 1, 2]

    def test_empty_block(self):
        with pytest.raises(EmptyBlocks):
            block_grading(AbelianGroup((2,)), (1, 0), [(0,), (1,)])
        with pytest.raises(EmptyBlocks):
            block_grading(AbelianGroup((2,)), (), [])

    def test_negated(self):
        G = AbelianGroup((3,))
        gr = GradingMap(G, ((0,), (1,), (2,)))
        assert gr.negated().degrees == ((0,), (2,), (1,))
