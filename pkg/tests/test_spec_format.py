"""
COLOR ALGEBRA ENGINE - SPEC FILE TESTS
======================================
Run with: pytest tests/test_spec_format.py -v
"""

import json
import sys
from pathlib import Path

import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from algebra import check_representation, tables_equal
from constructions import build_color_gl, build_mat_order3, decolor
from errors import SpecFormatError
from factor import CommutationFactor
from grading import AbelianGroup
from spec_format import algebra_to_spec, dump_spec, load_spec, parse_spec, parse_spec_dict, save_spec


def q_factor() -> CommutationFactor:
    return CommutationFactor(AbelianGroup((3, 3)), 3, ((0, 1), (-1, 0)))


def color_gl():
    return build_color_gl((1, 1, 1), q_factor(), [(0, 0), (1, 0), (0, 1)])


def dump(result) -> str:
    return dump_spec(algebra_to_spec(result.algebra, result.representation,
                                     result.multiplier, result.colored_factor))


def sl2_spec() -> dict:
    return {
        "version": 1,
        "name": "sl2",
        "kind": "color_lie",
        "F": 1,
        "group": {"orders": []},
        "factor": {"root_order": 2, "exponents": []},
        "basis": [{"label": "H"}, {"label": "E"}, {"label": "F"}],
        "bilinear": [
            {"left": "H", "right": "E", "value": [{"label": "E", "coeff": [{"num": 2}]}]},
            {"left": "H", "right": "F", "value": [{"label": "F", "coeff": [{"num": -2}]}]},
            {"left": "E", "right": "F", "value": [{"label": "H", "coeff": [{"num": 1}]}]},
        ],
    }


class TestRoundTrip:

    @pytest.mark.parametrize("build", [
        lambda: build_mat_order3(2, 1, 1),
        color_gl,
        lambda: decolor(color_gl().algebra),
    ])
    def test_byte_stable(self, build):
        text = dump(build())
        assert dump(parse_spec(text)) == text

    def test_tables_survive(self):
        result = color_gl()
        loaded = parse_spec(dump(result))
        assert tables_equal(loaded.algebra, result.algebra)
        assert check_representation(loaded.algebra, loaded.representation).passed

    def test_multiplier_survives(self):
        result = decolor(color_gl().algebra)
        loaded = parse_spec(dump(result))
        assert loaded.multiplier == result.multiplier
        assert loaded.colored_factor == result.colored_factor

    def test_canonical_layout(self):
        text = dump(build_mat_order3(1, 1, 1))
        assert text.endswith("}\n")
        data = json.loads(text)
        assert list(data) == sorted(data)
        assert data["kind"] == "lie_order_f"
        assert data["representation"]["zf_grades"] == [0, 1, 2]

    def test_files(self, tmp_path):
        path = tmp_path / "gl.json"
        text = save_spec(color_gl(), path)
        assert path.read_text(encoding="utf-8") == text
        assert dump(load_spec(path)) == text

    def test_hand_written_spec(self):
        result = parse_spec_dict(sl2_spec())
        A = result.algebra
        assert A.labels == ["H", "E", "F"]
        assert result.representation is None
        assert A.bracket_basis(A.index_of("F"), A.index_of("E")) == A.element({"H": -1})


class TestMalformedSpecs:

    def test_not_json(self):
        with pytest.raises(SpecFormatError):
            parse_spec("{kind: color_lie")

    def test_missing_kind(self):
        data = sl2_spec()
        del data["kind"]
        with pytest.raises(SpecFormatError) as info:
            parse_spec_dict(data, "broken.json")
        assert "broken.json" in info.value.message

    def test_unknown_version(self):
        data = sl2_spec()
        data["version"] = 2
        with pytest.raises(SpecFormatError):
            parse_spec_dict(data)

    def test_zero_group_order(self):
        data = sl2_spec()
        data["group"] = {"orders": [0]}
        with pytest.raises(SpecFormatError):
            parse_spec_dict(data)

    def test_unknown_label(self):
        data = sl2_spec()
        data["bilinear"][0]["right"] = "X"
        with pytest.raises(SpecFormatError) as info:
            parse_spec_dict(data)
        assert info.value.detail == {"code": "unknown_basis_element"}

    def test_duplicate_constant(self):
        data = sl2_spec()
        data["bilinear"].append(data["bilinear"][0])
        with pytest.raises(SpecFormatError):
            parse_spec_dict(data)

    def test_degree_violation(self):
        data = sl2_spec()
        data["group"] = {"orders": [2]}
        data["factor"] = {"root_order": 2, "exponents": [[0]]}
        data["basis"] = [{"label": "H", "degree": [0]}, {"label": "E", "degree": [1]},
                         {"label": "F", "degree": [0]}]
        with pytest.raises(SpecFormatError) as info:
            parse_spec_dict(data)
        assert info.value.detail == {"code": "degree_mismatch"}

    def test_representation_degree_count(self):
        data = json.loads(dump(build_mat_order3(1, 1, 1)))
        data["representation"]["degrees"].pop()
        with pytest.raises(SpecFormatError):
            parse_spec_dict(data)

    def test_missing_file(self, tmp_path):
        with pytest.raises(SpecFormatError):
            load_spec(tmp_path / "absent.json")
