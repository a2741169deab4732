"""
COLOR ALGEBRA ENGINE - ALGEBRA SPEC FILES
=========================================
JSON documents describing one algebra, optionally with a representation
and the multiplier that decolored it. Scalars are lists of
{num, den, zeta_pow} terms over the algebra's root of unity.

dump_spec is canonical: sorted keys, two-space indent, trailing newline,
so build -> save -> load -> save is byte-stable.
"""

import json
import logging
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, PositiveInt, ValidationError

from algebra import AlgebraKind, BasisElement, GradedAlgebra, MatrixRep
from constructions import BuildResult
from errors import EngineError, SpecFormatError
from factor import CommutationFactor, Multiplier
from grading import AbelianGroup, GradingMap
from matrices import SparseMatrix
from scalar import CycloScalar

logger = logging.getLogger(__name__)

SPEC_VERSION = 1


class ScalarTerm(BaseModel):
    num: int
    den: int = Field(default=1, gt=0)
    zeta_pow: int = 0


class TermModel(BaseModel):
    label: str
    coeff: List[ScalarTerm]


class GroupModel(BaseModel):
    orders: List[PositiveInt] = Field(default_factory=list)


class FactorModel(BaseModel):
    root_order: int = Field(gt=0)
    exponents: List[List[int]] = Field(default_factory=list)


class MultiplierModel(FactorModel):
    colored_factor: Optional[FactorModel] = None


class BasisModel(BaseModel):
    label: str
    zf_grade: int = 0
    degree: List[int] = Field(default_factory=list)


class BilinearEntry(BaseModel):
    left: str
    right: str
    value: List[TermModel]


class FAryEntry(BaseModel):
    args: List[str]
    value: List[TermModel]


class MatrixEntry(BaseModel):
    row: int
    col: int
    value: List[ScalarTerm]


class MatrixModel(BaseModel):
    label: str
    entries: List[MatrixEntry] = Field(default_factory=list)


class RepresentationModel(BaseModel):
    name: str = ""
    dimension: int = Field(gt=0)
    root_order: int = Field(gt=0)
    degrees: List[List[int]]
    zf_grades: Optional[List[int]] = None
    matrices: List[MatrixModel] = Field(default_factory=list)


class AlgebraSpecFile(BaseModel):
    version: Literal[1] = SPEC_VERSION
    name: str = ""
    kind: AlgebraKind
    F: int = Field(default=1, ge=1)
    group: GroupModel
    factor: FactorModel
    basis: List[BasisModel]
    bilinear: List[BilinearEntry] = Field(default_factory=list)
    f_ary: List[FAryEntry] = Field(default_factory=list)
    representation: Optional[RepresentationModel] = None
    multiplier: Optional[MultiplierModel] = None


# ---------------------------------------------------------------------------
# Conversions
# ---------------------------------------------------------------------------

def _scalar_terms(c: CycloScalar) -> List[ScalarTerm]:
    return [ScalarTerm(**t) for t in c.to_terms()]


def _scalar(L: int, terms: List[ScalarTerm]) -> CycloScalar:
    return CycloScalar.from_terms(L, ((Fraction(t.num, t.den), t.zeta_pow) for t in terms))


def _value(A: GradedAlgebra, x) -> List[TermModel]:
    return [TermModel(label=A.basis[i].label, coeff=_scalar_terms(c)) for i, c in x.items()]


def algebra_to_spec(A: GradedAlgebra, rep: Optional[MatrixRep] = None,
                    multiplier: Optional[Multiplier] = None,
                    colored_factor: Optional[CommutationFactor] = None) -> AlgebraSpecFile:
    representation = None
    if rep is not None:
        L = lcm(A.root_order, *(m.root_order for m in rep.matrices.values()))
        representation = RepresentationModel(
            name=rep.name,
            dimension=rep.dimension,
            root_order=L,
            degrees=[list(d) for d in rep.degree_map.degrees],
            zf_grades=list(rep.zf_grades) if rep.zf_grades is not None else None,
            matrices=[
                MatrixModel(label=b.label, entries=[
                    MatrixEntry(row=i, col=j, value=_scalar_terms(v))
                    for (i, j), v in rep.matrices[b.label].lift(L)
                ])
                for b in A.basis if b.label in rep.matrices
            ],
        )
    sigma = None
    if multiplier is not None:
        sigma = MultiplierModel(
            **multiplier.to_dict(),
            colored_factor=FactorModel(**colored_factor.to_dict()) if colored_factor else None,
        )
    return AlgebraSpecFile(
        name=A.name,
        kind=A.kind,
        F=A.F,
        group=GroupModel(orders=list(A.group.orders)),
        factor=FactorModel(**A.factor.to_dict()),
        basis=[BasisModel(**b.to_dict()) for b in A.basis],
        bilinear=[
            BilinearEntry(left=A.basis[i].label, right=A.basis[j].label, value=_value(A, v))
            for (i, j), v in A.stored_bilinear.items()
        ],
        f_ary=[
            FAryEntry(args=[A.basis[i].label for i in t], value=_value(A, v))
            for t, v in A.stored_f_ary.items()
        ],
        representation=representation,
        multiplier=sigma,
    )


def spec_to_algebra(spec: AlgebraSpecFile) -> BuildResult:
    group = AbelianGroup(tuple(spec.group.orders))
    L = spec.factor.root_order
    factor = CommutationFactor(group, L, tuple(tuple(r) for r in spec.factor.exponents))
    basis = [BasisElement(b.label, b.zf_grade, group.check(tuple(b.degree))) for b in spec.basis]

    def value(terms: List[TermModel]) -> Dict[str, CycloScalar]:
        out: Dict[str, CycloScalar] = {}
        for t in terms:
            if t.label in out:
                raise SpecFormatError(f"label {t.label!r} repeated inside one constant")
            out[t.label] = _scalar(L, t.coeff)
        return out

    bilinear = {}
    for e in spec.bilinear:
        key = (e.left, e.right)
        if key in bilinear:
            raise SpecFormatError(f"bilinear constant on {list(key)} given twice")
        bilinear[key] = value(e.value)
    f_ary = {}
    for e in spec.f_ary:
        key = tuple(e.args)
        if key in f_ary:
            raise SpecFormatError(f"F-ary constant on {list(key)} given twice")
        f_ary[key] = value(e.value)

    algebra = GradedAlgebra(spec.kind, spec.F, group, factor, basis, bilinear, f_ary, name=spec.name)

    rep = None
    if spec.representation is not None:
        r = spec.representation
        if len(r.degrees) != r.dimension:
            raise SpecFormatError(
                f"representation of dimension {r.dimension} lists {len(r.degrees)} degrees"
            )
        matrices = {}
        for m in r.matrices:
            algebra.index_of(m.label)
            matrices[m.label] = SparseMatrix(r.dimension, r.root_order, {
                (e.row, e.col): _scalar(r.root_order, e.value) for e in m.entries
            })
        rep = MatrixRep(
            r.dimension,
            tuple(r.zf_grades) if r.zf_grades is not None else None,
            GradingMap(group, tuple(tuple(d) for d in r.degrees)),
            matrices,
            name=r.name,
        )

    multiplier = colored = None
    if spec.multiplier is not None:
        s = spec.multiplier
        multiplier = Multiplier(group, s.root_order, tuple(tuple(r) for r in s.exponents))
        if s.colored_factor is not None:
            colored = CommutationFactor(group, s.colored_factor.root_order,
                                        tuple(tuple(r) for r in s.colored_factor.exponents))
    return BuildResult(algebra, rep, multiplier, colored)


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------

def dump_spec(spec: AlgebraSpecFile) -> str:
    payload = spec.model_dump(mode="json", exclude_none=True)
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def parse_spec(text: str, source: str = "<input>") -> BuildResult:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecFormatError(f"{source}: not valid JSON ({e.msg} at line {e.lineno})") from e
    return parse_spec_dict(data, source)


def parse_spec_dict(data: Any, source: str = "<input>") -> BuildResult:
    try:
        spec = AlgebraSpecFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise SpecFormatError(f"{source}: {where}: {first['msg']}",
                              detail={"errors": e.error_count()}) from e
    try:
        return spec_to_algebra(spec)
    except SpecFormatError:
        raise
    except EngineError as e:
        raise SpecFormatError(f"{source}: {e.message}", detail={"code": e.code}) from e


def load_spec(path: Union[str, Path]) -> BuildResult:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SpecFormatError(f"cannot read spec file {path}: {e}") from e
    result = parse_spec(text, str(path))
    logger.info("loaded %s from %s", result.algebra, path)
    return result


def save_spec(result: BuildResult, path: Union[str, Path]) -> str:
    text = dump_spec(algebra_to_spec(result.algebra, result.representation,
                                     result.multiplier, result.colored_factor))
    Path(path).write_text(text, encoding="utf-8")
    logger.info("saved %s to %s", result.algebra, path)
    return text
