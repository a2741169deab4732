"""
COLOR ALGEBRA ENGINE - COMMAND LINE
===================================
build / verify / realize / show

Machine output (spec files, JSON reports) goes to stdout or a file,
human summaries go to stderr. Exit codes: 0 all checks pass,
1 a counterexample was found, 2 bad input or parameters.
"""

import json
import logging
from enum import Enum
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import typer
from rich.console import Console
from rich.table import Table

from algebra import check_jacobi, check_representation, check_symmetries
from config_loader import EngineConfig, load_config_or_default, setup_logging
from constructions import CONSTRUCTIONS, BuildResult, build_construction
from errors import EngineError, SymmetryPrecondition, UnsupportedRep
from factor import CommutationFactor, n_plus, validate_factor, validate_multiplier
from grading import AbelianGroup
from oscillator import (
    MIN_LAMBDA_MULTIPLICITY,
    differential_realization,
    lambda_decoloration_check,
    quon_realization,
)
from schemas import CheckStatus, ReportDocument, set_counterexample_limit
from spec_format import algebra_to_spec, dump_spec, load_spec

logger = logging.getLogger(__name__)

app = typer.Typer(add_completion=False, help="Build and verify color Lie (super)algebras and their realizations.")
console = Console(stderr=True)


class Check(str, Enum):
    factor = "factor"
    symmetries = "symmetries"
    jacobi = "jacobi"
    representation = "representation"
    multiplier = "multiplier"


class RealizeMode(str, Enum):
    oscillator = "oscillator"
    quon = "quon"
    lambda_ = "lambda"


# ---------------------------------------------------------------------------
# Parameter parsing
# ---------------------------------------------------------------------------

def _ints(text: str, option: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise typer.BadParameter(f"expected comma-separated integers, got {text!r}", param_hint=option)


def _rows(text: str, option: str) -> Tuple[Tuple[int, ...], ...]:
    """'1,0;0,1' -> ((1, 0), (0, 1)); an empty row stands for the trivial group element"""
    return tuple(_ints(row, option) for row in text.split(";"))


def _factor(group: Optional[str], exponents: Optional[str],
            root_order: Optional[int]) -> CommutationFactor:
    G = AbelianGroup(_ints(group, "--group") if group else ())
    if exponents is None:
        return CommutationFactor.trivial(G, root_order)
    rows = _rows(exponents, "--exponents")
    L = root_order or max(2, G.exponent)
    return CommutationFactor(G, L, rows)


def _fail(error: EngineError) -> None:
    console.print(f"[red]error[/red] [{error.code}] {error.message}")
    logger.debug("engine error detail: %s", error.detail)
    raise typer.Exit(code=error.exit_code)


def _config(ctx: typer.Context) -> EngineConfig:
    return ctx.obj if isinstance(ctx.obj, EngineConfig) else load_config_or_default()


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        typer.echo(text, nl=False)
    else:
        output.write_text(text, encoding="utf-8")
        console.print(f"wrote {output}")


def _print_document(doc: ReportDocument) -> None:
    table = Table(title=doc.source, show_lines=False)
    table.add_column("check")
    table.add_column("status")
    table.add_column("checks", justify="right")
    table.add_column("note")
    colors = {CheckStatus.PASS: "green", CheckStatus.FAIL: "red", CheckStatus.SKIPPED: "yellow"}
    for s in doc.sections:
        note = s.skipped_reason or (f"sampled, seed {s.seed}" if s.sampled else "")
        table.add_row(s.name, f"[{colors[s.status]}]{s.status.value}[/]", str(s.checks_run), note)
    console.print(table)
    for s in doc.sections:
        for c in s.counterexamples:
            console.print(f"[red]{s.name}[/red] {c.identity} fails at ({', '.join(c.witness)})")
            console.print(f"  lhs: {c.lhs}")
            console.print(f"  rhs: {c.rhs}")


def _finish(doc: ReportDocument, cfg: EngineConfig, report: Optional[Path]) -> None:
    _print_document(doc)
    _emit(doc.to_json(indent=cfg.report_indent), report)
    raise typer.Exit(code=doc.exit_code)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

@app.callback()
def main(
    ctx: typer.Context,
    config: Optional[Path] = typer.Option(None, "--config", help="Engine config JSON (default: COLORLIE_CONFIG or config/engine.json)"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log sweep details to stderr."),
):
    try:
        cfg = load_config_or_default(str(config) if config else None)
    except EngineError as e:
        _fail(e)
    setup_logging("DEBUG" if verbose else cfg.log_level)
    set_counterexample_limit(cfg.max_counterexamples)
    ctx.obj = cfg


@app.command()
def build(
    construction: str = typer.Argument(..., help=f"One of: {', '.join(CONSTRUCTIONS)}"),
    sizes: Optional[str] = typer.Option(None, "--sizes", help="Block sizes, e.g. 1,1,1"),
    group: Optional[str] = typer.Option(None, "--group", help="Cyclic orders of the grading group, e.g. 2,2"),
    exponents: Optional[str] = typer.Option(None, "--exponents", help="Factor exponent matrix rows, e.g. '1,0;0,1'"),
    root_order: Optional[int] = typer.Option(None, "--root-order", help="L with N(a,b) = z_L^(a^T E b)"),
    block_degrees: Optional[str] = typer.Option(None, "--block-degrees", help="Group degree per block, e.g. '0;1'"),
    triple_sizes: Optional[str] = typer.Option(None, "--triple-sizes", help="triple_gl block sizes, e.g. '1,1;1;1'"),
    n: int = typer.Option(3, "--n", help="Clifford root order n"),
    p: int = typer.Option(2, "--p", help="Number of Clifford generators"),
    base: Optional[str] = typer.Option(None, "--base", help="gl<m>, sl2, nonabelian2, abelian<d>, mat:a,b,c, mat_el:a,b,c, iso3:D"),
    elementary: bool = typer.Option(False, "--elementary", help="Elementary (Y-only trilinear) mat3"),
    dim: int = typer.Option(4, "--dim", help="Space-time dimension D for iso3"),
    variant: str = typer.Option("clifford_tensor_gl", "--variant", help="color3_family variant"),
    source: str = typer.Option("clifford", "--source", help="from_associative source"),
    kind: str = typer.Option("color_lie", "--kind", help="from_associative algebra kind"),
    m: int = typer.Option(1, "--m", help="gl(m) size for the clifford_gl source"),
    input_path: Optional[Path] = typer.Option(None, "--input", help="Spec file to decolor"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the spec file here instead of stdout"),
    no_rep: bool = typer.Option(False, "--no-rep", help="Leave the representation out of the spec file"),
):
    """Build a named construction and write its algebra spec file"""
    params = {"n": n, "p": p, "elementary": elementary, "dim": dim, "variant": variant,
              "source": source, "kind": kind, "m": m}
    if sizes is not None:
        params["sizes"] = _ints(sizes, "--sizes")
    if base is not None:
        params["base"] = base
    try:
        factor = _factor(group, exponents, root_order)
        params["factor"] = factor
        if block_degrees is not None:
            params["block_degrees"] = _rows(block_degrees, "--block-degrees")
        if construction == "color_gl" and "sizes" not in params:
            raise typer.BadParameter("color_gl needs --sizes", param_hint="--sizes")
        if construction == "color3_family":
            if variant == "triple_gl":
                if triple_sizes is None:
                    raise typer.BadParameter("triple_gl needs --triple-sizes", param_hint="--triple-sizes")
                params["block_sizes"] = _rows(triple_sizes, "--triple-sizes")
                params["factors"] = (factor, factor, factor)
            elif "sizes" not in params:
                raise typer.BadParameter("clifford_tensor_gl needs --sizes", param_hint="--sizes")
        if construction == "decolor":
            if input_path is None:
                raise typer.BadParameter("decolor needs --input", param_hint="--input")
            params["algebra"] = load_spec(input_path).algebra
        result: BuildResult = build_construction(construction, params)
    except EngineError as e:
        _fail(e)
    except ValueError as e:
        raise typer.BadParameter(str(e))

    rep = None if no_rep else result.representation
    text = dump_spec(algebra_to_spec(result.algebra, rep, result.multiplier, result.colored_factor))
    console.print(f"built {result.algebra.name}: dimension {result.algebra.dimension}, "
                  f"kind {result.algebra.kind.value}")
    _emit(text, output)


@app.command()
def verify(
    ctx: typer.Context,
    spec: Path = typer.Argument(..., help="Algebra spec file"),
    checks: Optional[str] = typer.Option(None, "--checks", help="Comma-separated subset of factor,symmetries,jacobi,representation,multiplier"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Max tuples per identity sweep before sampling"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Sampling seed"),
    report: Optional[Path] = typer.Option(None, "--report", help="Write the JSON report here instead of stdout"),
):
    """Run the validators on a spec file"""
    cfg = _config(ctx)
    budget = budget or cfg.budget
    seed = cfg.seed if seed is None else seed
    try:
        selected = _select_checks(checks)
        result = load_spec(spec)
        doc = run_checks(result, selected, budget, seed, spec.name)
    except EngineError as e:
        _fail(e)
    _finish(doc, cfg, report)


def _select_checks(checks: Optional[str]) -> Optional[List[Check]]:
    if checks is None:
        return None
    try:
        return [Check(c.strip()) for c in checks.split(",") if c.strip()]
    except ValueError:
        raise typer.BadParameter(
            f"unknown check in {checks!r}; choose from {', '.join(c.value for c in Check)}",
            param_hint="--checks",
        )


def run_checks(result: BuildResult, selected: Optional[Sequence[Check]], budget: int,
               seed: int, source: str) -> ReportDocument:
    """Validators in a fixed order; the default set is every check the spec file supports"""
    A = result.algebra
    if selected is None:
        selected = [Check.factor, Check.symmetries, Check.jacobi]
        if result.representation is not None:
            selected.append(Check.representation)
        if result.multiplier is not None:
            selected.append(Check.multiplier)
    doc = ReportDocument(source=source)
    for check in Check:
        if check not in selected:
            continue
        if check == Check.factor:
            doc.add(validate_factor(A.factor, budget, seed))
        elif check == Check.symmetries:
            doc.add(check_symmetries(A))
        elif check == Check.jacobi:
            try:
                doc.add(check_jacobi(A, budget, seed), split=True)
            except SymmetryPrecondition as e:
                doc.skip("jacobi", e.message)
        elif check == Check.representation:
            if result.representation is None:
                doc.skip("representation", "spec has no representation")
            else:
                doc.add(check_representation(A, result.representation, budget, seed))
        elif check == Check.multiplier:
            if result.multiplier is None:
                doc.skip("multiplier", "spec has no multiplier")
            else:
                plus = n_plus(result.colored_factor) if result.colored_factor is not None else None
                doc.add(validate_multiplier(result.multiplier, plus, budget, seed))
    return doc


def run_realization(result: BuildResult, mode: RealizeMode, epsilon: int, multiplicity: int,
                    budget: int, seed: int, source: str) -> ReportDocument:
    A = result.algebra
    doc = ReportDocument(source=source)
    if mode == RealizeMode.lambda_:
        doc.add(lambda_decoloration_check(A, multiplicity, budget, seed), split=True)
        return doc
    if result.representation is None:
        raise UnsupportedRep(f"{mode.value} realization needs a representation in {source}",
                             algebra=A.name)
    if mode == RealizeMode.oscillator:
        _, r = differential_realization(A, result.representation, epsilon)
    else:
        _, r = quon_realization(A, result.representation, budget, seed)
    doc.add(r, split=True)
    return doc


@app.command()
def realize(
    ctx: typer.Context,
    spec: Path = typer.Argument(..., help="Algebra spec file"),
    mode: RealizeMode = typer.Option(RealizeMode.oscillator, "--mode", help="oscillator, quon or lambda"),
    epsilon: int = typer.Option(1, "--epsilon", help="+1 fermionic-type or -1 bosonic-type color oscillators"),
    multiplicity: Optional[int] = typer.Option(None, "--multiplicity", help="Lambda generators per degree"),
    budget: Optional[int] = typer.Option(None, "--budget"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    report: Optional[Path] = typer.Option(None, "--report", help="Write the JSON report here instead of stdout"),
):
    """Check an oscillator, quon or Lambda realization of a spec file"""
    cfg = _config(ctx)
    if epsilon not in (1, -1):
        raise typer.BadParameter("epsilon must be +1 or -1", param_hint="--epsilon")
    if multiplicity is not None and multiplicity < MIN_LAMBDA_MULTIPLICITY:
        raise typer.BadParameter(f"multiplicity must be >= {MIN_LAMBDA_MULTIPLICITY}",
                                 param_hint="--multiplicity")
    budget = budget or cfg.budget
    seed = cfg.seed if seed is None else seed
    try:
        doc = run_realization(load_spec(spec), mode, epsilon,
                              multiplicity or cfg.lambda_multiplicity, budget, seed, spec.name)
    except EngineError as e:
        _fail(e)
    _finish(doc, cfg, report)


@app.command()
def show(spec: Path = typer.Argument(..., help="Algebra spec file")):
    """Summarize a spec file: JSON on stdout, basis table on stderr"""
    try:
        result = load_spec(spec)
    except EngineError as e:
        _fail(e)
    A = result.algebra
    summary = A.summary()
    summary["representation"] = result.representation.dimension if result.representation else None
    summary["multiplier"] = result.multiplier is not None

    table = Table(title=f"{A.name or spec.name} ({A.kind.value}, F={A.F})")
    table.add_column("label")
    table.add_column("Z_F")
    table.add_column("degree")
    for b in A.basis:
        table.add_row(b.label, str(b.zf_grade), ",".join(str(x) for x in b.degree) or "-")
    console.print(table)
    typer.echo(json.dumps(summary, ensure_ascii=False, indent=2, sort_keys=True))


if __name__ == "__main__":
    app()
