"""Command-line interface.

Machine-readable JSON goes to standard output by default; ``--pretty``
switches to a human rendering.  Exit codes: 0 on success (and "controllable"
verdicts), 1 for infeasible or not-controllable outcomes, 2 for usage,
parse, or validation errors.
"""

from __future__ import annotations

import json
import sys

import click

from . import __version__
from .design import design as run_design
from .design import design_switched, design_weighted
from .dot import VIEWS, render_dot
from .errors import CtrltopoError, FormatError, Infeasible, TooLarge
from .formats import (
    dumps_instance,
    loads_instance,
    parse_edges,
    parse_graph,
    render_edges,
)
from .generators import gen_random, gen_reduction
from .model import assemble_composite, check_structural_controllability
from .oracle import (
    DEFAULT_CANDIDATE_CAP,
    exact_min_for_accessibility,
    exact_min_for_matching,
    exact_min_interconnections,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def _die(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_USAGE)


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        _die(f"cannot read {path}: {exc}")


def _load_instance(path: str):
    try:
        return loads_instance(_read_text(path))
    except FormatError as exc:
        _die(f"{path}: {exc}")


def _load_edges(path: str):
    text = _read_text(path)
    try:
        return parse_edges(json.loads(text))
    except json.JSONDecodeError as exc:
        _die(f"{path}: invalid JSON: {exc}")
    except FormatError as exc:
        _die(f"{path}: {exc}")


def _emit(doc: dict, pretty: bool, render) -> None:
    if pretty:
        for line in render(doc):
            click.echo(line)
    else:
        click.echo(json.dumps(doc, indent=2))


@click.group()
@click.version_option(version=__version__, prog_name="ctrltopo")
def main() -> None:
    """Interconnection topology design for structural controllability."""


# -------------------------------------------------------------------- check

def _render_check(doc):
    yield f"verdict:             {doc['verdict']}"
    yield f"accessible:          {doc['accessible']}"
    yield f"dilation-free:       {doc['dilation_free']}"
    yield f"matching size:       {doc['matching_size']} / {doc['state_count']}"
    if doc["inaccessible_states"]:
        pairs = ", ".join(f"x{i}.{q}" for i, q in doc["inaccessible_states"])
        yield f"inaccessible states: {pairs}"


@main.command()
@click.argument("instance_file", type=click.Path())
@click.argument("edges_file", type=click.Path(), required=False)
@click.option("--pretty", is_flag=True, help="Human-readable output.")
@click.option("--json", "as_json", is_flag=True, help="JSON output (default).")
def check(instance_file, edges_file, pretty, as_json) -> None:
    """Check structural controllability of an instance, plus optional edges."""
    inst = _load_instance(instance_file)
    edges = _load_edges(edges_file) if edges_file else ()
    try:
        a, b = assemble_composite(inst, edges)
    except CtrltopoError as exc:
        _die(str(exc))
    dims = [s.state_dim for s in inst.subsystems]
    report = check_structural_controllability(a, b, state_dims=dims)
    doc = {
        "verdict": "controllable" if report.controllable else "not-controllable",
        "accessible": report.accessible,
        "dilation_free": report.dilation_free,
        "matching_size": report.matching_size,
        "state_count": inst.total_states,
        "inaccessible_states": [list(s) for s in report.inaccessible_states],
        "edge_count": len(edges),
    }
    _emit(doc, pretty, _render_check)
    sys.exit(EXIT_OK if report.controllable else EXIT_NEGATIVE)


# ------------------------------------------------------------------- design

def _design_doc(res) -> dict:
    return {
        "stage1": {"edges": render_edges(res.stage1_edges), "cost": res.stage1_cost},
        "stage2": {"edges": render_edges(res.stage2_edges), "cost": res.stage2_cost},
        "edges": render_edges(res.union_edges),
        "union_cost": res.union_cost,
        "lower_bound": res.lower_bound,
        "ratio_bound": res.ratio_bound,
        "weighted": res.weighted,
    }


def _fmt_edge(entry) -> str:
    (i, q), (j, p) = entry["src"], entry["dst"]
    text = f"x{i}.{q} -> x{j}.{p}"
    if "mode" in entry:
        text += f" [mode {entry['mode']}]"
    return text


def _render_design(doc):
    if not doc["edges"]:
        yield "0 interconnections needed"
        return
    yield f"stage 1 (matching):      cost {doc['stage1']['cost']}"
    for entry in doc["stage1"]["edges"]:
        yield f"  {_fmt_edge(entry)}"
    yield f"stage 2 (accessibility): cost {doc['stage2']['cost']}"
    for entry in doc["stage2"]["edges"]:
        yield f"  {_fmt_edge(entry)}"
    yield f"union:                   cost {doc['union_cost']} ({len(doc['edges'])} edges)"
    for entry in doc["edges"]:
        yield f"  {_fmt_edge(entry)}"
    yield f"lower bound:             {doc['lower_bound']}"
    yield f"ratio bound:             {doc['ratio_bound']:.4f}"


@main.command("design")
@click.argument("instance_file", type=click.Path())
@click.option("--weighted", is_flag=True, help="Minimize summed edge costs.")
@click.option("--switched", is_flag=True,
              help="Treat the instance's modes as a switched topology.")
@click.option("--emit-dot", "dot_prefix", type=click.Path(), default=None,
              help="Write PREFIX.bipartite.dot and PREFIX.condensation.dot "
                   "with the chosen edges highlighted.")
@click.option("--pretty", is_flag=True, help="Human-readable output.")
@click.option("--json", "as_json", is_flag=True, help="JSON output (default).")
def design_cmd(instance_file, weighted, switched, dot_prefix, pretty, as_json) -> None:
    """Design an interconnection set with the two-stage guarantee."""
    inst = _load_instance(instance_file)
    try:
        if switched:
            res = design_switched(inst, weighted=weighted)
        elif weighted:
            res = design_weighted(inst)
        else:
            res = run_design(inst)
    except Infeasible as exc:
        doc = {
            "error": "infeasible",
            "message": str(exc),
            "inaccessible_states": [list(s) for s in exc.inaccessible_states],
            "matching_deficiency": exc.matching_deficiency,
        }
        click.echo(json.dumps(doc, indent=2))
        sys.exit(EXIT_NEGATIVE)
    except CtrltopoError as exc:
        _die(str(exc))
    doc = _design_doc(res)
    if dot_prefix:
        base = inst
        chosen = res.union_edges
        if switched:
            from .model import union_instance
            base = union_instance(inst).instance
            chosen = tuple(e.with_mode(None) for e in res.union_edges)
        for view, suffix in (("bipartite", "bipartite"), ("condensation", "condensation")):
            path = f"{dot_prefix}.{suffix}.dot"
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(render_dot(base, view, chosen))
        doc["dot_files"] = [f"{dot_prefix}.bipartite.dot",
                           f"{dot_prefix}.condensation.dot"]
    _emit(doc, pretty, _render_design)
    sys.exit(EXIT_OK)


# ------------------------------------------------------------------- oracle

def _render_oracle(doc):
    if doc.get("decision") is not None:
        yield f"decision (budget {doc['budget']}): {'yes' if doc['decision'] else 'no'}"
    if doc.get("minimum") is not None:
        yield f"minimum:  {doc['minimum']}"
    if doc.get("edges"):
        for entry in doc["edges"]:
            yield f"  {_fmt_edge(entry)}"
    yield f"explored: {doc['explored']} subsets"
    if "designer" in doc:
        d = doc["designer"]
        yield (f"designer: union cost {d['union_cost']} "
               f"(ratio vs minimum: {d['ratio_vs_minimum']:.4f})")


@main.command("oracle")
@click.argument("instance_file", type=click.Path())
@click.option("--budget", type=float, default=None,
              help="Answer the decision question: subset of cost <= budget?")
@click.option("--condition", type=click.Choice(["full", "matching", "accessibility"]),
              default="full", show_default=True,
              help="Which requirement the subset must satisfy.")
@click.option("--max-candidates", type=int, default=DEFAULT_CANDIDATE_CAP,
              show_default=True, help="Refuse larger candidate sets.")
@click.option("--compare", is_flag=True,
              help="Also run the designer and report its cost ratio.")
@click.option("--pretty", is_flag=True, help="Human-readable output.")
@click.option("--json", "as_json", is_flag=True, help="JSON output (default).")
def oracle_cmd(instance_file, budget, condition, max_candidates, compare,
               pretty, as_json) -> None:
    """Exhaustively compute the minimum interconnection cost."""
    inst = _load_instance(instance_file)
    solver = {"full": exact_min_interconnections,
              "matching": exact_min_for_matching,
              "accessibility": exact_min_for_accessibility}[condition]
    try:
        res = solver(inst, budget=budget, max_candidates=max_candidates)
    except (Infeasible, TooLarge) as exc:
        doc = {"error": type(exc).__name__.lower(), "message": str(exc)}
        click.echo(json.dumps(doc, indent=2))
        sys.exit(EXIT_NEGATIVE)
    doc = {
        "condition": condition,
        "minimum": res.optimum_cost,
        "edges": render_edges(res.optimum_edges) if res.optimum_edges else [],
        "explored": res.explored,
        "budget": res.budget,
        "decision": res.decision,
    }
    exit_code = EXIT_OK
    if compare and condition == "full" and res.optimum_cost is not None:
        try:
            d = run_design(inst) if inst.weights is None else design_weighted(inst)
            ratio = (d.union_cost / res.optimum_cost if res.optimum_cost else 1.0)
            doc["designer"] = {"union_cost": d.union_cost,
                               "ratio_vs_minimum": ratio}
        except Infeasible:
            doc["designer"] = {"error": "infeasible"}
    if res.decision is False:
        exit_code = EXIT_NEGATIVE
    _emit(doc, pretty, _render_oracle)
    sys.exit(exit_code)


# --------------------------------------------------------------- generators

@main.command("gen-reduction")
@click.argument("graph_file", type=click.Path())
@click.option("--leader", type=int, default=0, show_default=True,
              help="Vertex whose subsystem receives the single input.")
def gen_reduction_cmd(graph_file, leader) -> None:
    """Build the relay-family instance of an undirected graph."""
    text = _read_text(graph_file)
    try:
        vertices, edges = parse_graph(json.loads(text))
        inst = gen_reduction(vertices, edges, leader)
    except json.JSONDecodeError as exc:
        _die(f"{graph_file}: invalid JSON: {exc}")
    except (FormatError, ValueError) as exc:
        _die(f"{graph_file}: {exc}")
    click.echo(dumps_instance(inst), nl=False)


@main.command("gen-random")
@click.option("--subsystems", "k", type=int, required=True,
              help="Number of subsystems.")
@click.option("--state-range", nargs=2, type=int, default=(1, 3),
              show_default=True, help="Min/max states per subsystem.")
@click.option("--input-range", nargs=2, type=int, default=(0, 1),
              show_default=True, help="Min/max inputs per subsystem.")
@click.option("--density", type=float, default=0.5, show_default=True,
              help="Probability that an ordered subsystem pair is linked.")
@click.option("--internal-density", type=float, default=0.5, show_default=True,
              help="Probability of each internal pattern entry.")
@click.option("--weighted", is_flag=True, help="Attach random edge costs.")
@click.option("--modes", type=int, default=0, show_default=True,
              help="Split the neighbor map across this many modes.")
@click.option("--seed", type=int, default=0, show_default=True)
def gen_random_cmd(k, state_range, input_range, density, internal_density,
                   weighted, modes, seed) -> None:
    """Emit a seeded random instance document."""
    try:
        inst = gen_random(k, tuple(state_range), tuple(input_range), density,
                          internal_density, weighted, modes, seed)
    except ValueError as exc:
        _die(str(exc))
    click.echo(dumps_instance(inst), nl=False)


# --------------------------------------------------------------- DOT export

@main.command("export-dot")
@click.argument("instance_file", type=click.Path())
@click.argument("edges_file", type=click.Path(), required=False)
@click.option("--view", type=click.Choice(sorted(VIEWS)), default="digraph",
              show_default=True)
def export_dot_cmd(instance_file, edges_file, view) -> None:
    """Render an instance (plus optional edge overlay) as DOT text."""
    inst = _load_instance(instance_file)
    edges = _load_edges(edges_file) if edges_file else ()
    try:
        click.echo(render_dot(inst, view, edges), nl=False)
    except CtrltopoError as exc:
        _die(str(exc))


if __name__ == "__main__":
    main()
