"""Parameter graphs: per-node factors over ordered function tuples and their
product with single-entry-flip adjacency.

A factor vertex is an ordered tuple of positive monotone functions, one per
output of the node; two vertices are adjacent when exactly one function
differs at exactly one input combination.  Flips that break the implication
order leave the vertex set, so no edge is created there.  The product graph
moves one factor along one factor edge per step.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .boolean_core import (
    ACTIVATING,
    MbfFunction,
    OrderedTuple,
    enumerate_mbf_positive,
    is_monotone_positive,
)
from .interaction import CLASS_TAGS, KCLASS
from .realizability import DEFAULT_GRID, Verdict, check_class

MAX_FACTOR_INPUTS = 4
MAX_FACTOR_OUTPUTS = 3


@dataclass(frozen=True)
class FactorGraph:
    """All ordered function tuples of one node shape, with flip adjacency."""

    num_inputs: int
    num_outputs: int
    signs: "tuple[str, ...]"
    vertices: "tuple[tuple[MbfFunction, ...], ...]"
    edges: "tuple[tuple[int, int], ...]"


@dataclass(frozen=True)
class ParameterGraph:
    """Product of one factor per network node."""

    node_names: "tuple[str, ...]"
    factors: "tuple[FactorGraph, ...]"
    vertices: "tuple[tuple[int, ...], ...]"
    edges: "tuple[tuple[int, int], ...]"


def _chains(functions, length):
    """Implication-ordered tuples with repetition, lexicographic by masks."""
    if length == 0:
        yield ()
        return
    for prefix in _chains(functions, length - 1):
        for f in functions:
            if not prefix or prefix[-1].truth & ~f.truth == 0:
                yield prefix + (f,)


def build_factor(
    num_inputs: int, num_outputs: int, signs: "tuple[str, ...] | None" = None
) -> FactorGraph:
    """Factor graph for a node with the given numbers of inputs and outputs.

    Vertices are stored sign-normalized (positive functions); the signs are
    carried for interpretation only and default to all-activating.
    """
    if num_inputs > MAX_FACTOR_INPUTS:
        raise ValueError(f"factor guarded at {MAX_FACTOR_INPUTS} inputs")
    if num_outputs > MAX_FACTOR_OUTPUTS:
        raise ValueError(f"factor guarded at {MAX_FACTOR_OUTPUTS} outputs")
    if num_outputs < 1:
        raise ValueError("a factor needs at least one output")
    if signs is None:
        signs = (ACTIVATING,) * num_inputs
    if len(signs) != num_inputs:
        raise ValueError("one sign per input required")
    functions = enumerate_mbf_positive(num_inputs)
    vertices = tuple(_chains(functions, num_outputs))
    index = {v: i for i, v in enumerate(vertices)}
    edges = set()
    for pos, vertex in enumerate(vertices):
        for slot, f in enumerate(vertex):
            for corner in range(1 << num_inputs):
                flipped = f.truth ^ (1 << corner)
                if not is_monotone_positive(flipped, num_inputs):
                    continue
                candidate = (
                    vertex[:slot]
                    + (MbfFunction(num_inputs, flipped),)
                    + vertex[slot + 1 :]
                )
                other = index.get(candidate)
                if other is not None and other > pos:
                    edges.add((pos, other))
    return FactorGraph(num_inputs, num_outputs, tuple(signs), vertices, tuple(sorted(edges)))


def factor_for_node(net, name: str) -> FactorGraph:
    incoming = net.sources(name)
    return build_factor(
        len(incoming), net.out_degree(name), tuple(e.sign for e in incoming)
    )


def build_parameter_graph(net) -> ParameterGraph:
    """One factor per node with at least one output; vertices are tuples of
    factor vertex indices and edges move exactly one factor one step."""
    names = [name for name in net.names if net.out_degree(name) > 0]
    factors = tuple(factor_for_node(net, name) for name in names)
    ranges = [range(len(f.vertices)) for f in factors]
    vertices = tuple(itertools.product(*ranges))
    index = {v: i for i, v in enumerate(vertices)}
    edges = []
    for pos, vertex in enumerate(vertices):
        for slot, factor in enumerate(factors):
            for a, b in factor.edges:
                if vertex[slot] == a:
                    neighbor = vertex[:slot] + (b,) + vertex[slot + 1 :]
                elif vertex[slot] == b:
                    neighbor = vertex[:slot] + (a,) + vertex[slot + 1 :]
                else:
                    continue
                other = index[neighbor]
                if other > pos:
                    edges.append((pos, other))
    return ParameterGraph(tuple(names), factors, vertices, tuple(sorted(set(edges))))


# ---------------------------------------------------------------- annotation

def annotate_factor(factor: FactorGraph, class_tag: str, grid=DEFAULT_GRID):
    """check_class verdict for every factor vertex, in vertex order."""
    out = []
    for vertex in factor.vertices:
        out.append(check_class(OrderedTuple(vertex), class_tag, grid))
    return tuple(out)


def annotate_realizability(pg: ParameterGraph, class_tag: str, grid=DEFAULT_GRID):
    """Per-product-vertex status: realizable iff every factor verdict is.

    Returns (per-factor verdict tuples, per-vertex status strings).
    """
    if class_tag != KCLASS and class_tag not in CLASS_TAGS:
        raise ValueError(f"unknown class tag {class_tag!r}")
    factor_verdicts = tuple(
        annotate_factor(factor, class_tag, grid) for factor in pg.factors
    )
    statuses = []
    for vertex in pg.vertices:
        verdicts = [factor_verdicts[slot][pos] for slot, pos in enumerate(vertex)]
        if all(v.is_realizable for v in verdicts):
            statuses.append("realizable")
        elif any(v.is_not_realizable for v in verdicts):
            statuses.append("not_realizable")
        else:
            statuses.append("unknown")
    return factor_verdicts, tuple(statuses)


# ---------------------------------------------------------------- exports

def _vertex_label(vertex) -> str:
    return "(" + ",".join(str(x) for x in vertex) + ")"


def factor_to_dot(factor: FactorGraph) -> str:
    lines = ["graph factor {"]
    for i, vertex in enumerate(factor.vertices):
        label = " ".join(f.to_hex() for f in vertex)
        lines.append(f'  v{i} [label="{label}"];')
    for a, b in factor.edges:
        lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def pg_to_dot(pg: ParameterGraph) -> str:
    lines = ["graph parameter_graph {"]
    for i, vertex in enumerate(pg.vertices):
        lines.append(f'  v{i} [label="{_vertex_label(vertex)}"];')
    for a, b in pg.edges:
        lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def pg_to_json(pg: ParameterGraph) -> str:
    adjacency: "dict[str, list]" = {str(i): [] for i in range(len(pg.vertices))}
    for a, b in pg.edges:
        adjacency[str(a)].append(b)
        adjacency[str(b)].append(a)
    data = {
        "nodes": list(pg.node_names),
        "vertices": [list(v) for v in pg.vertices],
        "adjacency": {k: sorted(v) for k, v in adjacency.items()},
    }
    return json.dumps(data, indent=2) + "\n"


def vertex_table_csv(pg: ParameterGraph, annotations: "dict[str, tuple] | None" = None) -> str:
    """CSV with one row per product vertex: factor coordinates, the per-node
    function tuples in hex, and one status column per annotated class."""
    classes = sorted(annotations) if annotations else []
    header = ["vertex_index", "coordinates"]
    header += [f"{name}_functions" for name in pg.node_names]
    header += [f"verdict_{c}" for c in classes]
    lines = [",".join(header)]
    for i, vertex in enumerate(pg.vertices):
        row = [str(i), '"' + _vertex_label(vertex) + '"']
        for slot, pos in enumerate(vertex):
            funcs = pg.factors[slot].vertices[pos]
            row.append(" ".join(f.to_hex() for f in funcs))
        for c in classes:
            row.append(annotations[c][i])
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
