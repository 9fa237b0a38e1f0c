"""Weighted regulatory networks and their discrete switching dynamics.

A network carries a decay rate per node and a positive threshold per edge;
the monotone constant family K assigns a production level to every
(active activators, active repressors) combination of each node.  All
dynamics are computed on the finite domain-state set D: a state holds, per
node, the 1-based index of the interval its concentration occupies among the
node's sorted outgoing thresholds.  The induced self-map of D determines the
asynchronous state transition graph, and its equivalence classes correspond
to collections of monotone Boolean functions, one per edge.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .boolean_core import (
    ACTIVATING,
    MbfFunction,
    OrderedTuple,
    REPRESSING,
    beta_normalize,
)


class NetworkError(ValueError):
    pass


class DegenerateKError(ValueError):
    """A K value sitting exactly on a scaled threshold; the dynamics are
    undefined there."""


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    sign: str
    threshold: Fraction


@dataclass(frozen=True)
class WeightedRegulatoryNetwork:
    """Signed digraph with decay rates on nodes and thresholds on edges."""

    nodes: "tuple[tuple[str, Fraction], ...]"  # (name, decay)
    edges: "tuple[Edge, ...]"

    def __post_init__(self) -> None:
        names = [name for name, _ in self.nodes]
        if len(set(names)) != len(names):
            raise NetworkError("duplicate node names")
        for name, decay in self.nodes:
            if decay <= 0:
                raise NetworkError(f"decay of {name} must be positive")
        seen_pairs = set()
        per_source: "dict[str, set]" = {}
        for e in self.edges:
            if e.source not in names or e.target not in names:
                raise NetworkError(f"edge {e.source}->{e.target} references unknown node")
            if e.sign not in (ACTIVATING, REPRESSING):
                raise NetworkError(f"bad sign {e.sign!r}")
            if e.threshold <= 0:
                raise NetworkError("thresholds must be positive")
            if (e.source, e.target) in seen_pairs:
                raise NetworkError(f"duplicate edge {e.source}->{e.target}")
            seen_pairs.add((e.source, e.target))
            if e.threshold in per_source.setdefault(e.source, set()):
                raise NetworkError(
                    f"outgoing thresholds of {e.source} must be pairwise distinct"
                )
            per_source[e.source].add(e.threshold)

    # -- structure helpers ------------------------------------------------

    @property
    def names(self) -> "tuple[str, ...]":
        return tuple(name for name, _ in self.nodes)

    def decay(self, name: str) -> Fraction:
        for n, d in self.nodes:
            if n == name:
                return d
        raise NetworkError(f"unknown node {name!r}")

    def sources(self, name: str) -> "tuple[Edge, ...]":
        """Incoming edges, ordered by the network's node order."""
        order = {n: i for i, n in enumerate(self.names)}
        incoming = [e for e in self.edges if e.target == name]
        incoming.sort(key=lambda e: order[e.source])
        return tuple(incoming)

    def targets(self, name: str) -> "tuple[Edge, ...]":
        return tuple(e for e in self.edges if e.source == name)

    def out_thresholds(self, name: str) -> "tuple[Fraction, ...]":
        return tuple(sorted(e.threshold for e in self.targets(name)))

    def out_degree(self, name: str) -> int:
        return len(self.targets(name))

    def state_space(self):
        """All 1-based domain states, in row-major node order."""
        ranges = [range(1, self.out_degree(name) + 2) for name in self.names]
        return itertools.product(*ranges)


def gamma_normalize(net: WeightedRegulatoryNetwork) -> WeightedRegulatoryNetwork:
    """Set every decay to 1, scaling each node's outgoing thresholds by its
    decay; the induced state dynamics are unchanged."""
    decays = dict(net.nodes)
    edges = tuple(
        Edge(e.source, e.target, e.sign, e.threshold * decays[e.source])
        for e in net.edges
    )
    nodes = tuple((name, Fraction(1)) for name, _ in net.nodes)
    return WeightedRegulatoryNetwork(nodes, edges)


# ---------------------------------------------------------------- K collections

@dataclass(frozen=True)
class KCollection:
    """Per node, the production level for each (A, B) activity combination.

    ``entries[node][(A, B)]`` with A the active activators and B the active
    repressors, both frozensets of source node names.
    """

    entries: "tuple[tuple[str, tuple], ...]"

    @classmethod
    def from_dict(cls, mapping) -> "KCollection":
        entries = []
        for node in sorted(mapping):
            cells = tuple(
                sorted(
                    (
                        ((frozenset(a), frozenset(b)), Fraction(v))
                        for (a, b), v in mapping[node].items()
                    ),
                    key=lambda kv: (sorted(kv[0][0]), sorted(kv[0][1])),
                )
            )
            entries.append((node, cells))
        return cls(tuple(entries))

    def as_dict(self) -> dict:
        return {node: dict(cells) for node, cells in self.entries}

    def value(self, node: str, a: frozenset, b: frozenset) -> Fraction:
        for name, cells in self.entries:
            if name == node:
                for key, v in cells:
                    if key == (a, b):
                        return v
                raise KeyError(f"missing K[{node}][{sorted(a)},{sorted(b)}]")
        raise KeyError(f"no K entries for node {node!r}")


def _subsets(items):
    items = tuple(items)
    for r in range(len(items) + 1):
        yield from (frozenset(c) for c in itertools.combinations(items, r))


def validate_k(net: WeightedRegulatoryNetwork, k: KCollection) -> "list[str]":
    """Coverage errors raise; returned list names the monotonicity violations
    (adjacent subset pairs suffice)."""
    table = k.as_dict()
    violations = []
    for name in net.names:
        plus = [e.source for e in net.sources(name) if e.sign == ACTIVATING]
        minus = [e.source for e in net.sources(name) if e.sign == REPRESSING]
        cells = table.get(name)
        if cells is None:
            raise KeyError(f"no K entries for node {name!r}")
        for a in _subsets(plus):
            for b in _subsets(minus):
                if (a, b) not in cells:
                    raise KeyError(f"missing K[{name}][{sorted(a)},{sorted(b)}]")
                if cells[(a, b)] < 0:
                    violations.append(f"{name}: K[{sorted(a)},{sorted(b)}] negative")
        for a in _subsets(plus):
            for b in _subsets(minus):
                for j in plus:
                    if j not in a:
                        a2 = a | {j}
                        if cells[(a, b)] > cells[(a2, b)]:
                            violations.append(
                                f"{name}: K[A={sorted(a)},B={sorted(b)}] > "
                                f"K[A={sorted(a2)},B={sorted(b)}] (activator grows)"
                            )
                for j in minus:
                    if j not in b:
                        b2 = b | {j}
                        if cells[(a, b)] < cells[(a, b2)]:
                            violations.append(
                                f"{name}: K[A={sorted(a)},B={sorted(b)}] < "
                                f"K[A={sorted(a)},B={sorted(b2)}] (repressor grows)"
                            )
    return violations


# ---------------------------------------------------------------- dynamics

def _interval_index(value: Fraction, thresholds) -> int:
    """1-based index of the interval containing the value among sorted
    thresholds; the value must not equal any of them."""
    index = 1
    for t in thresholds:
        if value == t:
            raise DegenerateKError(f"value {value} sits exactly on threshold {t}")
        if value > t:
            index += 1
    return index


def phi_k(net: WeightedRegulatoryNetwork, k: KCollection) -> dict:
    """The discrete self-map of the domain-state set.

    For each state, an input counts as active when its axis coordinate lies
    above that edge's threshold (activity is determined by threshold ranks
    alone); the target level K/decay then lands in one of the node's own
    threshold intervals, giving the image coordinate.
    """
    problems = validate_k(net, k)
    if problems:
        raise NetworkError("K violates monotonicity: " + "; ".join(problems))
    names = net.names
    position = {name: i for i, name in enumerate(names)}
    sorted_out = {name: net.out_thresholds(name) for name in names}
    # rank[source][threshold] = 1-based rank among the source's thresholds
    rank = {
        name: {t: r for r, t in enumerate(sorted_out[name], start=1)}
        for name in names
    }
    out = {}
    for state in net.state_space():
        image = []
        for name in names:
            a, b = set(), set()
            for e in net.sources(name):
                above = state[position[e.source]] > rank[e.source][e.threshold]
                if above:
                    (a if e.sign == ACTIVATING else b).add(e.source)
            target = k.value(name, frozenset(a), frozenset(b)) / net.decay(name)
            image.append(_interval_index(target, sorted_out[name]))
        out[state] = tuple(image)
    return out


@dataclass(frozen=True)
class StateTransitionGraph:
    states: "tuple[tuple[int, ...], ...]"
    edges: "tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]"


def build_stg(phi: dict) -> StateTransitionGraph:
    """Asynchronous unit-step graph: fixed states get a self-loop, every
    coordinate moving toward its image contributes one unit edge."""
    states = tuple(sorted(phi))
    edges = []
    for d in states:
        image = phi[d]
        if image == d:
            edges.append((d, d))
            continue
        for i, (cur, tgt) in enumerate(zip(d, image)):
            if tgt > cur:
                step = d[:i] + (cur + 1,) + d[i + 1 :]
                edges.append((d, step))
            elif tgt < cur:
                step = d[:i] + (cur - 1,) + d[i + 1 :]
                edges.append((d, step))
    return StateTransitionGraph(states, tuple(sorted(edges)))


def stg_to_dot(stg: StateTransitionGraph) -> str:
    def label(state):
        return "(" + ",".join(str(x) for x in state) + ")"

    lines = ["digraph stg {"]
    for state in stg.states:
        lines.append(f'  "{label(state)}";')
    for a, b in stg.edges:
        lines.append(f'  "{label(a)}" -> "{label(b)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- K <-> MBFs

@dataclass(frozen=True)
class NodeFunctions:
    """One node's slice of a parameter point: its ordered positive functions,
    one per target, largest threshold first."""

    inputs: "tuple[str, ...]"
    signs: "tuple[str, ...]"
    targets: "tuple[str, ...]"
    functions: OrderedTuple


def k_to_mbfs(net: WeightedRegulatoryNetwork, k: KCollection) -> dict:
    """The collection of monotone Boolean functions equivalent to [K].

    Decays are normalized away first; each target's function marks the input
    combinations whose production level clears that edge's scaled threshold.
    Raw tables are monotone with the edge signs and are returned
    positive-normalized.
    """
    problems = validate_k(net, k)
    if problems:
        raise NetworkError("K violates monotonicity: " + "; ".join(problems))
    normalized = gamma_normalize(net)
    out = {}
    for name in normalized.names:
        incoming = normalized.sources(name)
        inputs = tuple(e.source for e in incoming)
        signs = tuple(e.sign for e in incoming)
        plus = {e.source for e in incoming if e.sign == ACTIVATING}
        m = len(inputs)
        targets = sorted(
            normalized.targets(name), key=lambda e: e.threshold, reverse=True
        )
        raw_tables = []
        for e in targets:
            truth = 0
            for v in range(1 << m):
                chosen = {inputs[i] for i in range(m) if v >> i & 1}
                value = k.value(name, frozenset(chosen & plus), frozenset(chosen - plus))
                if value == e.threshold:
                    raise DegenerateKError(
                        f"K value {value} equals normalized threshold of "
                        f"{name}->{e.target}"
                    )
                if value > e.threshold:
                    truth |= 1 << v
            raw_tables.append(truth)
        functions = OrderedTuple(
            tuple(beta_normalize(t, signs) for t in raw_tables)
        ) if raw_tables else None
        if functions is None:
            continue
        out[name] = NodeFunctions(inputs, signs, tuple(e.target for e in targets), functions)
    return out


def mbfs_to_k(net: WeightedRegulatoryNetwork, assignments: dict):
    """Canonical K for a collection of per-node ordered positive functions.

    Returns the normalized network (decays 1, each node's outgoing thresholds
    moved to half-integer ranks, order preserved) and the K collection whose
    production levels count how many of the node's functions are true.
    """
    normalized = gamma_normalize(net)
    new_edges = {}
    for name in normalized.names:
        targets = sorted(
            normalized.targets(name), key=lambda e: e.threshold, reverse=True
        )
        b = len(targets)
        for j, e in enumerate(targets, start=1):
            new_edges[(e.source, e.target)] = Fraction(2 * (b - j) + 1, 2)
    canon_net = WeightedRegulatoryNetwork(
        normalized.nodes,
        tuple(
            Edge(e.source, e.target, e.sign, new_edges[(e.source, e.target)])
            for e in normalized.edges
        ),
    )
    table = {}
    for name in canon_net.names:
        incoming = canon_net.sources(name)
        inputs = tuple(e.source for e in incoming)
        signs = tuple(e.sign for e in incoming)
        b = canon_net.out_degree(name)
        if b == 0:
            # no outgoing thresholds: the production level never matters
            m = len(inputs)
            plus = {e.source for e in incoming if e.sign == ACTIVATING}
            table[name] = {
                (
                    frozenset({inputs[i] for i in range(m) if v >> i & 1} & plus),
                    frozenset({inputs[i] for i in range(m) if v >> i & 1} - plus),
                ): Fraction(0)
                for v in range(1 << m)
            }
            continue
        functions = assignments[name]
        if len(functions) != b:
            raise NetworkError(
                f"{name} has {b} targets but {len(functions)} functions"
            )
        if functions.n != len(inputs):
            raise NetworkError(
                f"{name} has {len(inputs)} inputs but arity {functions.n}"
            )
        flip = sum(
            1 << i for i, s in enumerate(signs) if s == REPRESSING
        )
        plus = {e.source for e in incoming if e.sign == ACTIVATING}
        cells = {}
        m = len(inputs)
        for v in range(1 << m):
            chosen = {inputs[i] for i in range(m) if v >> i & 1}
            count = sum(f.truth >> (v ^ flip) & 1 for f in functions)
            cells[(frozenset(chosen & plus), frozenset(chosen - plus))] = Fraction(count)
        table[name] = cells
    return canon_net, KCollection.from_dict(table)


# ---------------------------------------------------------------- serialization

def network_to_json(net: WeightedRegulatoryNetwork) -> str:
    data = {
        "nodes": [{"name": name, "decay": str(d)} for name, d in net.nodes],
        "edges": [
            {
                "source": e.source,
                "target": e.target,
                "sign": e.sign,
                "threshold": str(e.threshold),
            }
            for e in net.edges
        ],
    }
    return json.dumps(data, indent=2) + "\n"


def network_from_json(text: str) -> WeightedRegulatoryNetwork:
    data = json.loads(text)
    nodes = tuple((n["name"], Fraction(n["decay"])) for n in data["nodes"])
    edges = tuple(
        Edge(e["source"], e["target"], e["sign"], Fraction(e["threshold"]))
        for e in data["edges"]
    )
    return WeightedRegulatoryNetwork(nodes, edges)


def k_to_json(k: KCollection) -> str:
    data = {}
    for node, cells in k.entries:
        data[node] = {
            ",".join(sorted(a | b)): str(v) for (a, b), v in cells
        }
    return json.dumps(data, indent=2) + "\n"


def k_from_json(text: str, net: WeightedRegulatoryNetwork) -> KCollection:
    data = json.loads(text)
    table = {}
    for node, cells in data.items():
        plus = {e.source for e in net.sources(node) if e.sign == ACTIVATING}
        minus = {e.source for e in net.sources(node) if e.sign == REPRESSING}
        parsed = {}
        for key, v in cells.items():
            members = set(key.split(",")) if key else set()
            if not members <= plus | minus:
                raise NetworkError(f"K key {key!r} names non-sources of {node}")
            parsed[(frozenset(members & plus), frozenset(members & minus))] = Fraction(v)
        table[node] = parsed
    return KCollection.from_dict(table)
