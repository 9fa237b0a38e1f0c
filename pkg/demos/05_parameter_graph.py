"""The parameter graph of a network: one factor per node over its ordered
function tuples, adjacent when one function flips at one input combination,
and the product across nodes.

Run: python3 demos/05_parameter_graph.py
"""

from fractions import Fraction as F

from mbfreal import Edge, SIGMA, WeightedRegulatoryNetwork, build_factor, build_parameter_graph
from mbfreal.paramgraph import annotate_factor, annotate_realizability

net = WeightedRegulatoryNetwork(
    nodes=(("1", F(1)), ("2", F(1))),
    edges=(
        Edge("1", "1", "+", F(3)),
        Edge("1", "2", "+", F(2)),
        Edge("2", "1", "-", F(3, 2)),
    ),
)

# Node 1 has two inputs and two outputs: its factor is the graph of all 20
# ordered pairs on two inputs.  Node 2 (one input, one output) is a path of 3.
pg = build_parameter_graph(net)
for name, factor in zip(pg.node_names, pg.factors):
    print(
        f"node {name}: {factor.num_inputs} inputs, {factor.num_outputs} outputs, "
        f"{len(factor.vertices)} vertices, {len(factor.edges)} edges"
    )
print(f"product: {len(pg.vertices)} vertices, {len(pg.edges)} edges")

# Every vertex of the 20-node factor is realizable with plain sums, so every
# product vertex is too.
verdicts = annotate_factor(build_factor(2, 2), SIGMA)
print("sum-realizable pairs on two inputs:", sum(v.is_realizable for v in verdicts), "/ 20")

_, statuses = annotate_realizability(pg, SIGMA)
print("product vertices realizable with sums:", statuses.count("realizable"), "/", len(statuses))

# At three inputs the factor splits: 150 of 168 pairs are sum-realizable.
big = build_factor(3, 2)
verdicts = annotate_factor(big, SIGMA)
print(
    "sum-realizable pairs on three inputs:",
    sum(v.is_realizable for v in verdicts),
    "/",
    len(big.vertices),
)
