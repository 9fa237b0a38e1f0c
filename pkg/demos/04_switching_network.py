"""A two-node switching network: from production levels K to Boolean
functions, the discrete self-map of domain states, and the asynchronous
state transition graph.

Run: python3 demos/04_switching_network.py
"""

from fractions import Fraction as F

from mbfreal import Edge, KCollection, WeightedRegulatoryNetwork, build_stg, k_to_mbfs, phi_k
from mbfreal.ksystem import stg_to_dot

# Node 1 activates itself (threshold 3) and node 2 (threshold 2); node 2
# represses node 1 (threshold 3/2).  All decays are 1.
net = WeightedRegulatoryNetwork(
    nodes=(("1", F(1)), ("2", F(1))),
    edges=(
        Edge("1", "1", "+", F(3)),
        Edge("1", "2", "+", F(2)),
        Edge("2", "1", "-", F(3, 2)),
    ),
)

# Production levels per activity combination, monotone: more active
# activators never lower production, more active repressors never raise it.
k = KCollection.from_dict(
    {
        "1": {
            (frozenset(), frozenset()): F(1, 2),
            (frozenset(), frozenset({"2"})): F(1, 10),
            (frozenset({"1"}), frozenset()): F(6),
            (frozenset({"1"}), frozenset({"2"})): F(5),
        },
        "2": {
            (frozenset(), frozenset()): F(1, 5),
            (frozenset({"1"}), frozenset()): F(2, 5),
        },
    }
)

# Every choice of K induces one Boolean function per edge.
for name, nf in k_to_mbfs(net, k).items():
    hexes = " ".join(f.to_hex() for f in nf.functions)
    print(f"node {name}: inputs {nf.inputs} signs {nf.signs} -> {hexes}")

# The discrete dynamics: each state maps to the state holding its target
# point; the state transition graph takes one unit step at a time.
phi = phi_k(net, k)
print("\nimage of (2,2):", phi[(2, 2)])
stg = build_stg(phi)
print(f"{len(stg.states)} states, {len(stg.edges)} transitions:")
for a, b in stg.edges:
    arrow = "loops" if a == b else f"-> {b}"
    print(f"  {a} {arrow}")

print("\nDOT output:\n" + stg_to_dot(stg))
