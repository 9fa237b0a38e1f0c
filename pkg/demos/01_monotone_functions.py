"""Monotone Boolean functions on the hypercube, and the pairing that turns
ordered pairs on n inputs into single functions on n+1 inputs.

Run: python3 demos/01_monotone_functions.py
"""

from mbfreal import (
    Corner,
    MbfFunction,
    enumerate_mbf_positive,
    enumerate_ordered_pairs,
    eta,
    eta_inverse,
    implies,
    restrict_and_collapse,
)

# Corners are addressed with strings read left-to-right from the low bit:
# "110" means y1=1, y2=1, y3=0 and sits at index 3.
c = Corner.from_string("110")
print(f"corner {c} has index {c.index}")

# Functions are truth bitmasks; the constructor rejects non-monotone tables.
f = MbfFunction.from_corners(3, ["101", "011", "111"])
g = MbfFunction.from_corners(3, ["100", "010", "110", "101", "011", "111"])
print(f"f = {f.to_hex()}, g = {g.to_hex()}, f implies g: {implies(f, g)}")

# Counting positive monotone functions by arity (the free distributive
# lattice sizes, plus the two constants):
for n in range(1, 6):
    print(f"|MBF+({n})| = {len(enumerate_mbf_positive(n))}")

# Ordered pairs on n inputs correspond one-to-one with single functions on
# n+1 inputs: the new coordinate's floor carries f, its ceiling carries g.
h = eta(f, g)
print(f"eta(f, g) = {h.to_hex()} on {h.n} inputs")
print("floor recovers f:", restrict_and_collapse(h, 4, "floor") == f)
print("ceiling recovers g:", restrict_and_collapse(h, 4, "ceiling") == g)
print("roundtrip:", eta_inverse(h) == (f, g))

pairs = enumerate_ordered_pairs(3)
print(f"pairs on 3 inputs: {len(pairs)} = |MBF+(4)| = {len(enumerate_mbf_positive(4))}")
