"""Joint realizability of a pair under the nested algebraic classes.

Two pairs of 3-input functions separate the classes: one needs a genuine
product of sums (no weighted sum works), the other needs a sum of products
(no product of sums works).

Run: python3 demos/02_realizability.py
"""

from fractions import Fraction

from mbfreal import (
    MbfFunction,
    OrderedTuple,
    PISIGMA,
    SIGMA,
    SIGMAPISIGMA,
    PhiAssignment,
    Witness,
    check_class,
    check_sigma,
    parse_structure,
    realize_k,
    verify_k_witness,
    verify_witness,
)

# --- a pair that products of sums realize but sums cannot -------------------

f = MbfFunction.from_corners(3, ["101", "011", "111"])
g = MbfFunction.from_corners(3, ["100", "010", "110", "101", "011", "111"])
pair = OrderedTuple((f, g))

print("pair A:", f.to_hex(), g.to_hex())
print("  sums:            ", check_sigma(pair).status)
verdict = check_class(pair, PISIGMA)
print("  products of sums:", verdict.status)
w = verdict.witness
print(f"  witness: {w.structure} with highs {w.phi.high} thresholds {w.thresholds}")

# A hand-picked witness for the same pair: (z1+z2)*z3 with highs (4, 4, 2)
# separates g above 9/2 and f above 9.
hand = Witness(
    parse_structure("(z1+z2)*z3"),
    PhiAssignment((Fraction(1),) * 3, (Fraction(4), Fraction(4), Fraction(2))),
    (Fraction(9), Fraction(9, 2)),
)
print("  hand-picked witness verifies:", verify_witness(pair, hand))

# --- a pair that needs a sum of products ------------------------------------

f2 = MbfFunction.from_corners(3, ["110", "111"])
g2 = MbfFunction.from_corners(3, ["001", "101", "011", "110", "111"])
pair2 = OrderedTuple((f2, g2))

print("pair B:", f2.to_hex(), g2.to_hex())
verdict = check_class(pair2, PISIGMA)
print("  products of sums:", verdict.status)
for text, cert in verdict.certificate.entries:
    print(f"    {text:14s} ruled out by {type(cert).__name__}")
verdict = check_class(pair2, SIGMAPISIGMA)
print("  sums of products:", verdict.status, "via", verdict.witness.structure)

# --- the free class realizes every ordered tuple -----------------------------

kw = realize_k(pair2)
print("free-class realizer values:", [str(v) for v in kw.values])
print("free-class witness verifies:", verify_k_witness(pair2, kw))
