"""Interaction expressions built from sums and products of variables.

Three nested algebraic classes are supported: plain sums over a subset of the
variables, products of sums whose blocks partition all variables, and sums of
products of sums.  A structure stores the nested set partition only; numeric
evaluation plugs in per-variable low/high values.

Text format: ``"(z1+z2)*z3"``, ``"z1*z2+z3"``, ``"z1+z3"``.  The parser and
printer round-trip; a parsed pure sum canonicalizes to the sum class.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

SIGMA = "sigma"
PISIGMA = "pisigma"
SIGMAPISIGMA = "sigmapisigma"
KCLASS = "k"

CLASS_TAGS = (SIGMA, PISIGMA, SIGMAPISIGMA)

FLOOR = "floor"
CEILING = "ceiling"

Groups = "tuple[tuple[frozenset[int], ...], ...]"


class StructureError(ValueError):
    """A nested partition that no supported class admits."""


def _sort_groups(groups) -> Groups:
    canon = []
    for group in groups:
        blocks = tuple(sorted((frozenset(b) for b in group), key=min))
        canon.append(blocks)
    canon.sort(key=lambda blocks: min(min(b) for b in blocks))
    return tuple(canon)


def _flatten(groups) -> Groups:
    """Split single-block groups into singleton groups; the polynomial is unchanged."""
    out = []
    for blocks in groups:
        if len(blocks) == 1 and len(blocks[0]) > 1:
            out.extend((frozenset({i}),) for i in sorted(blocks[0]))
        else:
            out.append(blocks)
    return _sort_groups(out)


def _infer_class(groups: Groups, n: int) -> str:
    flat = _flatten(groups)
    if all(len(blocks) == 1 and len(blocks[0]) == 1 for blocks in flat):
        return SIGMA
    support = set().union(*(b for blocks in groups for b in blocks))
    if support != set(range(1, n + 1)):
        raise StructureError(
            f"structure uses {sorted(support)} but products and mixed forms "
            f"must use all {n} variables"
        )
    if len(flat) == 1:
        return PISIGMA
    return SIGMAPISIGMA


@dataclass(frozen=True)
class InteractionStructure:
    """A nested set partition encoding one sum/product expression.

    ``groups`` is a tuple of summands; each summand is a tuple of blocks whose
    sums are multiplied.  Blocks are sorted by minimum element and groups by
    the minimum over their blocks; the factory functions enforce this.
    """

    n: int
    groups: Groups
    class_tag: str

    @property
    def support(self) -> frozenset:
        return frozenset().union(*(b for blocks in self.groups for b in blocks))

    def degree(self) -> int:
        return max(len(blocks) for blocks in self.groups)

    def normal_form(self) -> Groups:
        """Canonical flattened shape; equal iff the polynomials are equal."""
        return _flatten(self.groups)

    def text(self) -> str:
        parts = []
        for blocks in self.groups:
            if len(blocks) == 1:
                parts.append("+".join(f"z{i}" for i in sorted(blocks[0])))
            else:
                factors = []
                for b in blocks:
                    inner = "+".join(f"z{i}" for i in sorted(b))
                    factors.append(f"({inner})" if len(b) > 1 else inner)
                parts.append("*".join(factors))
        return "+".join(parts)

    def __str__(self) -> str:
        return self.text()


def structure(groups, n: int, class_tag: "str | None" = None) -> InteractionStructure:
    """Build a structure from nested iterables, validating per class.

    With ``class_tag=None`` the tightest class containing the shape is chosen.
    """
    if n < 1:
        raise StructureError("need at least one variable")
    canon = _sort_groups(groups)
    if not canon or any(not blocks or any(not b for b in blocks) for blocks in canon):
        raise StructureError("empty group or block")
    seen: set = set()
    for blocks in canon:
        for b in blocks:
            if not b <= set(range(1, n + 1)):
                raise StructureError(f"variable out of range in block {sorted(b)}")
            if b & seen:
                raise StructureError("blocks are not pairwise disjoint")
            seen |= b
    inferred = _infer_class(canon, n)
    if class_tag is None:
        class_tag = inferred
    if class_tag == SIGMA:
        if len(canon) != 1 or len(canon[0]) != 1:
            if inferred != SIGMA:
                raise StructureError("sum class needs a single block")
            # a parsed flat sum; store it as the single-block shape
            canon = ((frozenset(seen),),)
    elif class_tag == PISIGMA:
        if len(canon) != 1:
            raise StructureError("product-of-sums class needs a single group")
        if seen != set(range(1, n + 1)):
            raise StructureError("product-of-sums blocks must partition all variables")
    elif class_tag == SIGMAPISIGMA:
        if seen != set(range(1, n + 1)):
            raise StructureError("groups must partition all variables")
    else:
        raise StructureError(f"unknown class tag {class_tag!r}")
    return InteractionStructure(n, canon, class_tag)


def sum_structure(variables, n: int) -> InteractionStructure:
    return structure([[frozenset(variables)]], n, SIGMA)


_TOKEN = re.compile(r"z(\d+)|[+*()]|\s+")


def parse_structure(text: str, n: "int | None" = None) -> InteractionStructure:
    """Parse the text format; ``n`` defaults to the largest variable index."""
    tokens = []
    pos = 0
    for m in _TOKEN.finditer(text):
        if m.start() != pos:
            raise StructureError(f"bad structure text {text!r}")
        pos = m.end()
        if not m.group().isspace():
            tokens.append(int(m.group(1)) if m.group(1) else m.group())
    if pos != len(text):
        raise StructureError(f"bad structure text {text!r}")
    tokens.reverse()

    def pop():
        if not tokens:
            raise StructureError(f"truncated structure text {text!r}")
        return tokens.pop()

    def parse_paren_block() -> frozenset:
        members = set()
        while True:
            tok = pop()
            if not isinstance(tok, int):
                raise StructureError(f"expected variable, got {tok!r}")
            members.add(tok)
            tok = pop()
            if tok == ")":
                return frozenset(members)
            if tok != "+":
                raise StructureError(f"expected '+' or ')', got {tok!r}")

    def parse_atom() -> frozenset:
        if tokens and tokens[-1] == "(":
            tokens.pop()
            return parse_paren_block()
        tok = pop()
        if not isinstance(tok, int):
            raise StructureError(f"expected variable or '(', got {tok!r}")
        return frozenset({tok})

    groups = []
    current: "list[frozenset]" = [parse_atom()]
    while tokens:
        tok = tokens.pop()
        if tok == "*":
            current.append(parse_atom())
        elif tok == "+":
            groups.append(current)
            current = [parse_atom()]
        else:
            raise StructureError(f"unexpected token {tok!r} in {text!r}")
    groups.append(current)

    support = set().union(*(b for g in groups for b in g))
    if n is None:
        n = max(support)
    if all(len(g) == 1 and len(g[0]) == 1 for g in groups):
        return sum_structure(support, n)
    return structure(groups, n)


def enumerate_structures(n: int, class_tag: str) -> "list[InteractionStructure]":
    """All canonical structures of one class, deterministically ordered."""
    if not 1 <= n <= 5:
        raise StructureError(f"arity {n} outside enumeration range 1..5")
    items = tuple(range(1, n + 1))
    out: "list[InteractionStructure]" = []
    if class_tag == SIGMA:
        for mask in range(1, 1 << n):
            v = frozenset(i for i in items if mask >> (i - 1) & 1)
            out.append(sum_structure(v, n))
        return out
    if class_tag == PISIGMA:
        for part in set_partitions(items):
            out.append(structure([part], n, PISIGMA))
        out.sort(key=lambda s: (len(s.groups[0]), s.text()))
        return out
    if class_tag == SIGMAPISIGMA:
        for outer in set_partitions(items):
            choices = []
            for group in outer:
                if len(group) == 1:
                    choices.append([(frozenset(group),)])
                else:
                    choices.append(
                        [
                            tuple(frozenset(b) for b in p)
                            for p in set_partitions(tuple(sorted(group)))
                            if len(p) >= 2
                        ]
                    )
            for combo in itertools.product(*choices):
                out.append(structure(list(combo), n, SIGMAPISIGMA))
        out.sort(key=lambda s: (len(s.groups), s.text()))
        return out
    raise StructureError(f"unknown class tag {class_tag!r}")


def set_partitions(items):
    """All set partitions, each a list of frozensets, in a fixed order."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [frozenset({first})] + part
        for i in range(len(part)):
            yield part[:i] + [part[i] | {first}] + part[i + 1 :]


# ---------------------------------------------------------------- evaluation

@dataclass(frozen=True)
class PhiAssignment:
    """Per-variable positive low/high values encoding Boolean inputs."""

    low: "tuple[Fraction, ...]"
    high: "tuple[Fraction, ...]"

    def __post_init__(self) -> None:
        if len(self.low) != len(self.high):
            raise ValueError("low/high length mismatch")
        for lo, hi in zip(self.low, self.high):
            if not 0 < lo < hi:
                raise ValueError(f"need 0 < low < high, got {lo}, {hi}")

    @property
    def n(self) -> int:
        return len(self.low)

    def value(self, i: int, bit: int) -> Fraction:
        return self.high[i - 1] if bit else self.low[i - 1]

    def corner(self, v: int) -> "tuple[Fraction, ...]":
        return tuple(
            self.high[i] if v >> i & 1 else self.low[i] for i in range(self.n)
        )


def evaluate(s: InteractionStructure, z) -> Fraction:
    """Exact value of the expression at a positive rational point."""
    if len(z) != s.n:
        raise ValueError(f"expected {s.n} values, got {len(z)}")
    z = [Fraction(v) for v in z]
    if any(v <= 0 for v in z):
        raise ValueError("interaction functions are defined for positive values only")
    total = Fraction(0)
    for blocks in s.groups:
        prod = Fraction(1)
        for b in blocks:
            prod *= sum(z[i - 1] for i in b)
        total += prod
    return total


def evaluate_at_corner(s: InteractionStructure, phi: PhiAssignment, v: int) -> Fraction:
    return evaluate(s, phi.corner(v))


def corner_table(s: InteractionStructure, phi: PhiAssignment) -> "tuple[Fraction, ...]":
    """Values at all 2**n corners, indexed by corner bitmask."""
    return tuple(evaluate_at_corner(s, phi, v) for v in range(1 << s.n))


def corner_monomials(s: InteractionStructure, v: int):
    """Multilinear expansion of the corner value.

    Each monomial is a frozenset of (variable, bit) symbols; the corner value
    is the sum over monomials of the product of the chosen low/high symbols.
    """
    out = []
    for blocks in s.groups:
        pools = [[(i, v >> (i - 1) & 1) for i in sorted(b)] for b in blocks]
        for combo in itertools.product(*pools):
            out.append(frozenset(combo))
    return out


# ---------------------------------------------------------------- factors and terms

def has_factor(s: InteractionStructure, ell: int) -> bool:
    """Whether the whole expression is a product with the bare factor z_ell."""
    flat = s.normal_form()
    if len(flat) != 1 or len(flat[0]) < 2:
        return False
    return frozenset({ell}) in flat[0]


def has_simple_term(s: InteractionStructure, ell: int) -> bool:
    """Whether z_ell appears as a standalone additive summand."""
    return (frozenset({ell}),) in s.normal_form()


# ---------------------------------------------------------------- collapse

def _renumber(groups, ell: int) -> Groups:
    def shift(i: int) -> int:
        return i if i < ell else i - 1

    return tuple(
        tuple(frozenset(shift(i) for i in b) for b in blocks) for blocks in groups
    )


def collapse_shape(s: InteractionStructure, ell: int) -> InteractionStructure:
    """The structure after removing z_ell; independent of the facet side."""
    new_groups = []
    for blocks in s.groups:
        kept_blocks = []
        for b in blocks:
            nb = b - {ell}
            if nb:
                kept_blocks.append(nb)
        if kept_blocks:
            new_groups.append(tuple(kept_blocks))
    if not new_groups:
        raise StructureError("collapse would leave an empty expression")
    return structure(_renumber(new_groups, ell), s.n - 1)


def collapse_structure(
    s: InteractionStructure,
    ell: int,
    side: str,
    phi: PhiAssignment,
) -> "tuple[InteractionStructure, PhiAssignment, Fraction]":
    """Remove z_ell on one facet, rewriting the value assignment to compensate.

    On every corner of the chosen facet the original value equals the
    collapsed value plus the returned additive offset.  The offset is non-zero
    only when z_ell formed a summand of its own (that constant moves into the
    caller's thresholds); when z_ell was a bare factor a sibling block absorbs
    it multiplicatively, and when it shared a block a surviving variable
    absorbs it additively.
    """
    if s.n <= 1:
        raise StructureError("cannot collapse a single-variable expression")
    if side not in (FLOOR, CEILING):
        raise ValueError(f"side must be {FLOOR!r} or {CEILING!r}")
    if phi.n != s.n:
        raise ValueError("assignment arity mismatch")
    c = phi.value(ell, 1 if side == CEILING else 0)

    low = list(phi.low)
    high = list(phi.high)
    offset = Fraction(0)
    new_groups: "list[tuple[frozenset, ...]]" = []
    for blocks in s.groups:
        home = next((b for b in blocks if ell in b), None)
        if home is None:
            new_groups.append(blocks)
            continue
        if len(blocks) == 1 and home == {ell}:
            # z_ell is a summand of its own: drop the group, shift thresholds
            offset = c
            continue
        if home == {ell}:
            # bare factor inside a product: scale the sibling block with the
            # smallest minimum element
            sibling = min((b for b in blocks if b != home), key=min)
            for i in sibling:
                low[i - 1] *= c
                high[i - 1] *= c
            new_groups.append(tuple(b for b in blocks if b != home))
        else:
            # z_ell shares its block: the smallest surviving variable absorbs it
            survivor = min(home - {ell})
            low[survivor - 1] += c
            high[survivor - 1] += c
            new_groups.append(tuple(b - {ell} if b is home else b for b in blocks))
    if not new_groups:
        raise StructureError("collapse would leave an empty expression")

    del low[ell - 1], high[ell - 1]
    out = structure(_renumber(new_groups, ell), s.n - 1)
    return out, PhiAssignment(tuple(low), tuple(high)), offset
