"""Joint realizability of implication-ordered tuples of monotone functions.

An ordered tuple f_1, ..., f_k is realizable in a class when one expression
value per corner separates every function at its own threshold: f_j is 1
exactly where the value exceeds threshold_j.  The unrestricted class always
works (sum the functions); the algebraic classes are decided or searched:

* sums: exact decision by Fourier-Motzkin elimination over the rationals,
  with a Farkas certificate on the infeasible side;
* products of sums and sums of products of sums: three-valued verdicts from
  (i) facet-comparability certificates for directions appearing as a bare
  factor or standalone summand, (ii) monomial-linearization Farkas
  certificates, and (iii) a rational grid search for witnesses.  Unknown is
  an honest output; no completeness is claimed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linear
from .boolean_core import (
    CEILING,
    FLOOR,
    MbfFunction,
    OrderedTuple,
    corner_insert_bit,
    eta,
    implies,
    maximal_false_corners,
    minimal_true_corners,
    restrict_and_collapse,
)
from .interaction import (
    KCLASS,
    PISIGMA,
    SIGMA,
    SIGMAPISIGMA,
    InteractionStructure,
    PhiAssignment,
    collapse_shape,
    collapse_structure,
    corner_monomials,
    corner_table,
    enumerate_structures,
    has_factor,
    has_simple_term,
    parse_structure,
    structure,
    sum_structure,
)

REALIZABLE = "realizable"
NOT_REALIZABLE = "not_realizable"
UNKNOWN = "unknown"


class WitnessError(ValueError):
    """A witness whose expression value ties a threshold exactly."""


# ---------------------------------------------------------------- data types

@dataclass(frozen=True)
class Witness:
    """Structure, low/high assignment, and strictly decreasing thresholds.

    thresholds[j] separates tuple member j; the smallest function gets the
    largest threshold.  Construction does not validate (corrupt witnesses
    must be representable so verification can reject them).
    """

    structure: InteractionStructure
    phi: PhiAssignment
    thresholds: "tuple[Fraction, ...]"


@dataclass(frozen=True)
class KWitness:
    """A realizing value per corner plus thresholds, for the free class."""

    values: "tuple[Fraction, ...]"
    thresholds: "tuple[Fraction, ...]"


@dataclass(frozen=True)
class DirectionCertificate:
    """Four corners proving the facet collapses are incomparable in one
    direction, which no expression with that variable as a bare factor or
    standalone summand can realize."""

    direction: int
    f_true_corner: int
    g_false_corner: int
    g_true_corner: int
    f_false_corner: int


@dataclass(frozen=True)
class FarkasCertificate:
    """Non-negative multipliers combining the stored rows into 0 > 0."""

    columns: "tuple[str, ...]"
    rows: "tuple[linear.Row, ...]"
    multipliers: "tuple[Fraction, ...]"


@dataclass(frozen=True)
class CollapseCertificate:
    """Impossibility inherited from a facet: the collapsed structure cannot
    realize the collapsed tuple on the given side."""

    direction: int
    side: str
    structure_text: str
    inner: object


@dataclass(frozen=True)
class ExhaustionCertificate:
    """One impossibility certificate per structure of the class."""

    entries: "tuple[tuple[str, object], ...]"

    def as_dict(self) -> dict:
        return dict(self.entries)


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: "Witness | KWitness | None" = None
    certificate: object = None
    diagnostics: "tuple[str, ...]" = ()

    @classmethod
    def realizable(cls, witness) -> "Verdict":
        return cls(REALIZABLE, witness=witness)

    @classmethod
    def not_realizable(cls, certificate) -> "Verdict":
        return cls(NOT_REALIZABLE, certificate=certificate)

    @classmethod
    def unknown(cls, diagnostics) -> "Verdict":
        return cls(UNKNOWN, diagnostics=tuple(diagnostics))

    @property
    def is_realizable(self) -> bool:
        return self.status == REALIZABLE

    @property
    def is_not_realizable(self) -> bool:
        return self.status == NOT_REALIZABLE


@dataclass(frozen=True)
class SearchGrid:
    """Grid for the witness search: lows stay fixed, highs range per variable."""

    low: Fraction = Fraction(1)
    highs: "tuple[Fraction, ...]" = (
        Fraction(3, 2),
        Fraction(2),
        Fraction(3),
        Fraction(31, 10),
        Fraction(4),
        Fraction(41, 10),
        Fraction(5),
        Fraction(6),
    )


DEFAULT_GRID = SearchGrid()


# ---------------------------------------------------------------- verification

def verify_witness(tup: OrderedTuple, w: Witness) -> bool:
    """Exact replay: every function separated at its threshold.

    Returns False on broken ordering or separation; raises WitnessError when
    an expression value equals a threshold (neither holds nor fails).
    """
    if w.structure.n != tup.n or w.phi.n != tup.n:
        raise ValueError("witness arity does not match the tuple")
    if len(w.thresholds) != len(tup):
        return False
    if any(t <= 0 for t in w.thresholds):
        return False
    if any(a <= b for a, b in zip(w.thresholds, w.thresholds[1:])):
        return False
    values = corner_table(w.structure, w.phi)
    for f, theta in zip(tup, w.thresholds):
        for v, value in enumerate(values):
            if value == theta:
                raise WitnessError(f"value at corner {v} equals threshold {theta}")
            if (value > theta) != bool(f.truth >> v & 1):
                return False
    return True


def verify_k_witness(tup: OrderedTuple, kw: KWitness) -> bool:
    if len(kw.values) != 1 << tup.n:
        return False
    if any(val < 0 for val in kw.values):
        return False
    for v, val in enumerate(kw.values):
        for i in range(tup.n):
            if not v >> i & 1 and val > kw.values[v | 1 << i]:
                return False
    if any(t <= 0 for t in kw.thresholds):
        return False
    if any(a <= b for a, b in zip(kw.thresholds, kw.thresholds[1:])):
        return False
    if len(kw.thresholds) != len(tup):
        return False
    for f, theta in zip(tup, kw.thresholds):
        for v, val in enumerate(kw.values):
            if val == theta:
                raise WitnessError(f"value at corner {v} equals threshold {theta}")
            if (val > theta) != bool(f.truth >> v & 1):
                return False
    return True


def realize_k(tup: OrderedTuple) -> KWitness:
    """Sum the tuple members; threshold j sits half a step below b - j + 1."""
    b = len(tup)
    values = tuple(
        Fraction(sum(f.truth >> v & 1 for f in tup)) for v in range(1 << tup.n)
    )
    thresholds = tuple(Fraction(2 * (b - j) - 1, 2) for j in range(b))
    return KWitness(values, thresholds)


# ---------------------------------------------------------------- sums (exact)

def _support_masks(n: int):
    full = (1 << n) - 1
    yield full
    for mask in range(1, full):
        yield mask


def _sigma_system(tup: OrderedTuple, members: "tuple[int, ...]"):
    """LP deciding separation by a sum over the member variables.

    The strict-inequality margin is normalized to 1; feasibility is
    scale-invariant, so this loses nothing.
    """
    n = tup.n
    k = len(tup)
    columns = [f"l{i}" for i in members] + [f"u{i}" for i in members] + [
        f"th{j + 1}" for j in range(k)
    ]
    index = {name: pos for pos, name in enumerate(columns)}
    width = len(columns)
    rows = []

    def blank():
        return [Fraction(0)] * width

    for i in members:
        r = blank()
        r[index[f"l{i}"]] = Fraction(1)
        rows.append(linear.Row(tuple(r), Fraction(1)))
        r = blank()
        r[index[f"u{i}"]] = Fraction(1)
        r[index[f"l{i}"]] = Fraction(-1)
        rows.append(linear.Row(tuple(r), Fraction(1)))
    r = blank()
    r[index[f"th{k}"]] = Fraction(1)
    rows.append(linear.Row(tuple(r), Fraction(1)))
    for j in range(1, k):
        r = blank()
        r[index[f"th{j}"]] = Fraction(1)
        r[index[f"th{j + 1}"]] = Fraction(-1)
        rows.append(linear.Row(tuple(r), Fraction(1)))

    def value_coeffs(v: int):
        r = blank()
        for i in members:
            name = f"u{i}" if v >> (i - 1) & 1 else f"l{i}"
            r[index[name]] += 1
        return r

    for j, f in enumerate(tup, start=1):
        for v in minimal_true_corners(f):
            r = value_coeffs(v)
            r[index[f"th{j}"]] -= 1
            rows.append(linear.Row(tuple(r), Fraction(1)))
        for v in maximal_false_corners(f):
            r = [-c for c in value_coeffs(v)]
            r[index[f"th{j}"]] += 1
            rows.append(linear.Row(tuple(r), Fraction(1)))
    return columns, rows


def check_sigma(tup: OrderedTuple) -> Verdict:
    """Exact decision for the sum class; never Unknown.

    Every non-empty support subset is a sum structure and is tried (full
    support first); the verdict is NotRealizable only when all fail, with one
    Farkas certificate per subset.
    """
    n = tup.n
    if n > 5:
        raise ValueError("sum decision guarded at arity 5")
    dead = []
    for mask in _support_masks(n):
        members = tuple(i for i in range(1, n + 1) if mask >> (i - 1) & 1)
        columns, rows = _sigma_system(tup, members)
        out = linear.solve(len(columns), rows)
        s = sum_structure(members, n)
        if isinstance(out, linear.Feasible):
            point = dict(zip(columns, out.point))
            low = tuple(point.get(f"l{i}", Fraction(1)) for i in range(1, n + 1))
            high = tuple(point.get(f"u{i}", Fraction(2)) for i in range(1, n + 1))
            thresholds = tuple(point[f"th{j + 1}"] for j in range(len(tup)))
            w = Witness(s, PhiAssignment(low, high), thresholds)
            if not verify_witness(tup, w):
                raise AssertionError("feasible sum system produced a bad witness")
            return Verdict.realizable(w)
        dead.append((s.text(), FarkasCertificate(tuple(columns), tuple(rows), out.multipliers)))
    return Verdict.not_realizable(ExhaustionCertificate(tuple(dead)))


# ---------------------------------------------------------------- direction test

def direction_certificate(f: MbfFunction, g: MbfFunction, ell: int):
    """Incomparability of the f-ceiling and g-floor collapses in direction ell.

    Such incomparability rules out every realizing expression in which z_ell
    is a bare factor or a standalone summand.
    """
    a = restrict_and_collapse(f, ell, CEILING).truth
    b = restrict_and_collapse(g, ell, FLOOR).truth
    extra_a = a & ~b
    extra_b = b & ~a
    if not extra_a or not extra_b:
        return None
    wa = (extra_a & -extra_a).bit_length() - 1
    wb = (extra_b & -extra_b).bit_length() - 1
    return DirectionCertificate(
        direction=ell,
        f_true_corner=corner_insert_bit(wa, ell, 1),
        g_false_corner=corner_insert_bit(wa, ell, 0),
        g_true_corner=corner_insert_bit(wb, ell, 0),
        f_false_corner=corner_insert_bit(wb, ell, 1),
    )


def necessary_condition(f: MbfFunction, g: MbfFunction, s: InteractionStructure):
    """First direction certificate among directions z_ell that the structure
    exposes as a factor or standalone summand; None when all are comparable."""
    if not implies(f, g):
        raise ValueError("f must imply g")
    for ell in range(1, f.n + 1):
        if has_factor(s, ell) or has_simple_term(s, ell):
            cert = direction_certificate(f, g, ell)
            if cert is not None:
                return cert
    return None


def verify_direction_certificate(
    f: MbfFunction, g: MbfFunction, s: InteractionStructure, cert: DirectionCertificate
) -> bool:
    ell = cert.direction
    if not (has_factor(s, ell) or has_simple_term(s, ell)):
        return False
    bit = 1 << (ell - 1)
    if cert.f_true_corner != cert.g_false_corner | bit or cert.g_false_corner & bit:
        return False
    if cert.f_false_corner != cert.g_true_corner | bit or cert.g_true_corner & bit:
        return False
    return (
        f.truth >> cert.f_true_corner & 1 == 1
        and g.truth >> cert.g_false_corner & 1 == 0
        and g.truth >> cert.g_true_corner & 1 == 1
        and f.truth >> cert.f_false_corner & 1 == 0
    )


# ---------------------------------------------------------------- Farkas test

def _monomial_label(mono) -> str:
    return "*".join(
        ("u" if bit else "l") + str(i) for i, bit in sorted(mono)
    )


def monomial_certificate(tup: OrderedTuple, s: InteractionStructure):
    """Farkas refutation of the linearized corner-separation system.

    Every multilinear monomial of the expression becomes an independent
    positive variable; separation constraints plus linearized products of the
    elementary facts (low < high, positivity) make a homogeneous strict
    system.  Infeasibility of this relaxation is sound: the true polynomial
    system is a further restriction.  Returns None when the relaxation is
    feasible, which proves nothing either way.
    """
    n = tup.n
    universe: "dict[frozenset, int]" = {}
    expansions = []
    for v in range(1 << n):
        monos = corner_monomials(s, v)
        for m in monos:
            universe.setdefault(m, len(universe))
        expansions.append(monos)
    columns = [None] * len(universe)
    for m, pos in universe.items():
        columns[pos] = _monomial_label(m)
    width = len(universe)
    rows = []

    def corner_diff(w_corner: int, v_corner: int):
        coeffs = [Fraction(0)] * width
        for m in expansions[w_corner]:
            coeffs[universe[m]] += 1
        for m in expansions[v_corner]:
            coeffs[universe[m]] -= 1
        return coeffs

    for f in tup:
        for v in maximal_false_corners(f):
            for w in minimal_true_corners(f):
                rows.append(linear.Row(tuple(corner_diff(w, v)), Fraction(0), strict=True))

    for m, pos in universe.items():
        coeffs = [Fraction(0)] * width
        coeffs[pos] = Fraction(1)
        rows.append(linear.Row(tuple(coeffs), Fraction(0), strict=True))

    # products of (u_i - l_i) facts with a monomial over the other variables,
    # kept only when every expanded term is already a column
    shapes = {frozenset(i for i, _ in m) for m in universe}
    fact_rows = set()
    for shape in shapes:
        shape = tuple(sorted(shape))
        for r in range(1, len(shape) + 1):
            for diff_vars in itertools.combinations(shape, r):
                others = [i for i in shape if i not in diff_vars]
                for bits in itertools.product((0, 1), repeat=len(others)):
                    base = tuple(zip(others, bits))
                    coeffs = [Fraction(0)] * width
                    ok = True
                    for choice in itertools.product((0, 1), repeat=r):
                        mono = frozenset(base + tuple(zip(diff_vars, choice)))
                        if mono not in universe:
                            ok = False
                            break
                        sign = (-1) ** (r - sum(choice))
                        coeffs[universe[mono]] += sign
                    if ok:
                        fact_rows.add(tuple(coeffs))
    for coeffs in sorted(fact_rows):
        rows.append(linear.Row(coeffs, Fraction(0), strict=True))

    out = linear.solve(width, rows)
    if isinstance(out, linear.Infeasible):
        return FarkasCertificate(tuple(columns), tuple(rows), out.multipliers)
    return None


def verify_farkas(cert: FarkasCertificate) -> bool:
    return linear.refutes(list(cert.rows), cert.multipliers)


# ---------------------------------------------------------------- grid search

def derive_thresholds(tup: OrderedTuple, values):
    """Midpoints of each function's separating gap; shared gaps are split
    into descending fractions.  None when some function has no gap."""
    size = 1 << tup.n
    gaps = []
    for f in tup:
        false_vals = [values[v] for v in range(size) if not f.truth >> v & 1]
        true_vals = [values[v] for v in range(size) if f.truth >> v & 1]
        lo = max(false_vals) if false_vals else Fraction(0)
        hi = min(true_vals) if true_vals else None
        if hi is not None and lo >= hi:
            return None
        gaps.append((lo, hi))
    thresholds = []
    j = 0
    while j < len(gaps):
        j2 = j
        while j2 < len(gaps) and gaps[j2] == gaps[j]:
            j2 += 1
        m = j2 - j
        lo, hi = gaps[j]
        for t in range(m):
            if hi is None:
                thresholds.append(lo + m - t)
            else:
                thresholds.append(lo + (hi - lo) * Fraction(m - t, m + 1))
        j = j2
    if any(a <= b for a, b in zip(thresholds, thresholds[1:])):
        return None
    return tuple(thresholds)


def search_witness(
    tup: OrderedTuple, s: InteractionStructure, grid: SearchGrid = DEFAULT_GRID
):
    """Enumerate the rational grid of high values over the structure support;
    thresholds are derived from the achieved value gaps, never searched."""
    n = tup.n
    support = sorted(s.support)
    spare_high = max(grid.highs)
    for highs in itertools.product(grid.highs, repeat=len(support)):
        low = [grid.low] * n
        high = [spare_high] * n
        for i, h in zip(support, highs):
            high[i - 1] = h
        phi = PhiAssignment(tuple(low), tuple(high))
        values = corner_table(s, phi)
        thresholds = derive_thresholds(tup, values)
        if thresholds is None:
            continue
        w = Witness(s, phi, thresholds)
        if verify_witness(tup, w):
            return w
    return None


# ---------------------------------------------------------------- class check

def extend_to_full_support(tup: OrderedTuple, w: Witness, class_tag: str) -> Witness:
    """Pad a subset-support sum witness with fresh variables small enough to
    keep every separation, re-tagged for the enclosing class."""
    n = tup.n
    members = sorted(w.structure.support)
    missing = [i for i in range(1, n + 1) if i not in members]
    full: InteractionStructure
    if class_tag == PISIGMA:
        full = structure([[frozenset(range(1, n + 1))]], n, PISIGMA)
    elif class_tag == SIGMAPISIGMA:
        full = structure(
            [(frozenset({i}),) for i in range(1, n + 1)], n, SIGMAPISIGMA
        )
    else:
        full = sum_structure(range(1, n + 1), n)
    if not missing:
        return Witness(full, w.phi, w.thresholds)
    values = corner_table(w.structure, w.phi)
    margin = min(
        abs(value - theta) for value in values for theta in w.thresholds
    )
    eps = margin / (2 * len(missing))
    low = list(w.phi.low)
    high = list(w.phi.high)
    for i in missing:
        low[i - 1] = Fraction(1)
        high[i - 1] = 1 + eps
    shift = Fraction(len(missing))
    thresholds = tuple(t + shift for t in w.thresholds)
    out = Witness(full, PhiAssignment(tuple(low), tuple(high)), thresholds)
    if not verify_witness(tup, out):
        raise AssertionError("support extension broke the witness")
    return out


def _pairs(tup: OrderedTuple):
    for a in range(len(tup)):
        for b in range(a + 1, len(tup)):
            yield tup[a], tup[b]


def _structure_blocked(tup: OrderedTuple, s: InteractionStructure, prune_collapse: bool):
    """First impossibility certificate for this structure, or None."""
    for f, g in _pairs(tup):
        cert = necessary_condition(f, g, s)
        if cert is not None:
            return cert
    if prune_collapse and tup.n > 1:
        for ell in range(1, tup.n + 1):
            shape = collapse_shape(s, ell)
            for side in (FLOOR, CEILING):
                collapsed = OrderedTuple(
                    tuple(restrict_and_collapse(f, ell, side) for f in tup)
                )
                for f, g in _pairs(collapsed):
                    inner = necessary_condition(f, g, shape)
                    if inner is not None:
                        return CollapseCertificate(ell, side, shape.text(), inner)
                inner = monomial_certificate(collapsed, shape)
                if inner is not None:
                    return CollapseCertificate(ell, side, shape.text(), inner)
    return monomial_certificate(tup, s)


def check_class(
    tup: OrderedTuple, class_tag: str, grid: SearchGrid = DEFAULT_GRID
) -> Verdict:
    """Three-valued verdict for one algebraic class.

    The sum class delegates to the exact decision.  For the larger classes
    every structure is tried in turn: direction certificates, then (at four
    inputs) facet-collapse pruning, then the monomial Farkas test, then grid
    search.  The sum-of-all-variables structure is decided exactly through
    the sum decision instead of searched, so a sum-realizable tuple is never
    misreported in a larger class.
    """
    if class_tag == SIGMA:
        return check_sigma(tup)
    if class_tag == KCLASS:
        return Verdict.realizable(realize_k(tup))
    if class_tag not in (PISIGMA, SIGMAPISIGMA):
        raise ValueError(f"unknown class tag {class_tag!r}")
    n = tup.n
    if n > 4:
        raise ValueError("product classes guarded at arity 4")

    sigma = check_sigma(tup)
    if sigma.is_realizable:
        return Verdict.realizable(extend_to_full_support(tup, sigma.witness, class_tag))
    sum_text = sum_structure(range(1, n + 1), n).text()
    sigma_certs = sigma.certificate.as_dict()

    dead = []
    alive = []
    prune = n == 4
    for s in enumerate_structures(n, class_tag):
        if s.text() == sum_text:
            # direction test first, like every structure; the exact sum
            # decision (already NotRealizable here) covers the rest
            cert = None
            for f, g in _pairs(tup):
                cert = necessary_condition(f, g, s)
                if cert is not None:
                    break
            dead.append((s.text(), cert if cert is not None else sigma_certs[sum_text]))
            continue
        cert = _structure_blocked(tup, s, prune)
        if cert is not None:
            dead.append((s.text(), cert))
            continue
        w = search_witness(tup, s, grid)
        if w is not None:
            return Verdict.realizable(w)
        alive.append(s.text())
    if not alive:
        return Verdict.not_realizable(ExhaustionCertificate(tuple(dead)))
    return Verdict.unknown(alive)


# ---------------------------------------------------------------- transformations

def lift_eta(
    pair: "tuple[MbfFunction, MbfFunction]", w: Witness, class_tag: str
) -> Witness:
    """Turn a witness for (f, g) into one for the paired (n+1)-input function.

    Additive construction for the sum classes (the new variable becomes a
    standalone summand), multiplicative for products of sums (a new factor).
    """
    f, g = pair
    tup = OrderedTuple((f, g))
    if not verify_witness(tup, w):
        raise WitnessError("witness does not verify the pair")
    theta_f, theta_g = w.thresholds
    n = f.n
    s = w.structure
    groups = list(s.groups)
    if class_tag == PISIGMA:
        new_groups = [tuple(list(groups[0]) + [frozenset({n + 1})])]
        new_s = structure(new_groups, n + 1, PISIGMA)
        phi_new = (Fraction(1), theta_f / theta_g)
        new_thresholds = (theta_f,)
    elif class_tag in (SIGMA, SIGMAPISIGMA):
        values = corner_table(s, w.phi)
        gap = min(
            min(abs(v - t) for v in values for t in w.thresholds),
            theta_f - theta_g,
        )
        eps = gap / 2
        if class_tag == SIGMA:
            members = set(s.support) | {n + 1}
            new_s = sum_structure(members, n + 1)
        else:
            new_s = structure(groups + [(frozenset({n + 1}),)], n + 1, SIGMAPISIGMA)
        phi_new = (eps, theta_f + eps - theta_g)
        new_thresholds = (theta_f + eps,)
    else:
        raise ValueError(f"unsupported class tag {class_tag!r}")
    phi = PhiAssignment(w.phi.low + (phi_new[0],), w.phi.high + (phi_new[1],))
    out = Witness(new_s, phi, new_thresholds)
    if not verify_witness(OrderedTuple((eta(f, g),)), out):
        raise AssertionError("lift construction failed verification")
    return out


def lower_eta(h: MbfFunction, w: Witness, direction: int):
    """Split a witness for h into one for its floor/ceiling pair, when the
    direction is a bare factor or standalone summand of the structure."""
    tup = OrderedTuple((h,))
    if not verify_witness(tup, w):
        raise WitnessError("witness does not verify the function")
    s = w.structure
    theta = w.thresholds[0]
    lo_d = w.phi.low[direction - 1]
    hi_d = w.phi.high[direction - 1]
    factor = has_factor(s, direction)
    term = has_simple_term(s, direction)
    if not factor and not term:
        raise ValueError("direction is neither a factor nor a standalone summand")
    new_s = collapse_shape(s, direction)
    low = tuple(v for i, v in enumerate(w.phi.low, start=1) if i != direction)
    high = tuple(v for i, v in enumerate(w.phi.high, start=1) if i != direction)
    phi = PhiAssignment(low, high)
    if factor:
        theta_f = theta / lo_d
        theta_g = theta / hi_d
    else:
        values = corner_table(new_s, phi)
        vmin = min(values)
        theta_f = theta - lo_d
        theta_g = theta - hi_d
        if theta_f <= 0 and theta_g <= 0:
            theta_f = vmin * Fraction(2, 3)
            theta_g = vmin * Fraction(1, 3)
        elif theta_g <= 0:
            theta_g = min(vmin, theta_f) / 2
    pair = (
        restrict_and_collapse(h, direction, FLOOR),
        restrict_and_collapse(h, direction, CEILING),
    )
    out = Witness(new_s, phi, (theta_f, theta_g))
    if not verify_witness(OrderedTuple(pair), out):
        raise AssertionError("lowering construction failed verification")
    return pair, out


def collapse_witness(tup: OrderedTuple, w: Witness, ell: int, side: str):
    """Witness for the facet-collapsed tuple, shifting thresholds when the
    removed variable was a standalone summand."""
    if not verify_witness(tup, w):
        raise WitnessError("witness does not verify the tuple")
    new_s, phi, offset = collapse_structure(w.structure, ell, side, w.phi)
    collapsed = OrderedTuple(
        tuple(restrict_and_collapse(f, ell, side) for f in tup)
    )
    values = corner_table(new_s, phi)
    vmin = min(values)
    thresholds = []
    for theta in w.thresholds:
        thresholds.append(theta - offset)
    # clamped entries (non-positive) belong to functions that became
    # constant-1 on this facet; give them positive room below everything
    floor_room = min([vmin] + [t for t in thresholds if t > 0])
    bad = [j for j, t in enumerate(thresholds) if t <= 0]
    for rank, j in enumerate(bad):
        thresholds[j] = floor_room * Fraction(len(bad) - rank, len(bad) + 1)
    out = Witness(new_s, phi, tuple(thresholds))
    if not verify_witness(collapsed, out):
        raise AssertionError("collapse construction failed verification")
    return collapsed, out


# ---------------------------------------------------------------- sums vs planes

def witness_to_separating(w: Witness):
    """Weights and offset of the separating hyperplane behind a sum witness
    for a single function: a_i = high_i - low_i, offset against the sum of
    lows.  When the function is constantly 1 the clamped offset would change
    it, so -1/2 is used instead."""
    if w.structure.class_tag != SIGMA:
        raise ValueError("separating form needs a sum witness")
    if len(w.thresholds) != 1:
        raise ValueError("separating form is for single functions")
    members = w.structure.support
    n = w.phi.n
    a = tuple(
        w.phi.high[i - 1] - w.phi.low[i - 1] if i in members else Fraction(0)
        for i in range(1, n + 1)
    )
    raw = w.thresholds[0] - sum(w.phi.low[i - 1] for i in members)
    theta_prime = raw if raw >= 0 else Fraction(-1, 2)
    return a, theta_prime


def separating_to_witness(a, theta_prime) -> Witness:
    """Sum witness from a non-negative separating structure.

    Zero weights get a small positive perturbation and the offset is nudged
    off any corner it ties, so the induced function is unchanged and the
    strict separation required of witnesses holds.
    """
    a = tuple(Fraction(x) for x in a)
    n = len(a)
    theta_prime = Fraction(theta_prime)
    if any(x < 0 for x in a):
        raise ValueError("weights must be non-negative")
    if not theta_prime > -n:
        raise ValueError("offset must exceed -n")
    sums = [sum(x for x, bit in zip(a, _bits(v, n)) if bit) for v in range(1 << n)]
    true_vals = [s for s in sums if s > theta_prime]
    false_vals = [s for s in sums if s <= theta_prime]
    theta2 = theta_prime
    if theta_prime in sums:
        room = min(true_vals) - theta_prime if true_vals else Fraction(1)
        theta2 = theta_prime + room / 2
    if false_vals:
        eps = (theta2 - max(false_vals)) / (2 * n)
    else:
        eps = Fraction(1, 2)
    adjusted = tuple(x if x > 0 else eps for x in a)
    phi = PhiAssignment(
        tuple(Fraction(1) for _ in range(n)),
        tuple(1 + x for x in adjusted),
    )
    return Witness(sum_structure(range(1, n + 1), n), phi, (theta2 + n,))


def _bits(v: int, n: int):
    return tuple(v >> i & 1 for i in range(n))


def induced_function(w: Witness) -> MbfFunction:
    """The Boolean function a single-threshold witness separates."""
    values = corner_table(w.structure, w.phi)
    theta = w.thresholds[0]
    truth = 0
    for v, value in enumerate(values):
        if value == theta:
            raise WitnessError(f"value at corner {v} equals the threshold")
        if value > theta:
            truth |= 1 << v
    return MbfFunction(w.structure.n, truth)


# ---------------------------------------------------------------- certificates io

def certificate_to_data(cert) -> dict:
    """JSON-ready dict; rationals as strings, fully replayable."""
    if isinstance(cert, DirectionCertificate):
        return {
            "type": "direction",
            "direction": cert.direction,
            "f_true_corner": cert.f_true_corner,
            "g_false_corner": cert.g_false_corner,
            "g_true_corner": cert.g_true_corner,
            "f_false_corner": cert.f_false_corner,
        }
    if isinstance(cert, FarkasCertificate):
        return {
            "type": "farkas",
            "columns": list(cert.columns),
            "rows": [
                {
                    "coeffs": [str(c) for c in r.coeffs],
                    "const": str(r.const),
                    "strict": r.strict,
                }
                for r in cert.rows
            ],
            "multipliers": [str(m) for m in cert.multipliers],
        }
    if isinstance(cert, CollapseCertificate):
        return {
            "type": "collapse",
            "direction": cert.direction,
            "side": cert.side,
            "structure": cert.structure_text,
            "inner": certificate_to_data(cert.inner),
        }
    if isinstance(cert, ExhaustionCertificate):
        return {
            "type": "exhaustion",
            "entries": [
                {"structure": text, "certificate": certificate_to_data(c)}
                for text, c in cert.entries
            ],
        }
    raise TypeError(f"not a certificate: {cert!r}")


def certificate_from_data(data: dict):
    kind = data["type"]
    if kind == "direction":
        return DirectionCertificate(
            data["direction"],
            data["f_true_corner"],
            data["g_false_corner"],
            data["g_true_corner"],
            data["f_false_corner"],
        )
    if kind == "farkas":
        rows = tuple(
            linear.Row(
                tuple(Fraction(c) for c in r["coeffs"]),
                Fraction(r["const"]),
                bool(r["strict"]),
            )
            for r in data["rows"]
        )
        return FarkasCertificate(
            tuple(data["columns"]),
            rows,
            tuple(Fraction(m) for m in data["multipliers"]),
        )
    if kind == "collapse":
        return CollapseCertificate(
            data["direction"],
            data["side"],
            data["structure"],
            certificate_from_data(data["inner"]),
        )
    if kind == "exhaustion":
        return ExhaustionCertificate(
            tuple(
                (e["structure"], certificate_from_data(e["certificate"]))
                for e in data["entries"]
            )
        )
    raise ValueError(f"unknown certificate type {kind!r}")


def replay_certificate(tup: OrderedTuple, structure_text: "str | None", cert) -> bool:
    """Re-derive the contradiction from the stored data alone."""
    if isinstance(cert, FarkasCertificate):
        return verify_farkas(cert)
    if isinstance(cert, DirectionCertificate):
        if len(tup) < 2:
            return False
        s = parse_structure(structure_text, tup.n) if structure_text else None
        for f, g in _pairs(tup):
            ok = (
                verify_direction_certificate(f, g, s, cert)
                if s is not None
                else _direction_corners_hold(f, g, cert)
            )
            if ok:
                return True
        return False
    if isinstance(cert, CollapseCertificate):
        collapsed = OrderedTuple(
            tuple(restrict_and_collapse(f, cert.direction, cert.side) for f in tup)
        )
        return replay_certificate(collapsed, cert.structure_text, cert.inner)
    if isinstance(cert, ExhaustionCertificate):
        return all(
            replay_certificate(tup, text, sub) for text, sub in cert.entries
        )
    return False


def _direction_corners_hold(f, g, cert: DirectionCertificate) -> bool:
    bit = 1 << (cert.direction - 1)
    return (
        cert.f_true_corner == cert.g_false_corner | bit
        and not cert.g_false_corner & bit
        and cert.f_false_corner == cert.g_true_corner | bit
        and not cert.g_true_corner & bit
        and f.truth >> cert.f_true_corner & 1 == 1
        and g.truth >> cert.g_false_corner & 1 == 0
        and g.truth >> cert.g_true_corner & 1 == 1
        and f.truth >> cert.f_false_corner & 1 == 0
    )


# ---------------------------------------------------------------- witness files

def witness_to_text(tup: OrderedTuple, w: "Witness | KWitness") -> str:
    lines = ["tuple: " + " ".join(f.to_hex() for f in tup)]
    if isinstance(w, Witness):
        lines.append(f"structure: {w.structure.text()}")
        lines.append("low: " + " ".join(str(x) for x in w.phi.low))
        lines.append("high: " + " ".join(str(x) for x in w.phi.high))
    else:
        lines.append("rvalues: " + " ".join(str(x) for x in w.values))
    lines.append("thresholds: " + " ".join(str(x) for x in w.thresholds))
    return "\n".join(lines) + "\n"


def witness_from_text(text: str):
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        if key in fields:
            raise ValueError(f"duplicate witness field {key!r}")
        fields[key] = rest.strip()
    if "tuple" not in fields or "thresholds" not in fields:
        raise ValueError("witness file needs 'tuple' and 'thresholds'")
    functions = tuple(MbfFunction.from_hex(tok) for tok in fields["tuple"].split())
    tup = OrderedTuple(functions)
    thresholds = tuple(Fraction(tok) for tok in fields["thresholds"].split())
    if "rvalues" in fields:
        values = tuple(Fraction(tok) for tok in fields["rvalues"].split())
        return tup, KWitness(values, thresholds)
    if "structure" not in fields or "low" not in fields or "high" not in fields:
        raise ValueError("witness file needs structure, low, and high")
    s = parse_structure(fields["structure"], tup.n)
    low = tuple(Fraction(tok) for tok in fields["low"].split())
    high = tuple(Fraction(tok) for tok in fields["high"].split())
    return tup, Witness(s, PhiAssignment(low, high), thresholds)
