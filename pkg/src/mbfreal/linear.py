"""Exact linear feasibility over the rationals with certificate extraction.

A system is a list of rows, each meaning ``sum_j coeffs[j] * x_j >= const``
(or ``>`` when strict).  Fourier-Motzkin elimination decides feasibility
exactly; every derived row carries the non-negative combination of original
rows that produced it, so an infeasible system yields a replayable multiplier
vector and a feasible one yields a sample point by back-substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Row:
    coeffs: "tuple[Fraction, ...]"
    const: Fraction
    strict: bool = False


def row(coeffs, const=0, strict=False) -> Row:
    return Row(tuple(Fraction(c) for c in coeffs), Fraction(const), strict)


@dataclass(frozen=True)
class Feasible:
    point: "tuple[Fraction, ...]"


@dataclass(frozen=True)
class Infeasible:
    multipliers: "tuple[Fraction, ...]"


class _Work:
    """A working inequality plus its provenance over the original rows."""

    __slots__ = ("coeffs", "const", "strict", "mult")

    def __init__(self, coeffs, const, strict, mult):
        self.coeffs = coeffs
        self.const = const
        self.strict = strict
        self.mult = mult

    def scaled(self) -> "_Work":
        lead = next((c for c in self.coeffs if c), None)
        scale = 1 / abs(lead) if lead is not None else (1 / abs(self.const) if self.const else None)
        if scale is None or scale == 1:
            return self
        return _Work(
            [c * scale for c in self.coeffs],
            self.const * scale,
            self.strict,
            {k: v * scale for k, v in self.mult.items()},
        )


def _is_true(w: _Work) -> bool:
    return not any(w.coeffs) and (w.const < 0 or (w.const <= 0 and not w.strict))


def _is_false(w: _Work) -> bool:
    return not any(w.coeffs) and (w.const > 0 or (w.const >= 0 and w.strict))


def _dedupe(rows: "list[_Work]") -> "list[_Work]":
    best: "dict[tuple, _Work]" = {}
    for w in rows:
        key = tuple(w.coeffs)
        old = best.get(key)
        if old is None or (w.const, w.strict) > (old.const, old.strict):
            best[key] = w
    return list(best.values())


def solve(num_vars: int, rows: "list[Row]") -> "Feasible | Infeasible":
    """Decide the system; exact rational arithmetic throughout."""
    work = []
    for idx, r in enumerate(rows):
        if len(r.coeffs) != num_vars:
            raise ValueError("row width mismatch")
        work.append(_Work(list(r.coeffs), r.const, r.strict, {idx: Fraction(1)}).scaled())

    levels: "list[tuple[int, list[_Work]]]" = []
    remaining = list(range(num_vars))
    while remaining:
        for w in work:
            if _is_false(w):
                return Infeasible(_mult_vector(w.mult, len(rows)))
        work = _dedupe([w for w in work if not _is_true(w)])

        # eliminate the variable with the fewest pairings first
        def cost(j: int) -> int:
            pos = sum(1 for w in work if w.coeffs[j] > 0)
            neg = sum(1 for w in work if w.coeffs[j] < 0)
            return pos * neg - pos - neg

        var = min(remaining, key=cost)
        remaining.remove(var)
        levels.append((var, work))

        pos = [w for w in work if w.coeffs[var] > 0]
        neg = [w for w in work if w.coeffs[var] < 0]
        rest = [w for w in work if w.coeffs[var] == 0]
        new = list(rest)
        for p in pos:
            for q in neg:
                a, b = -q.coeffs[var], p.coeffs[var]
                coeffs = [a * cp + b * cq for cp, cq in zip(p.coeffs, q.coeffs)]
                const = a * p.const + b * q.const
                mult = {k: a * v for k, v in p.mult.items()}
                for k, v in q.mult.items():
                    mult[k] = mult.get(k, Fraction(0)) + b * v
                new.append(_Work(coeffs, const, p.strict or q.strict, mult).scaled())
        work = new

    for w in work:
        if _is_false(w):
            return Infeasible(_mult_vector(w.mult, len(rows)))

    # back-substitution; lower == upper can only happen with both bounds
    # non-strict, otherwise elimination would have derived a contradiction
    point = [Fraction(0)] * num_vars
    for var, level_rows in reversed(levels):
        lower = None
        upper = None
        for w in level_rows:
            c = w.coeffs[var]
            if c == 0:
                continue
            rest = w.const - sum(
                w.coeffs[j] * point[j] for j in range(num_vars) if j != var and w.coeffs[j]
            )
            bound = rest / c
            if c > 0:
                lower = bound if lower is None else max(lower, bound)
            else:
                upper = bound if upper is None else min(upper, bound)
        if lower is not None and upper is not None:
            point[var] = lower if lower == upper else (lower + upper) / 2
        elif lower is not None:
            point[var] = lower + 1
        elif upper is not None:
            point[var] = upper - 1
        else:
            point[var] = Fraction(1)
    return Feasible(tuple(point))


def _mult_vector(mult: dict, size: int) -> "tuple[Fraction, ...]":
    return tuple(mult.get(i, Fraction(0)) for i in range(size))


def combine(rows: "list[Row]", multipliers) -> Row:
    """The non-negative combination of rows given by the multipliers."""
    if len(multipliers) != len(rows):
        raise ValueError("multiplier count mismatch")
    width = len(rows[0].coeffs) if rows else 0
    coeffs = [Fraction(0)] * width
    const = Fraction(0)
    strict = False
    for m, r in zip(multipliers, rows):
        m = Fraction(m)
        if m < 0:
            raise ValueError("multipliers must be non-negative")
        if m == 0:
            continue
        for j, c in enumerate(r.coeffs):
            coeffs[j] += m * c
        const += m * r.const
        strict = strict or r.strict
    return Row(tuple(coeffs), const, strict)


def refutes(rows: "list[Row]", multipliers) -> bool:
    """Whether the combination proves the system infeasible (0 >= positive,
    or 0 > 0 via a strict row with positive weight)."""
    combined = combine(rows, multipliers)
    if any(combined.coeffs):
        return False
    return combined.const > 0 or (combined.const >= 0 and combined.strict)
