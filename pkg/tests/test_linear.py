from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mbfreal.linear import Feasible, Infeasible, combine, refutes, row, solve


def check(num_vars, rows):
    """Solve and verify the outcome against the rows themselves."""
    out = solve(num_vars, rows)
    if isinstance(out, Feasible):
        for r in rows:
            lhs = sum(c * x for c, x in zip(r.coeffs, out.point))
            assert lhs > r.const if r.strict else lhs >= r.const
    else:
        assert all(m >= 0 for m in out.multipliers)
        assert refutes(rows, out.multipliers)
    return out


def test_simple_feasible():
    out = check(2, [row([1, 0], 1), row([0, 1], 1), row([-1, -1], -10)])
    assert isinstance(out, Feasible)


def test_simple_infeasible():
    out = check(1, [row([1], 3), row([-1], -2)])  # x >= 3 and x <= 2
    assert isinstance(out, Infeasible)


def test_strict_boundary():
    # x > 1 and x <= 1
    out = check(1, [row([1], 1, strict=True), row([-1], -1)])
    assert isinstance(out, Infeasible)
    # x >= 1 and x <= 1 is fine
    out = check(1, [row([1], 1), row([-1], -1)])
    assert isinstance(out, Feasible)
    assert out.point == (Fraction(1),)


def test_homogeneous_strict_cycle():
    # a > b, b > c, c > a is impossible
    rows = [
        row([1, -1, 0], 0, strict=True),
        row([0, 1, -1], 0, strict=True),
        row([-1, 0, 1], 0, strict=True),
    ]
    out = check(3, rows)
    assert isinstance(out, Infeasible)


def test_homogeneous_strict_feasible():
    rows = [
        row([1, -1, 0], 0, strict=True),
        row([0, 1, -1], 0, strict=True),
        row([0, 0, 1], 0, strict=True),
    ]
    out = check(3, rows)
    assert isinstance(out, Feasible)
    a, b, c = out.point
    assert a > b > c > 0


def test_equality_chain_inconsistent():
    # x = y via two inequalities, plus x >= y + 1
    rows = [row([1, -1], 0), row([-1, 1], 0), row([1, -1], 1)]
    out = check(2, rows)
    assert isinstance(out, Infeasible)


def test_combine_width_check():
    with pytest.raises(ValueError):
        combine([row([1], 0)], (1, 2))


def test_combine_rejects_negative_multiplier():
    with pytest.raises(ValueError):
        combine([row([1], 0)], (-1,))


def test_refutes_needs_zero_coefficients():
    rows = [row([1], 5)]
    assert not refutes(rows, (1,))


@settings(max_examples=200)
@given(st.data())
def test_random_systems_verified(data):
    num_vars = data.draw(st.integers(1, 4))
    num_rows = data.draw(st.integers(1, 8))
    rows = []
    for _ in range(num_rows):
        coeffs = [data.draw(st.integers(-3, 3)) for _ in range(num_vars)]
        const = data.draw(st.integers(-5, 5))
        strict = data.draw(st.booleans())
        rows.append(row(coeffs, const, strict))
    check(num_vars, rows)
