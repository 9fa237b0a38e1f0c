from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mbfreal.interaction import (
    CEILING,
    FLOOR,
    PISIGMA,
    SIGMA,
    SIGMAPISIGMA,
    InteractionStructure,
    PhiAssignment,
    StructureError,
    collapse_shape,
    collapse_structure,
    corner_monomials,
    enumerate_structures,
    evaluate,
    evaluate_at_corner,
    has_factor,
    has_simple_term,
    parse_structure,
    set_partitions,
    structure,
    sum_structure,
)


def S(text, n=None):
    return parse_structure(text, n)


# ---------------------------------------------------------------- evaluate

def test_evaluate_known_values():
    assert evaluate(S("(z1+z2)*z3"), (4, 4, 2)) == 16
    assert evaluate(S("z1*z2+z3"), (3, Fraction(31, 10), 4)) == Fraction(133, 10)
    assert evaluate(S("z1+z2+z3"), (1, 1, 1)) == 3


def test_evaluate_rejects_nonpositive():
    with pytest.raises(ValueError):
        evaluate(S("z1+z2"), (1, 0))


def test_evaluate_arity():
    with pytest.raises(ValueError):
        evaluate(S("z1+z2"), (1, 2, 3))


@given(st.data())
def test_evaluate_monotone_in_each_variable(data):
    structs = enumerate_structures(3, SIGMAPISIGMA)
    s = structs[data.draw(st.integers(0, len(structs) - 1))]
    z = [Fraction(data.draw(st.integers(1, 40)), data.draw(st.integers(1, 7))) for _ in range(3)]
    i = data.draw(st.integers(0, 2))
    bump = Fraction(data.draw(st.integers(1, 30)), data.draw(st.integers(1, 5)))
    z2 = list(z)
    z2[i] += bump
    assert evaluate(s, z2) >= evaluate(s, z)


# ---------------------------------------------------------------- enumeration

def test_enumerate_prodsum_3():
    # same five expressions the canonical printer spells with sorted blocks,
    # e.g. (z2+z3)*z1 prints as z1*(z2+z3)
    got = {s.text() for s in enumerate_structures(3, PISIGMA)}
    assert got == {"z1+z2+z3", "(z1+z2)*z3", "(z1+z3)*z2", "z1*(z2+z3)", "z1*z2*z3"}
    assert parse_structure("(z2+z3)*z1").text() == "z1*(z2+z3)"


def test_enumerate_mixed_3():
    got = {s.text() for s in enumerate_structures(3, SIGMAPISIGMA)}
    assert got == {
        "z1+z2+z3",
        "(z1+z2)*z3",
        "(z1+z3)*z2",
        "z1*(z2+z3)",
        "z1*z2*z3",
        "z1*z2+z3",
        "z1*z3+z2",
        "z1+z2*z3",
    }
    assert parse_structure("z2*z3+z1").text() == "z1+z2*z3"


def test_enumerate_single_variable():
    for tag in (SIGMA, PISIGMA, SIGMAPISIGMA):
        structs = enumerate_structures(1, tag)
        assert [s.text() for s in structs] == ["z1"]


def test_enumerate_sigma_counts():
    for n in (1, 2, 3, 4):
        assert len(enumerate_structures(n, SIGMA)) == (1 << n) - 1


def test_prodsum_counts_are_bell_numbers():
    for n, bell in ((2, 2), (3, 5), (4, 15)):
        assert len(enumerate_structures(n, PISIGMA)) == bell


def test_enumeration_is_deterministic_and_duplicate_free():
    for tag in (PISIGMA, SIGMAPISIGMA):
        for n in (2, 3, 4):
            structs = enumerate_structures(n, tag)
            assert structs == enumerate_structures(n, tag)
            keys = [s.normal_form() for s in structs]
            assert len(set(keys)) == len(keys)


def test_class_nesting():
    for n in (2, 3, 4):
        pisigma_keys = {s.normal_form() for s in enumerate_structures(n, PISIGMA)}
        mixed_keys = {s.normal_form() for s in enumerate_structures(n, SIGMAPISIGMA)}
        full_sum = sum_structure(range(1, n + 1), n)
        assert full_sum.normal_form() in pisigma_keys
        assert pisigma_keys <= mixed_keys


# ---------------------------------------------------------------- text format

def test_parse_print_roundtrip():
    for tag in (SIGMA, PISIGMA, SIGMAPISIGMA):
        for n in (1, 2, 3, 4):
            for s in enumerate_structures(n, tag):
                back = parse_structure(s.text(), n)
                assert back.normal_form() == s.normal_form()
                assert back.text() == s.text()


def test_parse_subset_sum():
    s = S("z1+z3", 3)
    assert s.class_tag == SIGMA
    assert s.support == {1, 3}


def test_parse_reordered_product():
    assert S("z2*(z1+z3)").text() == "(z1+z3)*z2"


def test_parse_rejects_garbage():
    for bad in ("", "z1+", "(z1+z2", "z1**z2", "x1+x2", "(z1*z2)+z3"):
        with pytest.raises(StructureError):
            parse_structure(bad)


def test_product_must_cover_all_variables():
    with pytest.raises(StructureError):
        parse_structure("z1*z2", 3)


# ---------------------------------------------------------------- factor / term

def test_factor_and_term_examples():
    s = S("(z1+z2)*z3")
    assert has_factor(s, 3) and not has_simple_term(s, 3)
    assert not has_factor(s, 1) and not has_simple_term(s, 1)

    s = S("z1*z2+z3")
    assert has_simple_term(s, 3) and not has_factor(s, 3)
    assert not has_factor(s, 1) and not has_simple_term(s, 1)

    s = S("z1+z2+z3")
    for ell in (1, 2, 3):
        assert has_simple_term(s, ell)
        assert not has_factor(s, ell)


def test_every_var_simple_term_in_sums():
    s = sum_structure({1, 2, 3}, 3)
    assert all(has_simple_term(s, ell) for ell in (1, 2, 3))


def test_single_variable_structure():
    s = S("z1", 1)
    assert has_simple_term(s, 1)
    assert not has_factor(s, 1)


def test_pure_product():
    s = S("z1*z2*z3")
    for ell in (1, 2, 3):
        assert has_factor(s, ell)
        assert not has_simple_term(s, ell)


# ---------------------------------------------------------------- collapse

def phi_for(n):
    return PhiAssignment(
        tuple(Fraction(i) for i in range(1, n + 1)),
        tuple(Fraction(2 * i + 1, 2) for i in range(1, n + 1)),
    )


def test_collapse_drop_summand():
    s = S("z1*z2+z3")
    phi = PhiAssignment((1, 1, 1), (3, 2, 4))
    out, phi2, offset = collapse_structure(s, 3, FLOOR, phi)
    assert out.text() == "z1*z2"
    assert offset == 1
    assert phi2.low == (1, 1) and phi2.high == (3, 2)


def test_collapse_scale_sibling():
    s = S("(z1+z2)*z3")
    phi = PhiAssignment((1, 1, 1), (4, 4, 2))
    out, phi2, offset = collapse_structure(s, 3, CEILING, phi)
    assert out.text() == "z1+z2"
    assert offset == 0
    assert phi2.low == (2, 2) and phi2.high == (8, 8)
    # replay on every ceiling corner
    for w in range(4):
        v = w | 4
        assert evaluate_at_corner(s, phi, v) == evaluate_at_corner(out, phi2, w)


def test_collapse_survivor_absorbs():
    s = sum_structure({1, 2, 3}, 3)
    phi = PhiAssignment((1, 1, 1), (2, 3, 4))
    out, phi2, offset = collapse_structure(s, 2, FLOOR, phi)
    assert out.text() == "z1+z2"
    assert offset == 0
    assert phi2.low == (2, 1) and phi2.high == (3, 4)
    for w in range(4):
        v = (w & 1) | (w & 2) << 1  # y2 = 0
        assert evaluate_at_corner(s, phi, v) == evaluate_at_corner(out, phi2, w)


def test_collapse_direction_outside_support():
    s = S("z1", 2)
    phi = PhiAssignment((1, 1), (2, 2))
    out, phi2, offset = collapse_structure(s, 2, FLOOR, phi)
    assert out.text() == "z1"
    assert offset == 0


def test_collapse_last_variable_errors():
    s = S("z1", 2)
    phi = PhiAssignment((1, 1), (2, 2))
    with pytest.raises(StructureError):
        collapse_structure(s, 1, FLOOR, phi)


def test_collapse_replay_exhaustive():
    for n in (2, 3, 4):
        phi = phi_for(n)
        structs = []
        for tag in (SIGMA, PISIGMA, SIGMAPISIGMA):
            structs.extend(enumerate_structures(n, tag))
        for s in structs:
            for ell in range(1, n + 1):
                for side, bit in ((FLOOR, 0), (CEILING, 1)):
                    try:
                        out, phi2, offset = collapse_structure(s, ell, side, phi)
                    except StructureError:
                        assert s.support == {ell}
                        continue
                    assert collapse_shape(s, ell).normal_form() == out.normal_form()
                    low = (1 << (ell - 1)) - 1
                    for w in range(1 << (n - 1)):
                        v = (w & low) | ((w & ~low) << 1) | bit << (ell - 1)
                        assert (
                            evaluate_at_corner(s, phi, v)
                            == evaluate_at_corner(out, phi2, w) + offset
                        )


# ---------------------------------------------------------------- monomials

def test_corner_monomials_match_value():
    phi = PhiAssignment((1, 1, 1), (3, Fraction(31, 10), 4))
    for text in ("z1*z2+z3", "(z1+z2)*z3", "z1+z2+z3", "z1*z2*z3"):
        s = S(text)
        for v in range(8):
            total = Fraction(0)
            for mono in corner_monomials(s, v):
                prod = Fraction(1)
                for i, bit in mono:
                    prod *= phi.value(i, bit)
                total += prod
            assert total == evaluate_at_corner(s, phi, v)


# ---------------------------------------------------------------- misc

def test_set_partition_counts():
    for n, bell in ((1, 1), (2, 2), (3, 5), (4, 15), (5, 52)):
        assert sum(1 for _ in set_partitions(range(n))) == bell


def test_phi_validation():
    with pytest.raises(ValueError):
        PhiAssignment((1, 2), (2, 2))
    with pytest.raises(ValueError):
        PhiAssignment((0, 1), (1, 2))


def test_structure_rejects_overlap():
    with pytest.raises(StructureError):
        structure([[{1, 2}], [{2}, {3}]], 3)
