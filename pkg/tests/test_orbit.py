"""Orbit iteration, escape detection, and the membership decision procedure."""
import math
import random
from fractions import Fraction

import pytest

from zsig.orbit import (
    MembershipDecision,
    Verdict,
    brute_force_verdict,
    check_denominator_lower_bound,
    check_escape_growth,
    check_upper_bounds,
    check_valuation_recursion,
    decide_membership,
    escape_check,
    escape_radius,
    iterate,
    iterate_rational,
)
from zsig.poly import RatPolynomial, X2DivisiblePoly, length

F = Fraction
CUBIC = X2DivisiblePoly.parse("x^3+x^2")
SQUARE = X2DivisiblePoly.parse("x^2")


def test_iterate_integer_orbit_frozen():
    orbit = iterate(CUBIC, 1, horizon=4)
    assert [e.num for e in orbit.entries] == [1, 3, 37, 52023]
    assert all(e.den == 1 for e in orbit.entries)
    assert orbit.capped_at is None


def test_iterate_rational_orbit_deep_denominators():
    orbit = iterate(CUBIC, F(1, 2), horizon=2)
    assert (orbit.entry(1).num, orbit.entry(1).den) == (1, 2)
    assert (orbit.entry(2).num, orbit.entry(2).den) == (7, 8)
    assert orbit.entry(1).deep_valuations == {2: 1}
    assert orbit.entry(2).deep_valuations == {2: 3}


def test_iterate_square_orbit():
    orbit = iterate(SQUARE, 1, horizon=5)
    assert [e.num for e in orbit.entries] == [1, 2, 5, 26, 677]


def test_iterate_fixed_points():
    # c = -1 is a fixed point of x^3 + x^2 + c
    orbit = iterate(CUBIC, -1, horizon=6)
    assert all(e.num == -1 and e.den == 1 for e in orbit.entries)
    # c = 0 stays at zero
    orbit = iterate(SQUARE, 0, horizon=3)
    assert all(e.num == 0 and e.den == 1 for e in orbit.entries)


def test_iterate_alternating_orbit():
    orbit = iterate(X2DivisiblePoly.parse("-x^3+x^2"), -1, horizon=5)
    assert [e.num for e in orbit.entries] == [-1, 1, -1, 1, -1]


def test_iterate_matches_plain_fraction_loop():
    rng = random.Random(29)
    for _ in range(40):
        coeffs = [0, 0] + [rng.randrange(-4, 5) for _ in range(rng.randrange(1, 3))]
        coeffs.append(rng.choice([1, -1, 2, 3]))
        g = X2DivisiblePoly.from_coeffs(coeffs)
        c = F(rng.randrange(-9, 10), rng.randrange(1, 8))
        orbit = iterate(g, c, horizon=6, bit_cap=10**5)
        vals = iterate_rational(g.as_rational(), c, c, len(orbit.entries) - 1)
        for entry, v in zip(orbit.entries, vals):
            assert F(entry.num, entry.den) == v


def test_entry_indexing_is_one_based():
    orbit = iterate(CUBIC, 1, horizon=4)
    assert orbit.value(1) == 1
    assert orbit.value(4) == 52023
    with pytest.raises(IndexError):
        orbit.entry(0)
    with pytest.raises(IndexError):
        orbit.entry(5)


def test_bit_cap_records_crossing_entry_then_stops():
    orbit = iterate(CUBIC, 1, horizon=50, bit_cap=64)
    assert orbit.capped_at is not None
    assert orbit.entries[-1].num.bit_length() > 64
    assert orbit.capped_at == orbit.entries[-1].n
    # everything before the cap stays within it
    for e in orbit.entries[:-1]:
        assert e.num.bit_length() <= 64


def test_ln_abs_value_accuracy():
    # math.log takes arbitrary ints, so it serves as reference at any size
    orbit = iterate(CUBIC, 1, horizon=8, bit_cap=10**7)
    for e in orbit.entries:
        assert e.ln_abs == pytest.approx(
            math.log(abs(e.num)) - math.log(e.den), rel=1e-12
        )


def test_escape_radius():
    assert escape_radius(CUBIC, F(1)) == 8  # 4 * length = 8 > |c|
    assert escape_radius(CUBIC, F(9)) == 9
    assert escape_radius(X2DivisiblePoly.parse("x^2"), F(-1)) == 4


def test_escape_check_frozen():
    assert escape_check(iterate(CUBIC, 1, horizon=4)) == 2
    assert escape_check(iterate(CUBIC, 9, horizon=3)) == 0
    assert escape_check(iterate(CUBIC, -1, horizon=6)) is None


def test_decide_membership_frozen_cases():
    d = decide_membership(CUBIC, -1)
    assert d.verdict is Verdict.FINITE_ORBIT and (d.tail, d.cycle) == (1, 1)
    assert d.witness_text() == "tail=1;cycle=1"

    d = decide_membership(CUBIC, 1)
    assert d.verdict is Verdict.INFINITE_ESCAPE and d.escape_index == 2
    assert d.witness_text() == "n=2"

    d = decide_membership(CUBIC, F(1, 2))
    assert d.verdict is Verdict.INFINITE_DENOMINATOR
    assert (d.trigger_index, d.trigger_prime) == (1, 2)
    assert d.witness_text() == "n=1;p=2"

    d = decide_membership(CUBIC, 9)
    assert d.verdict is Verdict.INFINITE_ESCAPE and d.escape_index == 0


def test_decide_membership_lead_two():
    g = X2DivisiblePoly.parse("2*x^3+x^2")
    d = decide_membership(g, F(1, 2))
    # val_2 of the denominator never exceeds val_2(lead)=1, so escape decides
    assert d.verdict is Verdict.INFINITE_ESCAPE and d.escape_index == 3
    d = decide_membership(g, F(1, 4))
    assert d.verdict is Verdict.INFINITE_DENOMINATOR
    assert (d.trigger_index, d.trigger_prime) == (1, 2)


def test_decide_membership_square_cycles():
    d = decide_membership(SQUARE, -1)
    assert d.verdict is Verdict.FINITE_ORBIT and (d.tail, d.cycle) == (1, 2)
    d = decide_membership(SQUARE, -2)
    assert d.verdict is Verdict.FINITE_ORBIT and (d.tail, d.cycle) == (2, 1)


def test_membership_agrees_with_brute_force_on_grid():
    for g_text in ["x^3+x^2", "2*x^3+x^2", "x^2", "-x^3+x^2"]:
        g = X2DivisiblePoly.parse(g_text)
        for b in range(1, 3):
            for a in range(-6, 7):
                if a == 0 or math.gcd(abs(a), b) != 1:
                    continue
                c = F(a, b)
                decision = decide_membership(g, c)
                brute = brute_force_verdict(g, c, steps=200, bit_cap=10**4)
                if brute is None:
                    assert decision.verdict is not Verdict.FINITE_ORBIT, (g_text, c)
                else:
                    assert decision.verdict is Verdict.FINITE_ORBIT, (g_text, c)
                    assert (decision.tail, decision.cycle) == brute[1:], (g_text, c)


def test_escape_index_is_recheckable():
    """The reported index is the least radius crossing, verified exactly."""
    rng = random.Random(57)
    for _ in range(40):
        coeffs = [0, 0, rng.randrange(-3, 4), rng.choice([1, -1, 2])]
        g = X2DivisiblePoly.from_coeffs(coeffs)
        c = F(rng.randrange(-30, 31), rng.randrange(1, 5))
        if c == 0:
            continue
        d = decide_membership(g, c)
        if d.verdict is not Verdict.INFINITE_ESCAPE:
            continue
        radius = escape_radius(g, c)
        vals = iterate_rational(g.as_rational(), c, c, d.escape_index)
        assert abs(vals[-1]) >= radius
        for v in vals[:-1]:
            assert abs(v) < radius


def test_decide_membership_raises_past_explicit_step_budget():
    with pytest.raises(ArithmeticError):
        decide_membership(SQUARE, -1, max_steps=1)


def test_valuation_recursion_checker():
    orbit = iterate(CUBIC, F(1, 2), horizon=6, bit_cap=10**5)
    assert check_valuation_recursion(orbit) == []


def test_upper_bound_checker():
    for c in [1, F(1, 2), -1, F(-3, 2), 7]:
        orbit = iterate(CUBIC, c, horizon=7, bit_cap=10**6)
        assert check_upper_bounds(orbit) == []


def test_denominator_lower_bound_checker():
    orbit = iterate(CUBIC, F(1, 2), horizon=6, bit_cap=10**5)
    assert check_denominator_lower_bound(orbit) == []
    with pytest.raises(ValueError):
        check_denominator_lower_bound(iterate(SQUARE, F(1, 2), horizon=4))


def test_escape_growth_checker():
    orbit = iterate(CUBIC, 1, horizon=7, bit_cap=10**6)
    assert check_escape_growth(orbit) == []


def test_checkers_report_fabricated_violations():
    """Tampered records must trip the inequality checkers."""
    import dataclasses

    orbit = iterate(CUBIC, F(1, 2), horizon=5, bit_cap=10**5)
    bad_entries = list(orbit.entries)
    e = bad_entries[3]
    bad_entries[3] = dataclasses.replace(e, deep_valuations={2: e.deep_valuations[2] + 1})
    bad = dataclasses.replace(orbit, entries=tuple(bad_entries))
    assert check_valuation_recursion(bad) != []
