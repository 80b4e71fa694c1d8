"""Critical orbits of g + c and the membership decision procedure.

Entries are 1-indexed: value(1) = g_c(0) = c, value(n+1) = g(value(n)) + c.
Everything is exact integer arithmetic on reduced numerator/denominator
pairs; floats appear only in the cached ln |value| used by the analytic
bound checkers.

A reduced denominator M_n can only contain primes dividing den(c), so the
support is factored once up front and per-entry valuations are tracked
only there.  The "deep" part of a denominator, the primes whose valuation
exceeds their valuation in the leading coefficient, is what triggers the
InfiniteDenominator verdict: once val_p(M_n) > val_p(u_d) the recursion
val_p(M_{n+1}) = d*val_p(M_n) - val_p(u_d) forces strict growth forever.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .arith import factor_small, ln_abs_int, ln_abs_ratio, val_p
from .poly import RatPolynomial, X2DivisiblePoly, length


@dataclass(frozen=True)
class OrbitEntry:
    """One orbit value as a reduced fraction num/den, den > 0."""

    n: int
    num: int
    den: int
    ln_abs: float
    # valuations of den at support primes p with val_p(den) > val_p(lead)
    deep_valuations: dict

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)


@dataclass(frozen=True)
class OrbitRecord:
    poly: X2DivisiblePoly
    c: Fraction
    horizon: int
    bit_cap: int
    entries: tuple[OrbitEntry, ...]
    capped_at: Optional[int]
    den_prime_support: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, n: int) -> OrbitEntry:
        if not 1 <= n <= len(self.entries):
            raise IndexError(f"orbit entry {n} not computed (have 1..{len(self.entries)})")
        return self.entries[n - 1]

    def value(self, n: int) -> Fraction:
        return self.entry(n).value

    def numerators(self) -> list[int]:
        return [e.num for e in self.entries]


def _denominator_support(c: Fraction) -> tuple[int, ...]:
    if c.denominator == 1:
        return ()
    fac = factor_small(c.denominator)
    if not fac.complete:
        raise ValueError(
            f"cannot certify denominator prime support of c: {fac.cofactor} unfactored"
        )
    return fac.primes


def iterate(g: X2DivisiblePoly, c, horizon: int, bit_cap: int = 2_000_000) -> OrbitRecord:
    """Compute orbit entries 1..horizon, stopping early at the bit cap.

    If an entry's numerator or denominator exceeds bit_cap bits it is still
    recorded (so callers can see the crossing value) and capped_at marks it.
    """
    c = Fraction(c)
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    support = _denominator_support(c)
    lead_vals = {p: val_p(g.lead, p) if g.lead % p == 0 else 0 for p in support}
    c_num, c_den = c.numerator, c.denominator

    entries: list[OrbitEntry] = []
    capped_at = None
    num, den = 0, 1
    for n in range(1, horizon + 1):
        if n == 1:
            num, den = c_num, c_den
        else:
            p_raw, q_raw = g.eval_int_pair(num, den)
            num = p_raw * c_den + c_num * q_raw
            den = q_raw * c_den
            shrink = math.gcd(num, den)
            num //= shrink
            den //= shrink
        deep = {}
        for p in support:
            if den % p == 0:
                e = val_p(den, p)
                if e > lead_vals[p]:
                    deep[p] = e
        entries.append(OrbitEntry(n, num, den, ln_abs_ratio(num, den), deep))
        if max(num.bit_length(), den.bit_length()) > bit_cap:
            capped_at = n
            break
    return OrbitRecord(
        poly=g,
        c=c,
        horizon=horizon,
        bit_cap=bit_cap,
        entries=tuple(entries),
        capped_at=capped_at,
        den_prime_support=support,
    )


def escape_radius(g: X2DivisiblePoly, c: Fraction) -> Fraction:
    """max(4 * length(g), |c|): beyond this the orbit grows forever."""
    return max(4 * length(g), abs(Fraction(c)))


def escape_check(orbit: OrbitRecord) -> Optional[int]:
    """Least k >= 0 with |value(k+1)| >= escape_radius, or None.

    Exact cross-multiplied comparison; the index is in the k-convention
    counting applications of g_c to the starting value c.
    """
    r = escape_radius(orbit.poly, orbit.c)
    for e in orbit.entries:
        if abs(e.num) * r.denominator >= r.numerator * e.den:
            return e.n - 1
    return None


class Verdict(str, Enum):
    FINITE_ORBIT = "finite"
    INFINITE_ESCAPE = "escape"
    INFINITE_DENOMINATOR = "denominator"


@dataclass(frozen=True)
class MembershipDecision:
    """Outcome of the finiteness test for one parameter.

    For FINITE_ORBIT, tail is the least index n >= 1 whose value lies on
    the cycle and cycle is the cycle length.  For INFINITE_ESCAPE,
    escape_index is the least k >= 0 with |g_c^k(c)| past the escape
    radius.  For INFINITE_DENOMINATOR, trigger_index is the first entry
    whose denominator is deep at trigger_prime (the smallest such prime).
    Both infinite verdicts certify the orbit never hits zero: a zero
    would force periodicity, which the repeat check catches first, and
    neither denominator depth nor escape growth can be undone.
    """

    poly: X2DivisiblePoly
    c: Fraction
    verdict: Verdict
    steps_used: int
    tail: Optional[int] = None
    cycle: Optional[int] = None
    escape_index: Optional[int] = None
    trigger_index: Optional[int] = None
    trigger_prime: Optional[int] = None

    def witness_text(self) -> str:
        if self.verdict is Verdict.FINITE_ORBIT:
            return f"tail={self.tail};cycle={self.cycle}"
        if self.verdict is Verdict.INFINITE_ESCAPE:
            return f"n={self.escape_index}"
        return f"n={self.trigger_index};p={self.trigger_prime}"


def _state_space_bound(g: X2DivisiblePoly, radius: Fraction) -> int:
    """Upper bound on how long a non-escaping, shallow-denominator orbit can run.

    Such values a/b satisfy |a/b| < radius and b | |lead|, so counting
    reduced fractions with each divisor of |lead| as denominator bounds
    the reachable states; two extra steps cover the start and the repeat.
    """
    lead = abs(g.lead)
    fac = factor_small(lead)
    if not fac.complete:
        raise ValueError(f"cannot factor leading coefficient {lead}")
    divisors = [1]
    for p, e in fac.factors:
        divisors = [m * p**k for m in divisors for k in range(e + 1)]
    total = 0
    for m in divisors:
        total += 2 * int(radius * m) + 1
    return total + 2


def decide_membership(g: X2DivisiblePoly, c, max_steps: Optional[int] = None) -> MembershipDecision:
    """Classify the critical orbit of g + c: finite, or infinite with reason.

    Per step, in order: repeated value (finite orbit), escape-radius
    crossing, deep denominator.  The procedure always terminates: an orbit
    that never triggers either infinite verdict lives in a finite state
    space and must repeat within the state-space bound.
    """
    c = Fraction(c)
    support = _denominator_support(c)
    lead_vals = {p: val_p(g.lead, p) if g.lead % p == 0 else 0 for p in support}
    radius = escape_radius(g, c)
    if max_steps is None:
        max_steps = _state_space_bound(g, radius)
    c_num, c_den = c.numerator, c.denominator

    seen: dict[tuple[int, int], int] = {}
    num, den = c_num, c_den
    n = 1
    while n <= max_steps:
        key = (num, den)
        if key in seen:
            first = seen[key]
            return MembershipDecision(
                poly=g, c=c, verdict=Verdict.FINITE_ORBIT, steps_used=n,
                tail=first, cycle=n - first,
            )
        if abs(num) * radius.denominator >= radius.numerator * den:
            return MembershipDecision(
                poly=g, c=c, verdict=Verdict.INFINITE_ESCAPE, steps_used=n,
                escape_index=n - 1,
            )
        for p in support:
            if den % p == 0 and val_p(den, p) > lead_vals[p]:
                return MembershipDecision(
                    poly=g, c=c, verdict=Verdict.INFINITE_DENOMINATOR, steps_used=n,
                    trigger_index=n, trigger_prime=p,
                )
        seen[key] = n
        p_raw, q_raw = g.eval_int_pair(num, den)
        num = p_raw * c_den + c_num * q_raw
        den = q_raw * c_den
        shrink = math.gcd(num, den)
        num //= shrink
        den //= shrink
        n += 1
    raise ArithmeticError(
        f"no verdict after {max_steps} steps; state-space bound violated"
    )


def brute_force_verdict(g: X2DivisiblePoly, c, steps: int = 500,
                        bit_cap: int = 10**6) -> Optional[tuple[str, int, int]]:
    """Independent repeat detector on plain Fractions, for cross-checking.

    Returns ("finite", tail, cycle) when a repeat shows up within the
    step and size limits, None when nothing can be concluded.
    """
    c = Fraction(c)
    rp = g.as_rational()
    seen: dict[Fraction, int] = {}
    x = c
    for n in range(1, steps + 1):
        if x in seen:
            return ("finite", seen[x], n - seen[x])
        if max(x.numerator.bit_length(), x.denominator.bit_length()) > bit_cap:
            return None
        seen[x] = n
        x = rp(x) + c
    return None


def iterate_rational(f: RatPolynomial, c, start, horizon: int) -> list[Fraction]:
    """[x, f_c(x), ..., f_c^horizon(x)] for an arbitrary rational map f + c."""
    c = Fraction(c)
    x = Fraction(start)
    out = [x]
    for _ in range(horizon):
        x = f(x) + c
        out.append(x)
    return out


def _approx_le(a: float, b: float, rel_tol: float) -> bool:
    return a <= b + rel_tol * max(1.0, abs(a), abs(b))


def check_upper_bounds(orbit: OrbitRecord, rel_tol: float = 1e-9) -> list[str]:
    """Violations of the growth ceilings; empty when the orbit obeys them.

    Denominators: ln M_n <= d^(n-1) ln M_1.  Values: ln |value(n)| <=
    d^(n-1) ln(2 |u_d| max(|c|, 4 L)).  Zero values are skipped.
    """
    g = orbit.poly
    d = g.degree
    bad: list[str] = []
    ln_m1 = ln_abs_int(orbit.entries[0].den) if orbit.entries else 0.0
    ceiling = 2 * abs(g.lead) * max(abs(orbit.c), 4 * length(g))
    ln_ceiling = ln_abs_ratio(ceiling.numerator, ceiling.denominator)
    for e in orbit.entries:
        scale = float(d) ** (e.n - 1)
        if not _approx_le(ln_abs_int(e.den), scale * ln_m1, rel_tol):
            bad.append(f"denominator bound fails at n={e.n}")
        if e.num != 0 and not _approx_le(e.ln_abs, scale * ln_ceiling, rel_tol):
            bad.append(f"value bound fails at n={e.n}")
    return bad


def check_valuation_recursion(orbit: OrbitRecord) -> list[str]:
    """Exact check of deep-denominator propagation between consecutive entries.

    For p deep at entry n: val_p(M_{n+1}) = d * val_p(M_n) - val_p(u_d),
    and the new valuation must stay deep (persistence).
    """
    g = orbit.poly
    d = g.degree
    bad: list[str] = []
    for prev, cur in zip(orbit.entries, orbit.entries[1:]):
        for p, e in prev.deep_valuations.items():
            lead_val = val_p(g.lead, p) if g.lead % p == 0 else 0
            expected = d * e - lead_val
            got = cur.deep_valuations.get(p)
            if got is None:
                bad.append(f"p={p} deep at n={prev.n} but not at n={cur.n}")
            elif got != expected:
                bad.append(f"p={p} at n={cur.n}: val {got}, expected {expected}")
    return bad


def check_denominator_lower_bound(orbit: OrbitRecord, rel_tol: float = 1e-9) -> list[str]:
    """ln M_n >= (d^(n-n') / 3) ln(deep part of M_n') for degree >= 3.

    n' is the first entry with a deep denominator; the deep part is the
    product of p^val_p over deep primes, handled in logs so the hatted
    integer is never built.
    """
    g = orbit.poly
    d = g.degree
    if d < 3:
        raise ValueError("denominator lower bound needs degree >= 3")
    first = None
    for e in orbit.entries:
        if e.deep_valuations:
            first = e
            break
    if first is None:
        return []
    ln_hat = sum(e * math.log(p) for p, e in first.deep_valuations.items())
    bad = []
    for e in orbit.entries[first.n - 1:]:
        need = (float(d) ** (e.n - first.n) / 3.0) * ln_hat
        if not _approx_le(need, ln_abs_int(e.den), rel_tol):
            bad.append(f"denominator lower bound fails at n={e.n}")
    return bad


def check_escape_growth(orbit: OrbitRecord, rel_tol: float = 1e-9) -> list[str]:
    """ln |value(k+1)| >= d^(k-k0) ln(|value(k0+1)| / 2) past the escape index k0."""
    g = orbit.poly
    d = g.degree
    k0 = escape_check(orbit)
    if k0 is None:
        return []
    base = orbit.entry(k0 + 1)
    ln_floor = base.ln_abs - math.log(2.0)
    bad = []
    for e in orbit.entries[k0:]:
        need = float(d) ** (e.n - 1 - k0) * ln_floor
        if not _approx_le(need, e.ln_abs, rel_tol):
            bad.append(f"escape growth fails at n={e.n}")
    return bad
