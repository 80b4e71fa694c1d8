"""Polynomials over Q and the normalization pipeline.

A polynomial f with a rational critical point u is moved into the model
family by two exact steps: shift the critical point to the origin
(dropping the constant term), then rescale by the least t making every
coefficient integral.  The result g is "x^2-divisible": integer
coefficients u_d x^d + ... + u_2 x^2 with u_d != 0, the shape whose
critical orbit arithmetic the rest of the package works over.  The
composite map is recorded in a NormalizationCertificate together with
the parameter change c -> (c + shift_constant) / scale and a bound on
how far the transfer can move Zsigmondy counts.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .arith import factor_small, omega

_TERM_RE = re.compile(
    r"^(?P<sign>[+-]?)(?P<coef>\d+(?:/\d+)?)?(?:\*?(?P<var>x)(?:\^(?P<exp>\d+))?)?$"
)


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial text or coefficient list."""


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot interpret {v!r} as a rational")


@dataclass(frozen=True)
class RatPolynomial:
    """Dense polynomial over Q; coeffs[i] is the coefficient of x^i."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def from_coeffs(values) -> "RatPolynomial":
        cs = [_as_fraction(v) for v in values]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        return RatPolynomial(tuple(cs))

    @staticmethod
    def parse(text: str) -> "RatPolynomial":
        """Parse sums of monomials: 'x^3 + 3*x^2', '-1/2*x^4 + x', '5'.

        '**' is accepted for '^'; the '*' between coefficient and x is
        optional.  No parentheses.
        """
        s = text.replace("**", "^").replace(" ", "")
        if not s:
            raise PolynomialSyntaxError("empty polynomial text")
        terms = re.findall(r"[+-]?[^+-]+", s)
        if "".join(terms) != s:
            raise PolynomialSyntaxError(f"cannot tokenize {text!r}")
        powers: dict[int, Fraction] = {}
        for t in terms:
            m = _TERM_RE.match(t)
            if not m or (m.group("coef") is None and m.group("var") is None):
                raise PolynomialSyntaxError(f"bad term {t!r} in {text!r}")
            coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            if m.group("sign") == "-":
                coef = -coef
            exp = (int(m.group("exp")) if m.group("exp") else 1) if m.group("var") else 0
            powers[exp] = powers.get(exp, Fraction(0)) + coef
        top = max(powers)
        return RatPolynomial.from_coeffs([powers.get(i, Fraction(0)) for i in range(top + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def __call__(self, x) -> Fraction:
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RatPolynomial":
        if self.degree == 0:
            return RatPolynomial((Fraction(0),))
        return RatPolynomial.from_coeffs([i * c for i, c in enumerate(self.coeffs)][1:])

    def taylor_shift(self, u) -> "RatPolynomial":
        """Coefficients of f(x + u), by iterated synthetic division."""
        u = _as_fraction(u)
        b = list(self.coeffs)
        n = len(b)
        for k in range(n - 1):
            for i in range(n - 2, k - 1, -1):
                b[i] += u * b[i + 1]
        return RatPolynomial.from_coeffs(b)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


@dataclass(frozen=True)
class X2DivisiblePoly:
    """Integer polynomial u_d x^d + ... + u_2 x^2, d >= 2, u_d != 0.

    coeffs is the full dense tuple (u_0, u_1, ..., u_d) with u_0 = u_1 = 0,
    so coeffs[i] is the coefficient of x^i.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) < 3:
            raise ValueError("degree must be at least 2")
        if any(not isinstance(c, int) for c in self.coeffs):
            raise ValueError("coefficients must be integers")
        if self.coeffs[0] != 0 or self.coeffs[1] != 0:
            raise ValueError("constant and linear coefficients must vanish")
        if self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @staticmethod
    def from_coeffs(values) -> "X2DivisiblePoly":
        cs = []
        for v in values:
            fv = _as_fraction(v)
            if fv.denominator != 1:
                raise ValueError(f"coefficient {fv} is not an integer")
            cs.append(int(fv))
        while len(cs) > 3 and cs[-1] == 0:
            cs.pop()
        return X2DivisiblePoly(tuple(cs))

    @staticmethod
    def from_rational(rp: RatPolynomial) -> "X2DivisiblePoly":
        return X2DivisiblePoly.from_coeffs(rp.coeffs)

    @staticmethod
    def parse(text: str) -> "X2DivisiblePoly":
        return X2DivisiblePoly.from_rational(RatPolynomial.parse(text))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1]

    @property
    def is_monomial(self) -> bool:
        return all(c == 0 for c in self.coeffs[2:-1])

    def as_rational(self) -> RatPolynomial:
        return RatPolynomial.from_coeffs(self.coeffs)

    def __call__(self, x) -> Fraction:
        return self.as_rational()(x)

    def eval_int_pair(self, num: int, den: int) -> tuple[int, int]:
        """g(num/den) as an unreduced integer pair (P, den^degree).

        P = sum u_i num^i den^(d-i), evaluated by Horner with precomputed
        den powers; no rational normalization happens here.
        """
        d = self.degree
        dp = [1] * (d - 1)
        for i in range(1, d - 1):
            dp[i] = dp[i - 1] * den
        acc = 0
        for i in range(d, 1, -1):
            acc = acc * num + self.coeffs[i] * dp[d - i]
        return acc * num * num, dp[-1] * den * den

    def __str__(self) -> str:
        return str(self.as_rational())


def length(g: X2DivisiblePoly) -> Fraction:
    """1 + sum over 2 <= i <= d-1 of |u_i| / |u_d| (the coefficient length)."""
    d = g.degree
    lead = abs(g.lead)
    return 1 + sum(Fraction(abs(g.coeffs[i]), lead) for i in range(2, d))


def _divisors_from_factorization(n: int) -> list[int]:
    f = factor_small(abs(n))
    if not f.complete:
        raise ValueError(f"cannot enumerate divisors of {n}: incomplete factorization")
    divs = [1]
    for p, e in f.factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def critical_points_rational(f: RatPolynomial) -> tuple[Fraction, ...]:
    """All rational roots of f', ascending (the rational critical points of f).

    Rational-root-theorem search on the primitive integer form of f'.
    """
    fp = f.derivative()
    if fp.is_zero():
        raise ValueError("derivative vanishes identically; critical points undefined")
    # clear denominators, strip powers of x, reduce content
    den_lcm = 1
    for c in fp.coeffs:
        den_lcm = math.lcm(den_lcm, c.denominator)
    ip = [int(c * den_lcm) for c in fp.coeffs]
    roots = set()
    k = 0
    while k < len(ip) and ip[k] == 0:
        k += 1
    if k > 0:
        roots.add(Fraction(0))
        ip = ip[k:]
    if len(ip) > 1:
        const, lead = ip[0], ip[-1]
        for p in _divisors_from_factorization(const):
            for q in _divisors_from_factorization(lead):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if fp(cand) == 0:
                        roots.add(cand)
    return tuple(sorted(roots))


def shift_to_origin(f: RatPolynomial, u) -> tuple[RatPolynomial, Fraction]:
    """Conjugate the critical point u to the origin.

    Returns (g0, shift_constant) where g0(x) = f(x + u) - f(u) has zero
    constant and linear coefficients, and shift_constant = f(u) - u is
    the additive parameter offset.  Rejects u that is not a critical
    point of f.
    """
    u = _as_fraction(u)
    if f.derivative()(u) != 0:
        raise ValueError(f"u = {u} is not a critical point of {f}")
    shifted = f.taylor_shift(u)
    cs = list(shifted.coeffs)
    fu = cs[0]
    cs[0] = Fraction(0)
    assert cs[1] == 0, "linear term must vanish at a critical point"
    return RatPolynomial.from_coeffs(cs), fu - u


def scale_to_integer(g0: RatPolynomial) -> tuple[X2DivisiblePoly, int]:
    """Least positive integer t with (1/t) g0(t x) integral, plus that rescaling.

    The coefficient of x^i maps to u_i t^(i-1), so for each prime p in a
    denominator, val_p(t) must be at least ceil(val_p(den u_i) / (i-1)).
    Requires degree >= 3 (a quadratic rescales to x^2 by a rational t and
    is handled by the normalization wrapper instead).
    """
    d = g0.degree
    if d < 3:
        raise ValueError("integral rescaling needs degree >= 3")
    if g0.coeffs[0] != 0 or g0.coeffs[1] != 0:
        raise ValueError("polynomial is not x^2-divisible")
    if g0.coeffs[-1] == 0:
        raise ValueError("leading coefficient must be nonzero")
    t_val: dict[int, int] = {}
    for i in range(2, d + 1):
        den = g0.coeffs[i].denominator
        if den == 1:
            continue
        fac = factor_small(den)
        if not fac.complete:
            raise ValueError(f"cannot factor coefficient denominator {den}")
        for p, e in fac.factors:
            need = -(-e // (i - 1))  # ceil(e / (i-1))
            if t_val.get(p, 0) < need:
                t_val[p] = need
    t = 1
    for p, e in sorted(t_val.items()):
        t *= p**e
    scaled = [g0.coeffs[i] * Fraction(t) ** (i - 1) for i in range(d + 1)]
    return X2DivisiblePoly.from_coeffs(scaled), t


@dataclass(frozen=True)
class NormalizationCertificate:
    """Exact record of the conjugation f -> target.

    With s = shift_constant and t = scale, the defining identity is

        target(x) = (1/t) * (f(t*x + u) - f(u))

    and iterating f + c from the critical point u matches iterating
    target + c' from 0 under c' = (c + s) / t:

        f_c^n(u) - u = t * target_{c'}^n(0)   for all n >= 0.

    distortion_bound caps how far Zsigmondy-set counts can move under the
    rescaling: the number of distinct primes in the numerator and
    denominator of t (each such prime can create or absorb at most one
    primitive-divisor index).
    """

    source: RatPolynomial
    u: Fraction
    shift_constant: Fraction
    scale: Fraction
    target: X2DivisiblePoly
    krieger_regime: bool
    distortion_bound: int

    @property
    def zsigmondy_distortion_bound(self) -> int:
        return self.distortion_bound

    def param_map(self, c) -> Fraction:
        return (_as_fraction(c) + self.shift_constant) / self.scale

    def identity_residual(self, x) -> Fraction:
        """target(x) - (1/t)(f(t x + u) - f(u)); zero everywhere when valid."""
        x = _as_fraction(x)
        t = self.scale
        return self.target(x) - (self.source(t * x + self.u) - self.source(self.u)) / t

    def verify(self, samples=None) -> bool:
        """Check the defining identity at degree+1 points (or given samples)."""
        if samples is None:
            samples = [Fraction(k) for k in range(self.target.degree + 1)]
        return all(self.identity_residual(x) == 0 for x in samples)


def normalize_to_x2_divisible(f: RatPolynomial, u) -> NormalizationCertificate:
    """Full pipeline: critical shift then integral rescale, with certificate.

    Degree 2 always lands on x^2 exactly (an x^2-divisible quadratic is a
    pure square term) with rational scale t = 1/u_2; such certificates are
    flagged krieger_regime since the quadratic theory runs through x^2.
    """
    g0, s = shift_to_origin(f, u)
    d = g0.degree
    if d < 2 or g0.coeffs[-1] == 0:
        raise ValueError("shifted polynomial must have degree >= 2")
    if d == 2:
        u2 = g0.coeffs[2]
        t = 1 / u2
        target = X2DivisiblePoly.from_coeffs([0, 0, 1])
        krieger = True
    else:
        target, t_int = scale_to_integer(g0)
        t = Fraction(t_int)
        krieger = False
    distortion = omega(t.numerator) + omega(t.denominator)
    return NormalizationCertificate(
        source=f,
        u=_as_fraction(u),
        shift_constant=s,
        scale=t,
        target=target,
        krieger_regime=krieger,
        distortion_bound=distortion,
    )
