"""Sweep a parameter grid and look closely at the primitive-free indices.

Every index n in a Zsigmondy window satisfies an exact divisibility:
the numerator N_n divides the product of the N_(n/p) over primes p | n.
Run: python3 demos/window_survey.py
"""
from fractions import Fraction

from zsig import ScanConfig, X2DivisiblePoly, iterate, run_scan
from zsig.arith import distinct_prime_factors

cfg = ScanConfig(
    poly=X2DivisiblePoly.parse("2*x^3+x^2"),
    num_bound=6,
    den_bound=4,
    horizon=8,
)
summary = run_scan(cfg)
print(f"scanned {len(summary.rows)} parameters of {cfg.poly}, horizon {cfg.horizon}")
print(f"verdicts: {summary.verdict_counts}")
print(f"largest window seen: {summary.empirical_max_zset_size} "
      f"(an observation about this grid, not a certified uniform bound)\n")

for row in summary.rows:
    if not row.zset:
        continue
    c = Fraction(row.c_num, row.c_den)
    orbit = iterate(cfg.poly, c, horizon=cfg.horizon)
    nums = [abs(e.num) for e in orbit.entries]
    pretty = ";".join(map(str, row.zset))
    print(f"c = {c}: {row.verdict}, window {{{pretty}}}")
    for n in row.zset:
        quotients = [n // p for p in distinct_prime_factors(n)]
        product = 1
        for q in quotients:
            product *= nums[q - 1]
        assert product % nums[n - 1] == 0
        factors = " * ".join(f"|N_{q}|" for q in quotients) or "1 (empty product)"
        print(f"    |N_{n}| = {nums[n - 1]} divides {factors} = {product}")
