"""Deterministic parameter scans over rational grids.

A scan walks every reduced fraction a/b with |a| <= num_bound and
1 <= b <= den_bound in a fixed order (b ascending, then a ascending),
classifies each orbit, and computes the Zsigmondy window for the
parameters with infinite orbit.  Output is byte-identical across reruns
and worker counts: rows keep grid order regardless of parallelism and
wall-clock time never enters the files.
"""
from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .orbit import Verdict, decide_membership, iterate
from .poly import X2DivisiblePoly
from .zsigmondy import zsigmondy_set

CSV_HEADER = [
    "c_num", "c_den", "verdict", "witness", "horizon",
    "zset", "zset_size", "rin_failures", "capped_at",
]

_CONFIG_KEYS = {
    "poly", "coeffs", "num_bound", "den_bound", "horizon",
    "bit_cap", "parallelism", "output", "format",
}


@dataclass(frozen=True)
class ScanConfig:
    poly: X2DivisiblePoly
    num_bound: int
    den_bound: int
    horizon: int = 8
    bit_cap: int = 2_000_000
    parallelism: int = 1
    output: Optional[str] = None
    format: str = "csv"

    def __post_init__(self):
        if self.num_bound < 0 or self.den_bound < 1:
            raise ValueError("need num_bound >= 0 and den_bound >= 1")
        if self.horizon < 1:
            raise ValueError("horizon must be at least 1")
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.format!r}")

    @staticmethod
    def from_file(path: str) -> "ScanConfig":
        """key = value lines; # starts a comment; poly or coeffs required."""
        raw: dict[str, str] = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                body = line.split("#", 1)[0].strip()
                if not body:
                    continue
                if "=" not in body:
                    raise ValueError(f"{path}:{lineno}: expected key = value")
                key, val = (s.strip() for s in body.split("=", 1))
                if key not in _CONFIG_KEYS:
                    raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
                if key in raw:
                    raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
                raw[key] = val
        if "poly" in raw and "coeffs" in raw:
            raise ValueError("give poly or coeffs, not both")
        if "poly" in raw:
            g = X2DivisiblePoly.parse(raw["poly"])
        elif "coeffs" in raw:
            g = X2DivisiblePoly.from_coeffs(
                [Fraction(s.strip()) for s in raw["coeffs"].split(",")]
            )
        else:
            raise ValueError("config needs poly or coeffs")
        for key in ("num_bound", "den_bound"):
            if key not in raw:
                raise ValueError(f"config needs {key}")
        kwargs = {
            "poly": g,
            "num_bound": int(raw["num_bound"]),
            "den_bound": int(raw["den_bound"]),
        }
        for key, conv in (("horizon", int), ("bit_cap", int), ("parallelism", int),
                          ("output", str), ("format", str)):
            if key in raw:
                kwargs[key] = conv(raw[key])
        return ScanConfig(**kwargs)


def grid(config: ScanConfig) -> list[Fraction]:
    """Reduced fractions a/b, b = 1..den_bound then a = -A..A, each value once.

    num_bound 0 is the empty scan (c = 0 appears only alongside nonzero
    numerators).
    """
    if config.num_bound == 0:
        return []
    out = []
    for b in range(1, config.den_bound + 1):
        for a in range(-config.num_bound, config.num_bound + 1):
            if gcd(abs(a), b) == 1:
                out.append(Fraction(a, b))
    return out


@dataclass(frozen=True)
class ScanRow:
    c_num: int
    c_den: int
    verdict: str
    witness: str
    horizon: int
    zset: Optional[tuple[int, ...]]
    rin_failures: Optional[tuple[int, ...]]
    capped_at: Optional[int]

    @property
    def zset_size(self) -> Optional[int]:
        return None if self.zset is None else len(self.zset)

    def csv_cells(self) -> list[str]:
        blank = lambda v: "" if v is None else str(v)
        # index lists are ";"-joined so the cells stay comma-free
        return [
            str(self.c_num), str(self.c_den), self.verdict, self.witness,
            str(self.horizon),
            "" if self.zset is None else ";".join(map(str, self.zset)),
            blank(self.zset_size),
            "" if self.rin_failures is None else ";".join(map(str, self.rin_failures)),
            blank(self.capped_at),
        ]

    def json_obj(self) -> dict:
        return {
            "c_num": self.c_num,
            "c_den": self.c_den,
            "verdict": self.verdict,
            "witness": self.witness,
            "horizon": self.horizon,
            "zset": None if self.zset is None else list(self.zset),
            "zset_size": self.zset_size,
            "rin_failures": None if self.rin_failures is None else list(self.rin_failures),
            "capped_at": self.capped_at,
        }


def _scan_one(payload: tuple) -> ScanRow:
    """Classify one parameter; module level so process pools can pickle it."""
    coeffs, c_num, c_den, horizon, bit_cap = payload
    g = X2DivisiblePoly(coeffs)
    c = Fraction(c_num, c_den)
    decision = decide_membership(g, c)
    if decision.verdict is Verdict.FINITE_ORBIT:
        return ScanRow(c_num, c_den, decision.verdict.value, decision.witness_text(),
                       horizon, None, None, None)
    orbit = iterate(g, c, horizon, bit_cap)
    report = zsigmondy_set(orbit)
    return ScanRow(c_num, c_den, decision.verdict.value, decision.witness_text(),
                   horizon, report.zset, report.rin_failures, orbit.capped_at)


@dataclass(frozen=True)
class ScanSummary:
    config: ScanConfig
    rows: tuple[ScanRow, ...]
    verdict_counts: dict
    empirical_max_zset_size: int
    runtime_seconds: float


def run_scan(config: ScanConfig) -> ScanSummary:
    """Run the full grid; ZSIG_THREADS overrides config.parallelism."""
    workers = config.parallelism
    env = os.environ.get("ZSIG_THREADS")
    if env is not None:
        workers = int(env)
        if workers < 1:
            raise ValueError("ZSIG_THREADS must be a positive integer")
    started = time.perf_counter()
    payloads = [
        (config.poly.coeffs, c.numerator, c.denominator, config.horizon, config.bit_cap)
        for c in grid(config)
    ]
    if workers > 1 and len(payloads) > 1:
        chunk = max(1, len(payloads) // (8 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(_scan_one, payloads, chunksize=chunk))
    else:
        rows = tuple(_scan_one(p) for p in payloads)
    counts: dict[str, int] = {}
    for row in rows:
        counts[row.verdict] = counts.get(row.verdict, 0) + 1
    max_z = max((row.zset_size for row in rows if row.zset_size is not None), default=0)
    return ScanSummary(
        config=config,
        rows=rows,
        verdict_counts=counts,
        empirical_max_zset_size=max_z,
        runtime_seconds=time.perf_counter() - started,
    )


def csv_text(summary: ScanSummary) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in summary.rows:
        writer.writerow(row.csv_cells())
    return buf.getvalue()


def json_text(summary: ScanSummary) -> str:
    cfg = summary.config
    obj = {
        "config": {
            "poly": str(cfg.poly),
            "coeffs": list(cfg.poly.coeffs),
            "num_bound": cfg.num_bound,
            "den_bound": cfg.den_bound,
            "horizon": cfg.horizon,
            "bit_cap": cfg.bit_cap,
        },
        "rows": [row.json_obj() for row in summary.rows],
        "verdict_counts": summary.verdict_counts,
        "empirical_max_zset_size": summary.empirical_max_zset_size,
    }
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_output(summary: ScanSummary, path: Optional[str] = None) -> str:
    """Render per config.format and write to path (or config.output); returns text."""
    text = csv_text(summary) if summary.config.format == "csv" else json_text(summary)
    dest = path if path is not None else summary.config.output
    if dest is not None:
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
