"""Seeded random search over small line arrangements.

Every arrangement that passes the gates (rank 3, no linear syzygy, a minimal
quadratic one) must land in one of the three canonical families; a
``TheoremViolation`` record means the classifier or the algebra is broken.
"""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from multiprocessing import Pool
from typing import Iterable, Iterator

from .algebra import normalize_projective, rational_str
from .analysis import analyze
from .arrangement import Arrangement, arrangement_from_json
from .classify3 import Tag


class SearchConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    n_min: int = 4
    n_max: int = 6
    bound: int = 2
    count: int = 100
    seed: int = 1
    require_essential: bool = True

    def __post_init__(self):
        if self.n_min < 3:
            raise SearchConfigError("n-min must be at least 3")
        if self.n_max < self.n_min:
            raise SearchConfigError("n-max must be >= n-min")
        if self.bound < 1:
            raise SearchConfigError("bound must be at least 1")
        if self.count < 1:
            raise SearchConfigError("count must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise SearchConfigError("seed must fit in 64 bits")
        available = len(projective_points(self.bound))
        if self.n_max > available:
            raise SearchConfigError(f"only {available} distinct lines have coefficients in [-{self.bound}, {self.bound}]")


def projective_points(bound: int) -> set[tuple]:
    rng = range(-bound, bound + 1)
    return {normalize_projective(v) for v in cartesian(rng, rng, rng) if any(v)}


def random_arrangement(rng: random.Random, n: int, bound: int) -> Arrangement:
    """n pairwise non-proportional nonzero integer forms with entries in [-bound, bound]."""
    forms: list[tuple[int, int, int]] = []
    keys: set[tuple] = set()
    while len(forms) < n:
        v = tuple(rng.randint(-bound, bound) for _ in range(3))
        if not any(v):
            continue
        key = normalize_projective(v)
        if key in keys:
            continue
        keys.add(key)
        forms.append(v)
    return Arrangement(tuple(forms), ("x", "y", "z"))


def generate(config: SearchConfig) -> Iterator[Arrangement]:
    rng = random.Random(config.seed)
    for _ in range(config.count):
        while True:
            a = random_arrangement(rng, rng.randint(config.n_min, config.n_max), config.bound)
            if not config.require_essential or a.is_essential():
                break
        yield a


def make_record(a: Arrangement, timing: bool = False) -> dict:
    t0 = time.perf_counter()
    res = analyze(a, with_decomposition=False)
    cls = res.classification
    checks = res.checks
    q = res.quadratic
    rec = {
        "forms": [[rational_str(c) for c in f] for f in a.forms],
        "n": a.n,
        "rank": res.rank,
        "dims": list(q.dims) if q else None,
        "tag": cls.tag.value if cls else None,
        "t": [rational_str(t) for t in cls.params] if cls else [],
        "transform": cls.transform.to_json() if cls and cls.transform else None,
        "membership_pass": checks.membership_pass if checks else None,
        "corollary_pass": checks.corollary_pass if checks else None,
        "no_zero_ideal": checks.no_zero_ideal if checks else None,
        "coprime_representative": checks.coprime if checks else None,
        "syzygy_ok": res.syzygy_ok,
        "cubic_exists": res.cubic.cubic_exists if res.cubic else None,
    }
    if timing:
        rec["seconds"] = round(time.perf_counter() - t0, 6)
    return rec


def _record_worker(args: tuple) -> dict:
    forms, timing = args
    return make_record(Arrangement(forms, ("x", "y", "z")), timing)


@dataclass
class SearchSummary:
    total: int = 0
    tags: Counter = field(default_factory=Counter)
    gated: int = 0
    membership_failures: int = 0
    zero_ideal_records: int = 0
    syzygy_failures: int = 0
    cubic_failures: int = 0

    @property
    def theorem_violations(self) -> int:
        return self.tags.get(Tag.THEOREM_VIOLATION.value, 0)

    @property
    def ok(self) -> bool:
        return not (
            self.theorem_violations
            or self.membership_failures
            or self.zero_ideal_records
            or self.syzygy_failures
            or self.cubic_failures
        )

    def add(self, rec: dict) -> None:
        self.total += 1
        self.tags[rec["tag"]] += 1
        if rec["tag"] in {t.value for t in (Tag.TYPE1, Tag.TYPE2, Tag.TYPE3, Tag.THEOREM_VIOLATION)}:
            self.gated += 1
            if rec["membership_pass"] is not True:
                self.membership_failures += 1
            if rec["no_zero_ideal"] is not True:
                self.zero_ideal_records += 1
            if rec["syzygy_ok"] is not True:
                self.syzygy_failures += 1
            if rec["cubic_exists"] is not True:
                self.cubic_failures += 1
        else:
            # membership and syzygy checks apply to any quadratic derivation, gated or not
            self.membership_failures += rec["membership_pass"] is False
            self.syzygy_failures += rec["syzygy_ok"] is False

    def table(self) -> str:
        order = [t.value for t in Tag]
        width = max(len(t) for t in order) + 2
        lines = [f"{'outcome':<{width}}count", "-" * (width + 6)]
        for t in order:
            lines.append(f"{t:<{width}}{self.tags.get(t, 0)}")
        lines.append("-" * (width + 6))
        lines.append(f"{'total':<{width}}{self.total}")
        lines.append(f"{'gated':<{width}}{self.gated}")
        lines.append(f"TheoremViolation count: {self.theorem_violations}")
        lines.append(f"membership failures: {self.membership_failures}")
        lines.append(f"records with a zero ideal: {self.zero_ideal_records}")
        lines.append(f"syzygy failures: {self.syzygy_failures}")
        lines.append(f"family records without a cubic: {self.cubic_failures}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "tags": dict(sorted(self.tags.items())),
            "gated": self.gated,
            "theorem_violations": self.theorem_violations,
            "membership_failures": self.membership_failures,
            "zero_ideal_records": self.zero_ideal_records,
            "syzygy_failures": self.syzygy_failures,
            "cubic_failures": self.cubic_failures,
        }


def run_search(config: SearchConfig, jobs: int = 1, timing: bool = False) -> Iterator[dict]:
    """Yield one record per sample, in sample order regardless of ``jobs``."""
    arrangements = generate(config)
    if jobs <= 1:
        for a in arrangements:
            yield make_record(a, timing)
        return
    tasks = ((a.forms, timing) for a in arrangements)
    with Pool(jobs) as pool:
        yield from pool.imap(_record_worker, tasks, chunksize=8)


def write_catalog(records: Iterable[dict], path: str) -> SearchSummary:
    summary = SearchSummary()
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
            summary.add(rec)
    return summary


def read_catalog(path: str) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def record_arrangement(rec: dict) -> Arrangement:
    return arrangement_from_json({"vars": ["x", "y", "z"], "forms": rec["forms"]})


def record_params(rec: dict) -> tuple[Fraction, ...]:
    return tuple(Fraction(t) for t in rec["t"])
