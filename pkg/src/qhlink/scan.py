"""Parallel enumeration of candidate weighted hypersurfaces.

Scans ascending weight 4-tuples with degree |w| - I, keeping those whose
ambient space is well formed and whose full degree-d linear system passes the
quasi-smoothness monomial conditions. Work is partitioned by the first weight
and merged in lexicographic order, so output is deterministic regardless of
the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import AdmissibilityError
from .monodromy import betti, divisor_of_delta, milnor_number
from .orbifold import c1_squared
from .weights import (
    WeightVector,
    is_well_formed,
    monomial_basis,
    quasi_smooth_conditions,
)


@dataclass(frozen=True)
class ConditionSummary:
    well_formed: bool
    vertex: bool
    shared_edge: bool
    pair_cover: bool


@dataclass(frozen=True)
class Candidate:
    """A surviving (weights, degree) pair with its quick invariants.

    mu and betti_link are omitted (with the reason recorded) when the
    monodromy formulas reject the pair.
    """

    weights: tuple[int, ...]
    degree: int
    index: int
    conditions: ConditionSummary
    mu: int | None
    betti_link: int | None
    c1_sq: Fraction
    skip_reason: str | None = None


def _candidates_for_first_weight(args: tuple[int, int, int]) -> list[Candidate]:
    w0, max_weight, index = args
    out: list[Candidate] = []
    for w1 in range(w0, max_weight + 1):
        for w2 in range(w1, max_weight + 1):
            for w3 in range(w2, max_weight + 1):
                ws = (w0, w1, w2, w3)
                if math.gcd(*ws) != 1:
                    continue
                d = sum(ws) - index
                if d < 1:
                    continue
                w = WeightVector(ws)
                formed, _ = is_well_formed(w)
                if not formed:
                    continue
                basis = monomial_basis(w, d).basis
                report = quasi_smooth_conditions(w, d, basis)
                if not report.all_ok:
                    continue
                conditions = ConditionSummary(
                    well_formed=True,
                    vertex=report.vertex_ok,
                    shared_edge=report.shared_edge_ok,
                    pair_cover=report.pair_cover_ok,
                )
                c1 = c1_squared(w, d)
                try:
                    mu = milnor_number(w, d)
                    b2 = betti(divisor_of_delta(w, d))
                except AdmissibilityError as exc:
                    out.append(
                        Candidate(ws, d, index, conditions, None, None, c1, str(exc))
                    )
                else:
                    out.append(Candidate(ws, d, index, conditions, mu, b2, c1))
    return out


def scan_candidates(index: int, max_weight: int, worker_count: int = 1) -> list[Candidate]:
    """Enumerate all surviving candidates in lexicographic (weights, degree) order."""
    if index < 1 or max_weight < 1:
        raise ValueError("index and max weight must be positive")
    if worker_count < 1:
        raise ValueError("worker count must be positive")
    chunks = [(w0, max_weight, index) for w0 in range(1, max_weight + 1)]
    if worker_count == 1:
        results = [_candidates_for_first_weight(chunk) for chunk in chunks]
    else:
        with ProcessPoolExecutor(max_workers=worker_count) as pool:
            results = list(pool.map(_candidates_for_first_weight, chunks))
    merged: list[Candidate] = []
    for block in results:
        merged.extend(block)
    merged.sort(key=lambda c: (c.weights, c.degree))
    return merged
