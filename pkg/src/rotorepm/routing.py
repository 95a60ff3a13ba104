"""Payload routing under the linear energy law E = C (mv + payload) L.

Two problem flavors: pairing (assign each payload to one of equally many
route segments; exactly solvable by sorting via the rearrangement
inequality) and a small sequential-delivery tour where the vehicle sheds
payload mass at each visited node (exact brute force, desk-scale only).
Because every leg cost carries the same factor C, the optimal assignment
is independent of C.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

CERT_SORT = "exact_sort"
CERT_BRUTEFORCE = "exact_bruteforce"

#: Largest instance the exhaustive solvers accept.
BRUTE_FORCE_LIMIT = 9


class ShapeError(ValueError):
    """Problem structure does not match the requested mode."""


class SizeError(ValueError):
    """Instance too large for exhaustive solving."""


@dataclass(frozen=True)
class DeliveryProblem:
    """A payload-delivery instance.

    Pairing mode uses `segments` (same count as payloads); tour mode uses
    `nodes` (2-D coordinates) visited once each from `depot` and back,
    dropping that node's payload on arrival.
    """

    mv: float
    C: float
    payloads: tuple[float, ...]
    segments: tuple[float, ...] | None = None
    nodes: tuple[tuple[float, float], ...] | None = None
    depot: tuple[float, float] = (0.0, 0.0)

    @property
    def mode(self) -> str:
        if (self.segments is None) == (self.nodes is None):
            raise ShapeError("exactly one of segments/nodes must be given")
        return "pairing" if self.segments is not None else "tour"


@dataclass(frozen=True)
class RoutePlan:
    """Solution: assignment[i] is the segment paired with payload i
    (pairing) or the i-th visited node (tour)."""

    assignment: tuple[int, ...]
    total_energy: float
    certificate: str


def validate_problem(problem: DeliveryProblem) -> list[str]:
    errs = []
    if any(m < 0 for m in problem.payloads):
        errs.append("payloads: masses must be >= 0")
    if problem.mv < 0:
        errs.append("mv: must be >= 0")
    if not problem.C > 0:
        errs.append("C: must be > 0")
    try:
        mode = problem.mode
    except ShapeError as exc:
        return errs + [str(exc)]
    if mode == "pairing":
        if any(length <= 0 for length in problem.segments):
            errs.append("segments: lengths must be > 0")
        if len(problem.payloads) != len(problem.segments):
            errs.append(
                f"pairing needs equal counts, got {len(problem.payloads)} payloads "
                f"and {len(problem.segments)} segments"
            )
    else:
        if len(problem.payloads) != len(problem.nodes):
            errs.append(
                f"tour needs one payload per node, got {len(problem.payloads)} payloads "
                f"and {len(problem.nodes)} nodes"
            )
    return errs


def _require_valid(problem: DeliveryProblem, mode: str) -> None:
    if problem.mode != mode:
        raise ShapeError(f"problem is not in {mode} mode")
    errs = validate_problem(problem)
    if errs:
        raise ShapeError("; ".join(errs))


def pairing_cost(problem: DeliveryProblem, assignment: tuple[int, ...]) -> float:
    """Objective sum_i C (mv + m_i) L[assignment[i]]."""
    return sum(
        problem.C * (problem.mv + m) * problem.segments[j]
        for m, j in zip(problem.payloads, assignment)
    )


def pair_payloads(problem: DeliveryProblem) -> RoutePlan:
    """Exact pairing by sorting: heaviest payload takes the shortest segment.

    By the rearrangement inequality the sorted pairing minimizes the sum
    of products; index-stable sorting returns the lexicographically
    smallest optimal assignment when masses or lengths tie.
    """
    _require_valid(problem, "pairing")
    payload_order = sorted(range(len(problem.payloads)), key=lambda i: (-problem.payloads[i], i))
    segment_order = sorted(range(len(problem.segments)), key=lambda j: (problem.segments[j], j))
    assignment = [0] * len(payload_order)
    for i, j in zip(payload_order, segment_order):
        assignment[i] = j
    assignment = tuple(assignment)
    return RoutePlan(assignment, pairing_cost(problem, assignment), CERT_SORT)


def pair_payloads_bruteforce(problem: DeliveryProblem) -> RoutePlan:
    """Exhaustive pairing oracle; first optimum in lexicographic order wins."""
    _require_valid(problem, "pairing")
    n = len(problem.payloads)
    if n > BRUTE_FORCE_LIMIT:
        raise SizeError(f"pairing brute force limited to {BRUTE_FORCE_LIMIT} payloads, got {n}")
    best: tuple[int, ...] | None = None
    best_cost = math.inf
    for perm in itertools.permutations(range(n)):
        cost = pairing_cost(problem, perm)
        if cost < best_cost:
            best, best_cost = perm, cost
    return RoutePlan(best, best_cost, CERT_BRUTEFORCE)


def _dist(p: tuple[float, float], q: tuple[float, float]) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def tour_cost(problem: DeliveryProblem, order: tuple[int, ...]) -> float:
    """Energy of depot -> order -> depot with payload dropped at each node."""
    carried = sum(problem.payloads)
    pos = problem.depot
    total = 0.0
    for idx in order:
        node = problem.nodes[idx]
        total += problem.C * (problem.mv + carried) * _dist(pos, node)
        carried -= problem.payloads[idx]
        pos = node
    total += problem.C * (problem.mv + carried) * _dist(pos, problem.depot)
    return total


def tour_legs(
    problem: DeliveryProblem, order: tuple[int, ...]
) -> list[tuple[int, str, float, float]]:
    """Per-leg breakdown (step, destination, carried mass, leg energy)."""
    carried = sum(problem.payloads)
    pos = problem.depot
    legs = []
    for step, idx in enumerate(order):
        node = problem.nodes[idx]
        energy = problem.C * (problem.mv + carried) * _dist(pos, node)
        legs.append((step, f"node_{idx}", problem.mv + carried, energy))
        carried -= problem.payloads[idx]
        pos = node
    energy = problem.C * (problem.mv + carried) * _dist(pos, problem.depot)
    legs.append((len(order), "depot", problem.mv + carried, energy))
    return legs


def tour_bruteforce(problem: DeliveryProblem) -> RoutePlan:
    """Exhaustive search over visit orders; exact for desk-scale instances."""
    _require_valid(problem, "tour")
    n = len(problem.nodes)
    if n > BRUTE_FORCE_LIMIT:
        raise SizeError(f"tour brute force limited to {BRUTE_FORCE_LIMIT} nodes, got {n}")
    best: tuple[int, ...] | None = None
    best_cost = math.inf
    for order in itertools.permutations(range(n)):
        cost = tour_cost(problem, order)
        if cost < best_cost:
            best, best_cost = order, cost
    return RoutePlan(best, best_cost, CERT_BRUTEFORCE)
