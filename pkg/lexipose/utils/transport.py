import logging
import math

import numpy as np
import ot

from core.errors import DataValidationError
from models.lexicon import MassVector, require_same_lexicon
from models.transport import GroundDistance, TransportPlan

MARGINAL_TOLERANCE = 1e-9


def _check_ground(a: MassVector, b: MassVector, ground: GroundDistance):
    lexicon = require_same_lexicon(a, b)
    if ground.lexicon != lexicon:
        raise DataValidationError(
            f"lexicon mismatch: mass vectors on '{lexicon.name}', ground on '{ground.lexicon.name}'"
        )
    return lexicon


def transport_plan(a: MassVector, b: MassVector, ground: GroundDistance) -> TransportPlan:
    """
    Solve the balanced transportation problem moving ``a`` onto ``b``.

    Terms without mass are removed from each side before the exact
    network-simplex solve, so the solver only sees the positive supports.
    """
    lexicon = _check_ground(a, b, ground)

    if a.masses == b.masses:
        diagonal = tuple((i, i, m) for i, m in enumerate(a.masses) if m > 0.0)
        return TransportPlan(lexicon=lexicon, flows=diagonal, total_cost=0.0)

    source_mass = np.asarray(a.masses, dtype=np.float64)
    target_mass = np.asarray(b.masses, dtype=np.float64)
    src = np.flatnonzero(source_mass > 0.0)
    dst = np.flatnonzero(target_mass > 0.0)
    cost = np.ascontiguousarray(ground.as_array()[np.ix_(src, dst)])

    plan = ot.emd(source_mass[src], target_mass[dst], cost)

    row_gap = np.max(np.abs(plan.sum(axis=1) - source_mass[src]))
    col_gap = np.max(np.abs(plan.sum(axis=0) - target_mass[dst]))
    if max(row_gap, col_gap) > MARGINAL_TOLERANCE:
        logging.warning(f"Transport plan marginals off by {max(row_gap, col_gap):.3e} on '{lexicon.name}'")

    flows = []
    costs = []
    for i, j in zip(*np.nonzero(plan)):
        mass = float(plan[i, j])
        flows.append((int(src[i]), int(dst[j]), mass))
        costs.append(mass * float(cost[i, j]))

    return TransportPlan(lexicon=lexicon, flows=tuple(flows), total_cost=math.fsum(costs))


def transport_distance(a: MassVector, b: MassVector, ground: GroundDistance) -> float:
    """Optimal transport cost between two unit mass vectors."""
    return transport_plan(a, b, ground).total_cost
