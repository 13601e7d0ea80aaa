from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from core.errors import ConfigurationError, DataValidationError, describe_validation_error
from models.lexicon import Lexicon, MassVector, make_mass_vector
from models.posture import RuleTable
from models.vocabulary import A_PSI, A_THETA, ARM, F_PSI, F_THETA, FOREARM, MODAL, modal_term


def default_arm_table() -> RuleTable:
    """a_psi x a_theta -> arm: vertical arms ignore the azimuth."""
    cells = {}
    for psi in A_PSI.terms:
        for theta in A_THETA.terms:
            cells[(psi, theta)] = psi if theta == "horizon" else theta
    return RuleTable(row_lexicon=A_PSI, col_lexicon=A_THETA, out_lexicon=ARM, cells=cells)


def default_forearm_table() -> RuleTable:
    """f_psi x f_theta -> forearm: only a half-bent elbow keeps its orientation."""
    cells = {}
    for psi in F_PSI.terms:
        for theta in F_THETA.terms:
            if theta == "middle":
                cells[(psi, theta)] = "vmiddle" if psi == "vertical" else "hmiddle"
            else:
                cells[(psi, theta)] = theta
    return RuleTable(row_lexicon=F_PSI, col_lexicon=F_THETA, out_lexicon=FOREARM, cells=cells)


def default_modal_table() -> RuleTable:
    """arm x forearm -> modal posture."""
    cells = {(arm, forearm): modal_term(arm, forearm) for arm in ARM.terms for forearm in FOREARM.terms}
    return RuleTable(row_lexicon=ARM, col_lexicon=FOREARM, out_lexicon=MODAL, cells=cells)


def evaluate_rule_table(row: MassVector, col: MassVector, table: RuleTable) -> MassVector:
    """Push the product mass row x col through the table's cell map."""
    if row.lexicon != table.row_lexicon:
        raise DataValidationError(
            f"lexicon mismatch: row input on '{row.lexicon.name}', table rows on '{table.row_lexicon.name}'"
        )
    if col.lexicon != table.col_lexicon:
        raise DataValidationError(
            f"lexicon mismatch: col input on '{col.lexicon.name}', table cols on '{table.col_lexicon.name}'"
        )
    joint = np.outer(row.masses, col.masses)
    out = np.zeros(table.out_lexicon.size)
    np.add.at(out, table.index_matrix(), joint)
    return make_mass_vector(table.out_lexicon, out)


def rule_table_from_document(
    doc: dict,
    names: Tuple[str, str, str] = ("rows", "cols", "out"),
    out_terms: Optional[Sequence[str]] = None,
) -> RuleTable:
    """
    Parse ``{"rows": [...], "cols": [...], "cells": {"row,col": "out"}}``.

    The out lexicon is taken from ``doc["out"]``, then ``out_terms``, then
    the order in which cell values first appear.
    """
    try:
        rows = tuple(doc["rows"])
        cols = tuple(doc["cols"])
        raw_cells: Dict[str, str] = doc["cells"]
    except (KeyError, TypeError) as e:
        raise ConfigurationError(f"rule table needs 'rows', 'cols' and 'cells': {e}") from e
    if not isinstance(raw_cells, dict):
        raise ConfigurationError("rule table 'cells' must map 'row,col' keys to output terms")

    cells = {}
    for key, out in raw_cells.items():
        parts = [p.strip() for p in key.split(",")]
        if len(parts) != 2:
            raise ConfigurationError(f"rule table cell key '{key}' must be 'row,col'")
        cells[(parts[0], parts[1])] = out

    appearance = list(dict.fromkeys(cells[(r, c)] for r in rows for c in cols if (r, c) in cells))
    out_order = doc.get("out")
    if not out_order:
        out_order = out_terms if out_terms and set(appearance) <= set(out_terms) else appearance

    try:
        return RuleTable(
            row_lexicon=Lexicon(name=names[0], terms=rows),
            col_lexicon=Lexicon(name=names[1], terms=cols),
            out_lexicon=Lexicon(name=names[2], terms=tuple(out_order)),
            cells=cells,
        )
    except ValidationError as e:
        raise ConfigurationError(f"invalid rule table: {describe_validation_error(e)}") from e


def rule_table_to_document(table: RuleTable) -> dict:
    return {
        "rows": list(table.row_lexicon.terms),
        "cols": list(table.col_lexicon.terms),
        "out": list(table.out_lexicon.terms),
        "cells": {f"{r},{c}": out for (r, c), out in table.cells.items()},
    }
