"""Store factory keyed by path."""

import os
from typing import Dict, Union

from .managers import DatabaseManager, JsonReferenceStore

SQLITE_SUFFIXES = (".db", ".sqlite", ".sqlite3")

_stores: Dict[str, Union[DatabaseManager, JsonReferenceStore]] = {}


def get_store(path: str) -> Union[DatabaseManager, JsonReferenceStore]:
    """SQLite for database suffixes, JSON array otherwise; one manager per path."""
    key = os.path.abspath(path)
    if key not in _stores:
        if path.lower().endswith(SQLITE_SUFFIXES):
            _stores[key] = DatabaseManager(db_path=path)
        else:
            _stores[key] = JsonReferenceStore(path)
    return _stores[key]
