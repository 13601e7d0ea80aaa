"""Database package exports."""

from .factory import get_store
from .managers import DatabaseManager, JsonReferenceStore
from .models import Base, ReferencePostureRecord

__all__ = [
    "Base",
    "ReferencePostureRecord",
    "DatabaseManager",
    "JsonReferenceStore",
    "get_store",
]
