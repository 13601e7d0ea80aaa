"""ORM models for SQLite reference stores."""

from datetime import datetime, timezone

from sqlalchemy import Column, DateTime, Float, Integer, JSON, String
from sqlalchemy.orm import declarative_base

Base = declarative_base()


class ReferencePostureRecord(Base):
    """Learned reference posture and its action binding"""
    __tablename__ = 'reference_postures'

    id = Column(Integer, primary_key=True)
    name = Column(String(100), nullable=False, unique=True, index=True)
    masses = Column(JSON, nullable=False)  # dense, one entry per modal term
    tolerance = Column(Float, nullable=False, default=0.0)
    action_class = Column(String(20), nullable=False, default="classical")  # classical or emergency
    action_id = Column(String(100), nullable=False)

    # Timestamps
    created_at = Column(DateTime, default=lambda: datetime.now(timezone.utc))
    updated_at = Column(DateTime, default=lambda: datetime.now(timezone.utc), onupdate=lambda: datetime.now(timezone.utc))

    def to_document(self) -> dict:
        return {
            "name": self.name,
            "masses": list(self.masses),
            "tolerance": self.tolerance,
            "action_class": self.action_class,
            "action_id": self.action_id,
        }
