"""Reference store backends: a JSON array file or a SQLite database."""

import json
import logging
import os
from typing import List

from sqlalchemy import create_engine, text
from sqlalchemy.exc import SQLAlchemyError
from sqlalchemy.orm import sessionmaker

from core.errors import InputError
from .models import Base, ReferencePostureRecord


class JsonReferenceStore:
    """Reference store kept as a JSON array of reference documents"""

    def __init__(self, path: str):
        self.path = path

    def load(self) -> List[dict]:
        if not os.path.exists(self.path):
            return []
        try:
            with open(self.path, "r") as f:
                content = f.read()
            docs = json.loads(content) if content.strip() else []
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            raise InputError(f"cannot parse reference store {self.path}: {e}") from e
        if not isinstance(docs, list):
            raise InputError(f"reference store {self.path} must hold a JSON array")
        return docs

    def save(self, docs: List[dict]):
        store_dir = os.path.dirname(os.path.abspath(self.path))
        os.makedirs(store_dir, exist_ok=True)
        tmp_path = f"{self.path}.tmp"
        try:
            with open(tmp_path, "w") as f:
                json.dump(docs, f, indent=2)
            os.replace(tmp_path, self.path)
        except OSError as e:
            raise InputError(f"cannot write reference store {self.path}: {e}") from e

    def upsert(self, doc: dict) -> bool:
        """Insert or replace by name; True when an entry was replaced."""
        docs = self.load()
        replaced = False
        for i, existing in enumerate(docs):
            if isinstance(existing, dict) and existing.get("name") == doc["name"]:
                docs[i] = doc
                replaced = True
                break
        if not replaced:
            docs.append(doc)
        self.save(docs)
        return replaced


class DatabaseManager:
    """Reference store kept in SQLite through SQLAlchemy"""

    def __init__(self, db_path: str):
        self.db_path = db_path
        db_dir = os.path.dirname(os.path.abspath(self.db_path))
        os.makedirs(db_dir, exist_ok=True)
        logging.info(f"Using reference database: {self.db_path}")
        try:
            self.engine = create_engine(f'sqlite:///{db_path}', echo=False)
            with self.engine.connect() as conn:
                conn.execute(text("PRAGMA journal_mode=WAL"))
                conn.commit()
            Base.metadata.create_all(self.engine)
        except SQLAlchemyError as e:
            raise InputError(f"cannot open reference database {db_path}: {e}") from e
        self.SessionLocal = sessionmaker(bind=self.engine)

    def load(self) -> List[dict]:
        try:
            with self.SessionLocal() as session:
                records = session.query(ReferencePostureRecord).order_by(ReferencePostureRecord.id).all()
                return [r.to_document() for r in records]
        except SQLAlchemyError as e:
            raise InputError(f"cannot read reference database {self.db_path}: {e}") from e

    def save(self, docs: List[dict]):
        try:
            with self.SessionLocal() as session:
                session.query(ReferencePostureRecord).delete()
                for doc in docs:
                    session.add(ReferencePostureRecord(**doc))
                session.commit()
        except SQLAlchemyError as e:
            raise InputError(f"cannot write reference database {self.db_path}: {e}") from e

    def upsert(self, doc: dict) -> bool:
        try:
            with self.SessionLocal() as session:
                record = session.query(ReferencePostureRecord).filter_by(name=doc["name"]).first()
                replaced = record is not None
                if record is None:
                    session.add(ReferencePostureRecord(**doc))
                else:
                    for key, value in doc.items():
                        setattr(record, key, value)
                session.commit()
                return replaced
        except SQLAlchemyError as e:
            raise InputError(f"cannot write reference database {self.db_path}: {e}") from e
