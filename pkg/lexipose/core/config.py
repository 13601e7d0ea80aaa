import json
import logging
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError

from core.errors import ConfigurationError, DataValidationError, InputError, describe_validation_error
from models.lexicon import FuzzyPartition
from models.model_config import PostureModelConfig
from models.transport import GroundDistance
from models.vocabulary import ARM, FOREARM, MODAL
from utils.ground import build_modal_ground_distance, load_ground
from utils.rules import rule_table_from_document

# --- Environment Setup ---
APP_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
env_filename = os.getenv("ENV_FILE", ".env")
load_dotenv(os.path.join(APP_DIR, env_filename))

PARTITION_KEYS = ("a_theta", "a_psi", "f_theta", "f_psi")
# table key -> (row lexicon name, col lexicon name, out lexicon name, default out order)
RULE_TABLE_LAYOUT = {
    "arm_table": ("a_psi", "a_theta", "arm", ARM.terms),
    "forearm_table": ("f_psi", "f_theta", "forearm", FOREARM.terms),
    "modal_table": ("arm", "forearm", "modal", MODAL.terms),
}


class Settings(BaseModel):
    config_path: Optional[str] = None
    store_path: Optional[str] = None
    ground_path: Optional[str] = None
    workers: int = 4
    log_level: str = "WARNING"


def load_settings() -> Settings:
    """Optional defaults from the environment; CLI flags take precedence."""
    workers = os.getenv("LEXIPOSE_WORKERS", "4")
    try:
        workers = max(1, int(workers))
    except ValueError:
        logging.warning(f"Ignoring invalid LEXIPOSE_WORKERS={workers!r}")
        workers = 4
    return Settings(
        config_path=os.getenv("LEXIPOSE_CONFIG") or None,
        store_path=os.getenv("LEXIPOSE_STORE") or None,
        ground_path=os.getenv("LEXIPOSE_GROUND") or None,
        workers=workers,
        log_level=os.getenv("LOG_LEVEL", "WARNING").upper(),
    )


def read_json(path: str, what: str):
    if not os.path.exists(path):
        raise InputError(f"{what} not found: {path}")
    try:
        with open(path, "r") as f:
            return json.load(f)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
        raise InputError(f"cannot parse {what} {path}: {e}") from e


def model_config_from_document(doc: dict) -> PostureModelConfig:
    """
    Build a PostureModelConfig from a config document; absent keys keep defaults.

    Recognized keys: ``partitions`` (per-angle ``{"lexicon", "modal_angles",
    "circular"}``), ``rules`` (``arm_table``/``forearm_table``/``modal_table``
    documents), ``max_dist``, ``shoulder_min``, ``elbow_min``, ``ground_file``
    and ``decision``.
    """
    if not isinstance(doc, dict):
        raise ConfigurationError("config document must be a JSON object")
    fields = {}
    try:
        for key, entry in (doc.get("partitions") or {}).items():
            if key not in PARTITION_KEYS:
                raise ConfigurationError(f"unknown partition '{key}' (expected one of {PARTITION_KEYS})")
            fields[key] = FuzzyPartition.from_mapping(
                name=key,
                terms=entry["lexicon"],
                modal_angles=entry["modal_angles"],
                circular=bool(entry.get("circular", key == "a_psi")),
            )
        for key, table_doc in (doc.get("rules") or {}).items():
            if key not in RULE_TABLE_LAYOUT:
                raise ConfigurationError(f"unknown rule table '{key}' (expected one of {tuple(RULE_TABLE_LAYOUT)})")
            row_name, col_name, out_name, out_terms = RULE_TABLE_LAYOUT[key]
            fields[key] = rule_table_from_document(table_doc, names=(row_name, col_name, out_name), out_terms=out_terms)
        for key in ("max_dist", "shoulder_min", "elbow_min", "ground_file", "decision"):
            if key in doc:
                fields[key] = doc[key]
        return PostureModelConfig(**fields)
    except ValidationError as e:
        raise ConfigurationError(f"invalid configuration: {describe_validation_error(e)}") from e
    except (DataValidationError, KeyError, TypeError, AttributeError, ValueError) as e:
        raise ConfigurationError(f"invalid configuration: {e}") from e


def load_model_config(path: Optional[str] = None) -> PostureModelConfig:
    if not path:
        return PostureModelConfig()
    config = model_config_from_document(read_json(path, "config file"))
    logging.info(f"Loaded model configuration from {path} (strategy={config.decision.strategy})")
    return config


def resolve_ground(config: PostureModelConfig, override_path: Optional[str] = None) -> GroundDistance:
    """``--ground`` beats the config's ground_file, which beats the generator."""
    path = override_path or config.ground_file
    if path:
        return load_ground(path, expected=config.modal_lexicon)
    return build_modal_ground_distance(config.max_dist, config.shoulder_min, config.elbow_min)
