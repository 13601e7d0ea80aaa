import json
import logging
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Union

from pydantic import ValidationError

from core.errors import (
    DataValidationError,
    FrameError,
    FrameParseError,
    InputError,
    LexiposeError,
    describe_validation_error,
)
from core.schemas import FrameDocument, RunRecord, RunReport
from models.decision import RATIONALE_TAGS, DecisionOutcome, StrategyName
from models.lexicon import MassVector
from models.model_config import PostureModelConfig
from models.posture import PostureMeasurement, Skeleton
from services.posture_service import measure_posture_detailed


@dataclass
class RawFrame:
    frame: int
    line: int
    skeleton: Optional[Skeleton] = None
    error: Optional[LexiposeError] = None


@dataclass
class FrameResult:
    frame: int
    measurement: Optional[PostureMeasurement] = None
    outcome: Optional[DecisionOutcome] = None
    error: Optional[LexiposeError] = None


@dataclass
class FrameBatch:
    results: List[FrameResult] = field(default_factory=list)
    skipped: List[int] = field(default_factory=list)


def parse_frame_line(line: Union[str, bytes], line_no: int) -> RawFrame:
    """A JSON-lines skeleton frame; problems are kept on the frame, not raised."""
    frame_id = line_no
    try:
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        doc = json.loads(line)
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        return RawFrame(frame=frame_id, line=line_no, error=FrameParseError(frame_id, f"malformed frame: {e}"))
    if isinstance(doc, dict) and isinstance(doc.get("frame"), int):
        frame_id = doc["frame"]
    try:
        parsed = FrameDocument.model_validate(doc)
    except ValidationError as e:
        return RawFrame(frame=frame_id, line=line_no, error=FrameParseError(frame_id, describe_validation_error(e)))
    return RawFrame(frame=frame_id, line=line_no, skeleton=Skeleton(frame=frame_id, joints=parsed.joints))


def read_frames(path: str) -> List[RawFrame]:
    if not os.path.exists(path):
        raise InputError(f"skeleton file not found: {path}")
    frames = []
    try:
        with open(path, "rb") as f:
            for line_no, line in enumerate(f):
                if line.strip():
                    frames.append(parse_frame_line(line, line_no))
    except OSError as e:
        raise InputError(f"cannot read skeleton file {path}: {e}") from e
    logging.info(f"Read {len(frames)} frames from {path}")
    return frames


class FrameProcessor:
    """
    Measures (and optionally decides on) frames independently.

    Frames run on a thread pool; results come back in input order, and the
    first failing frame in that order is the one reported, so the observable
    behavior equals a sequential run.
    """

    def __init__(self, config: PostureModelConfig, workers: int = 4, skip_bad_frames: bool = False):
        self.config = config
        self.workers = max(1, workers)
        self.skip_bad_frames = skip_bad_frames

    def _process(self, raw: RawFrame, decide_fn: Optional[Callable[[MassVector], DecisionOutcome]]) -> FrameResult:
        if raw.error is not None:
            return FrameResult(frame=raw.frame, error=raw.error)
        try:
            measurement = measure_posture_detailed(raw.skeleton, self.config)
            outcome = decide_fn(measurement.modal) if decide_fn is not None else None
        except FrameError as e:
            return FrameResult(frame=raw.frame, error=e)
        except DataValidationError as e:
            return FrameResult(frame=raw.frame, error=FrameError(raw.frame, str(e)))
        except LexiposeError as e:
            return FrameResult(frame=raw.frame, error=e)
        return FrameResult(frame=raw.frame, measurement=measurement, outcome=outcome)

    def run(
        self,
        frames: Sequence[RawFrame],
        decide_fn: Optional[Callable[[MassVector], DecisionOutcome]] = None,
    ) -> FrameBatch:
        if self.workers == 1 or len(frames) <= 1:
            results = [self._process(raw, decide_fn) for raw in frames]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(lambda raw: self._process(raw, decide_fn), frames))

        batch = FrameBatch()
        for result in results:
            if result.error is None:
                batch.results.append(result)
                continue
            if not self.skip_bad_frames or not isinstance(result.error, (FrameError, FrameParseError)):
                raise result.error
            logging.warning(f"Skipping bad frame {result.frame}: {result.error}")
            batch.skipped.append(result.frame)
        return batch


def build_run_report(strategy: StrategyName, batch: FrameBatch, top_k: int = 3) -> RunReport:
    records = [
        RunRecord(
            frame=result.frame,
            angles=result.measurement.angles,
            top_terms=result.measurement.modal.top(top_k),
            outcome=result.outcome,
        )
        for result in batch.results
    ]
    counts = Counter(record.outcome.rationale for record in records)
    summary = {tag: counts.get(tag, 0) for tag in RATIONALE_TAGS}
    return RunReport(strategy=strategy, records=records, summary=summary, skipped=list(batch.skipped))
