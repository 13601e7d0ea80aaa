import json
import logging
from typing import Callable, Dict, List, TextIO

from core.config import Settings, load_model_config, resolve_ground
from core.engine import FrameProcessor, build_run_report, read_frames
from core.errors import ConfigurationError, DataValidationError
from core.schemas import DistanceTable, LfsLine, RunReport
from models.decision import DecisionConfig
from models.model_config import PostureModelConfig
from models.posture import ReferencePosture
from services.decision_service import decide, ensure_tolerances_valid, pairwise_distances
from services.posture_service import learn_reference
from services.reference_service import ReferenceService


def _config(args, settings: Settings) -> PostureModelConfig:
    return load_model_config(args.config or settings.config_path)


def _decision_config(args, config: PostureModelConfig) -> DecisionConfig:
    if args.strategy:
        return config.decision.model_copy(update={"strategy": args.strategy})
    return config.decision


def _processor(args, settings: Settings, config: PostureModelConfig) -> FrameProcessor:
    workers = args.workers if args.workers else settings.workers
    return FrameProcessor(config, workers=workers, skip_bad_frames=args.skip_bad_frames)


def _reference_service(args, settings: Settings, config: PostureModelConfig) -> ReferenceService:
    store_path = args.store or settings.store_path
    if not store_path:
        raise ConfigurationError("no reference store given (use --store or LEXIPOSE_STORE)")
    return ReferenceService(store_path, config.modal_lexicon)


def cmd_fuzzify(args, settings: Settings, out: TextIO) -> int:
    config = _config(args, settings)
    batch = _processor(args, settings, config).run(read_frames(args.input))
    for result in batch.results:
        m = result.measurement
        line = LfsLine(
            frame=result.frame,
            angles=m.angles,
            arm=m.arm.as_dict(nonzero_only=True),
            forearm=m.forearm.as_dict(nonzero_only=True),
            lfs=m.modal.as_dict(nonzero_only=True),
        )
        out.write(line.model_dump_json() + "\n")
    return 0


def cmd_learn(args, settings: Settings, out: TextIO) -> int:
    if args.tolerance < 0:
        raise DataValidationError(f"tolerance must be >= 0 (got {args.tolerance})")
    config = _config(args, settings)
    service = _reference_service(args, settings, config)
    service.load_references()  # surface store parse failures before measuring

    batch = _processor(args, settings, config).run(read_frames(args.input))
    samples = [result.measurement.modal for result in batch.results]
    if not samples:
        raise DataValidationError(f"no usable frames in {args.input}")

    ref = learn_reference(
        samples,
        name=args.name,
        tolerance=args.tolerance,
        action_class=args.action_class,
        action_id=args.action_id,
    )
    replaced = service.upsert_reference(ref)
    summary = {
        "name": ref.name,
        "samples": len(samples),
        "replaced": replaced,
        "top_terms": ref.lfs.top(3),
    }
    if args.json:
        out.write(json.dumps(summary) + "\n")
    else:
        verb = "Replaced" if replaced else "Added"
        out.write(f"{verb} reference '{ref.name}' from {len(samples)} frames: {_format_terms(ref.lfs.top(3))}\n")
    return 0


def cmd_decide(args, settings: Settings, out: TextIO) -> int:
    config = _config(args, settings)
    decision_config = _decision_config(args, config)
    ground = resolve_ground(config, args.ground or settings.ground_path)
    refs = _reference_service(args, settings, config).load_references()
    if not refs:
        raise DataValidationError("reference store is empty")
    ensure_tolerances_valid(refs, ground, decision_config)

    batch = _processor(args, settings, config).run(
        read_frames(args.input),
        decide_fn=lambda modal: decide(modal, refs, ground, decision_config),
    )
    report = build_run_report(decision_config.strategy, batch, top_k=args.top_k)
    if args.json:
        out.write(report.model_dump_json(indent=2) + "\n")
    else:
        out.write(render_report(report))
    return 0


def cmd_distance(args, settings: Settings, out: TextIO) -> int:
    config = _config(args, settings)
    ground = resolve_ground(config, args.ground or settings.ground_path)
    refs = _reference_service(args, settings, config).load_references()
    if len(refs) < 2:
        raise DataValidationError(f"need at least 2 references for a distance table (store has {len(refs)})")

    table = pairwise_distances(refs, ground)
    names = [ref.name for ref in refs]
    result = DistanceTable(names=names, distances=[[table[a][b] for b in names] for a in names])
    if args.json:
        out.write(result.model_dump_json(indent=2) + "\n")
    else:
        out.write(render_distance_table(result))
    return 0


def cmd_validate(args, settings: Settings, out: TextIO) -> int:
    config = _config(args, settings)
    decision_config = _decision_config(args, config)
    ground = resolve_ground(config, args.ground or settings.ground_path)
    violations = ground.triangle_violations()

    refs: List[ReferencePosture] = []
    overlaps = []
    if args.store or settings.store_path:
        refs = _reference_service(args, settings, config).load_references()
        if refs:
            overlaps = ensure_tolerances_valid(refs, ground, decision_config)

    summary = {
        "strategy": decision_config.strategy,
        "ground_terms": ground.lexicon.size,
        "ground_max": max(max(row) for row in ground.matrix),
        "triangle_violations": len(violations),
        "references": len(refs),
        "overlaps": [o.model_dump() for o in overlaps],
    }
    if args.json:
        out.write(json.dumps(summary, indent=2) + "\n")
    else:
        out.write(f"Strategy: {summary['strategy']}\n")
        out.write(f"Ground: {summary['ground_terms']} terms, max {summary['ground_max']:.4f}, "
                  f"{summary['triangle_violations']} triangle violations\n")
        out.write(f"References: {summary['references']}\n")
        for o in overlaps:
            out.write(f"  overlap {o.first}/{o.second}: {o.distance:.4f} < {o.tolerance_sum:.4f}\n")
    logging.info("Validation passed")
    return 0


def _format_terms(terms) -> str:
    return ", ".join(f"{term}={mass:.4f}" for term, mass in terms)


def render_report(report: RunReport) -> str:
    lines = [f"Strategy: {report.strategy}"]
    for record in report.records:
        o = record.outcome
        recognized = "{" + ", ".join(o.recognized) + "}"
        action = o.chosen_action or "-"
        nearest = min(o.distances.items(), key=lambda kv: (kv[1], kv[0]))
        lines.append(
            f"frame {record.frame}: {recognized} action={action} [{o.rationale}] "
            f"nearest={nearest[0]}:{nearest[1]:.4f} top=({_format_terms(record.top_terms)})"
        )
    lines.append("Summary: " + ", ".join(f"{tag}={n}" for tag, n in report.summary.items() if n))
    if report.skipped:
        lines.append(f"Skipped frames: {report.skipped}")
    return "\n".join(lines) + "\n"


def render_distance_table(table: DistanceTable) -> str:
    width = max(len(n) for n in table.names) + 2
    header = " " * width + "".join(f"{n:>{width}}" for n in table.names)
    rows = [
        f"{name:<{width}}" + "".join(f"{d:>{width}.4f}" for d in row)
        for name, row in zip(table.names, table.distances)
    ]
    return "\n".join([header] + rows) + "\n"


COMMANDS: Dict[str, Callable] = {
    "fuzzify": cmd_fuzzify,
    "learn": cmd_learn,
    "decide": cmd_decide,
    "distance": cmd_distance,
    "validate": cmd_validate,
}
