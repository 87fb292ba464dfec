"""Drawing-process reconstruction: importance scoring, ordering, the stroke
log file, and stroke-by-stroke replay into frames.

The search produces strokes grouped by direction and level, which is not
how anyone draws.  Scoring each stroke by (255 - gray) times the summed
gradient magnitude under its footprint ranks outlines (long, dark, on
edges) above fill texture; replaying in descending score order yields a
natural-looking process whose final frame is bit-identical to the batch
composite, because min-compositing is order-independent.
"""

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .errors import LogError, ReplayError
from .raster import GRAY_MAX
from .renderer import StrokeSpec, composite, render_stroke

LOG_SCHEMA = "pencilflow-log/1"

_ENTRY_FIELDS = {
    "order": int,
    "dir": int,
    "angle": float,
    "gray": float,
    "width": int,
    "length": int,
    "ext_length": int,
    "row_rot": int,
    "col_rot": int,
    "cursor": int,
    "importance": float,
}


@dataclass(frozen=True)
class LogHeader:
    seed: int
    height: int
    width: int
    n_strokes: int
    config: dict
    config_hash: str
    schema: str = LOG_SCHEMA


@dataclass(frozen=True)
class StrokeLog:
    """Ordered drawing process: header plus importance-sorted stroke specs."""

    header: LogHeader
    entries: list


def config_hash(config):
    """Short stable digest of a JSON-serializable config snapshot."""
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def stroke_importance(placed, gray, magnitude):
    """Score a placed stroke: (255 - gray) times the summed gradient
    magnitude over its non-white footprint.  Off-canvas strokes score 0."""
    if placed is None:
        return 0.0
    region = magnitude[placed.slices]
    return float((GRAY_MAX - gray) * region[placed.patch < GRAY_MAX].sum())


def importance(spec, grad, canvas_shape, seed):
    """Render a stroke from its spec and score it (log-recompute path)."""
    placed = render_stroke(spec, canvas_shape, seed)
    return stroke_importance(placed, spec.gray, grad.magnitude)


def reorder(specs, grad, canvas_shape, seed, config):
    """Score every stroke and build the importance-ordered log.

    The sort is stable and descending, so equal scores keep their search
    order.  ``config`` must be a JSON-serializable snapshot; it is stored
    in the header together with its hash.
    """
    scored = []
    for spec in specs:
        placed = render_stroke(spec, canvas_shape, seed)
        spec.importance = stroke_importance(placed, spec.gray, grad.magnitude)
        scored.append(spec)
    return build_log(scored, canvas_shape, seed, config)


def build_log(specs, canvas_shape, seed, config):
    """Order already-scored specs into a log (stable descending importance)."""
    entries = sorted(specs, key=lambda s: s.importance, reverse=True)
    for i, spec in enumerate(entries):
        spec.order = i
    header = LogHeader(
        seed=int(seed),
        height=int(canvas_shape[0]),
        width=int(canvas_shape[1]),
        n_strokes=len(entries),
        config=config,
        config_hash=config_hash(config),
    )
    return StrokeLog(header=header, entries=entries)


# ---------------------------------------------------------------------------
# Replay


def replay(log, edge, frame_every=0, emit=None, renders=None):
    """Draw the log stroke by stroke onto a white canvas.

    Every stroke min-composites in log order.  With ``frame_every > 0`` a
    frame (canvas times edge map) goes to ``emit(index, frame)`` after
    every ``frame_every`` strokes and after the last one.  Returns the
    final composed image, which equals the batch composite of the same
    strokes.

    ``renders`` may carry already-rasterized placed strokes aligned with
    ``log.entries`` (from the same seed); rasterization is deterministic,
    so supplying them only saves time.
    """
    shape = (log.header.height, log.header.width)
    edge = np.asarray(edge, dtype=np.float64)
    if edge.shape != shape:
        raise ReplayError(
            f"edge map {edge.shape} does not match canvas {shape}"
        )
    canvas = np.full(shape, GRAY_MAX)
    emitted = 0
    drawn = 0
    for i, spec in enumerate(log.entries):
        _validate_entry(spec, i)
        placed = renders[i] if renders is not None else render_stroke(spec, shape, log.header.seed)
        composite(canvas, placed)
        drawn += 1
        if frame_every > 0 and emit is not None and drawn % frame_every == 0:
            emit(emitted, canvas * edge)
            emitted += 1
    final = canvas * edge
    if frame_every > 0 and emit is not None:
        if drawn == 0 or drawn % frame_every != 0:
            emit(emitted, final)
    return final


def _validate_entry(spec, index):
    try:
        ok = (
            0.0 <= spec.gray <= GRAY_MAX
            and spec.width >= 3
            and spec.width % 2 == 1
            and spec.length >= 1
            and spec.ext_length >= spec.length
            and np.isfinite(spec.angle)
            and spec.cursor >= 0
        )
    except TypeError:
        ok = False
    if not ok:
        raise ReplayError("corrupted stroke parameters", index=index)


# ---------------------------------------------------------------------------
# Log file format: one JSON record per line, header first


def write_log(log, path):
    """Write a stroke log as line-delimited UTF-8 JSON records."""
    h = log.header
    header = {
        "schema": h.schema,
        "seed": h.seed,
        "height": h.height,
        "width": h.width,
        "n_strokes": h.n_strokes,
        "config": h.config,
        "config_hash": h.config_hash,
    }
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(header, sort_keys=True) + "\n")
        for s in log.entries:
            record = {
                "order": s.order,
                "dir": s.dir_index,
                "angle": s.angle,
                "gray": s.gray,
                "width": s.width,
                "length": s.length,
                "ext_length": s.ext_length,
                "row_rot": s.row_rot,
                "col_rot": s.col_rot,
                "cursor": s.cursor,
                "importance": s.importance,
            }
            f.write(json.dumps(record, sort_keys=True) + "\n")


def read_log(path):
    """Parse a stroke log file; the inverse of :func:`write_log`."""
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    if not lines:
        raise LogError("empty log file", line=1)
    head = _parse_record(lines[0], 1)
    schema = head.get("schema")
    if schema != LOG_SCHEMA:
        raise LogError(f"unsupported log schema {schema!r} (expected {LOG_SCHEMA!r})", line=1)
    try:
        header = LogHeader(
            seed=int(head["seed"]),
            height=int(head["height"]),
            width=int(head["width"]),
            n_strokes=int(head["n_strokes"]),
            config=head["config"],
            config_hash=str(head["config_hash"]),
        )
    except KeyError as exc:
        raise LogError(f"header is missing field {exc.args[0]!r}", line=1) from None

    entries = []
    for lineno, line in enumerate(lines[1:], start=2):
        rec = _parse_record(line, lineno)
        try:
            values = {name: cast(rec[name]) for name, cast in _ENTRY_FIELDS.items()}
        except KeyError as exc:
            raise LogError(f"entry is missing field {exc.args[0]!r}", line=lineno) from None
        except (TypeError, ValueError):
            raise LogError("entry field has the wrong type", line=lineno) from None
        entries.append(
            StrokeSpec(
                dir_index=values["dir"],
                angle=values["angle"],
                gray=values["gray"],
                width=values["width"],
                length=values["length"],
                ext_length=values["ext_length"],
                row_rot=values["row_rot"],
                col_rot=values["col_rot"],
                cursor=values["cursor"],
                importance=values["importance"],
                order=values["order"],
            )
        )
    if len(entries) != header.n_strokes:
        raise LogError(
            f"header promises {header.n_strokes} strokes, file has {len(entries)}",
            line=len(lines),
        )
    return StrokeLog(header=header, entries=entries)


def _parse_record(line, lineno):
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise LogError(f"malformed record: {exc.msg}", line=lineno) from None
    if not isinstance(record, dict):
        raise LogError("record is not a JSON object", line=lineno)
    return record
