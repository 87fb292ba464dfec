"""End-to-end orchestration: config, the full rendering pipeline, and
YUV-based colorization.

Stage order: load, gray, CLAHE, gradients (used by both the direction
field and the importance scores), ETF, direction masks, gray quantization,
stroke search, extension, importance ordering, then replay with the edge
map applied, emitting frames along the way.  Everything random derives
from the single master seed through named substreams, so one (input,
config, seed) triple pins every output byte.
"""

import os
from dataclasses import dataclass, field, replace

import numpy as np

from . import imgio, vis
from .errors import ConfigError, InputError
from .etf import init_etf, quantize_directions, refine_etf
from .process import build_log, replay, stroke_importance, write_log
from .raster import GRAY_MAX, clahe, gradient, quantize, to_grayscale
from .renderer import aggregate, compose_final, edge_map, extend_strokes, render_stroke, search_strokes

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Config:
    input_path: str = ""
    output_path: str = ""
    stroke_width: int = 5
    n_dirs: int = 10
    n_gray_levels: int = 12
    etf_radius: int = 5
    etf_iterations: int = 2
    clahe_clip: float = 2.0
    clahe_tiles: tuple = (8, 8)
    kernel_len_divisor: int = 30
    seed: int = 0
    frame_every: int = 0
    frames_dir: str = ""
    log_path: str = ""
    colorize: bool = False
    debug_dir: str = ""

    def normalized(self):
        """Validated copy with an odd stroke width; idempotent."""
        width = int(self.stroke_width)
        if width % 2 == 0:
            width += 1
        if width < 3:
            raise ConfigError(f"stroke width must be at least 3, got {self.stroke_width}")
        if self.n_dirs < 1:
            raise ConfigError(f"number of directions must be at least 1, got {self.n_dirs}")
        if not 2 <= self.n_gray_levels <= 64:
            raise ConfigError(
                f"number of gray levels must be in [2, 64], got {self.n_gray_levels}"
            )
        if self.etf_radius < 1:
            raise ConfigError(f"ETF radius must be at least 1, got {self.etf_radius}")
        if self.etf_iterations < 0:
            raise ConfigError(f"ETF iterations must be >= 0, got {self.etf_iterations}")
        if self.clahe_clip <= 0:
            raise ConfigError(f"CLAHE clip limit must be positive, got {self.clahe_clip}")
        if len(self.clahe_tiles) != 2 or min(self.clahe_tiles) < 1:
            raise ConfigError(f"CLAHE tiles must be a pair of positive ints, got {self.clahe_tiles}")
        if self.kernel_len_divisor < 1:
            raise ConfigError(f"kernel length divisor must be >= 1, got {self.kernel_len_divisor}")
        if self.frame_every < 0:
            raise ConfigError(f"frame interval must be >= 0, got {self.frame_every}")
        if self.frame_every > 0 and not self.frames_dir:
            raise ConfigError("frame emission requires a frames directory")
        return replace(
            self,
            stroke_width=width,
            clahe_tiles=(int(self.clahe_tiles[0]), int(self.clahe_tiles[1])),
            seed=int(self.seed) & _MASK64,
        )

    def snapshot(self):
        """JSON-serializable snapshot of the rendering-relevant settings."""
        return {
            "stroke_width": self.stroke_width,
            "n_dirs": self.n_dirs,
            "n_gray_levels": self.n_gray_levels,
            "etf_radius": self.etf_radius,
            "etf_iterations": self.etf_iterations,
            "clahe_clip": self.clahe_clip,
            "clahe_tiles": list(self.clahe_tiles),
            "kernel_len_divisor": self.kernel_len_divisor,
        }


@dataclass
class PipelineResult:
    """Outputs plus the intermediates worth inspecting."""

    final: np.ndarray            # gray result (canvas times edge map)
    output: np.ndarray           # what was/would be written: gray or RGB
    log: object
    quantized: np.ndarray
    levels: np.ndarray
    edge: np.ndarray
    field: object
    masks: object
    enhanced: np.ndarray
    grad: object
    batch_canvas: np.ndarray = field(default=None, repr=False)
    frames_emitted: int = 0


def colorize(original, result):
    """Carry the sketch into color: swap the Y channel of the original.

    BT.601 is used both ways with the exact inverse transform, so feeding
    back the original luma reproduces the original image.
    """
    rgb = np.asarray(original, dtype=np.float64)
    gray = np.asarray(result, dtype=np.float64)
    if rgb.shape[:2] != gray.shape:
        raise InputError(f"image {rgb.shape[:2]} and result {gray.shape} dimensions differ")
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    y = 0.299 * r + 0.587 * g + 0.114 * b
    u = 0.492 * (b - y)
    v = 0.877 * (r - y)
    r2 = gray + v / 0.877
    b2 = gray + u / 0.492
    g2 = (gray - 0.299 * r2 - 0.114 * b2) / 0.587
    return np.clip(np.stack([r2, g2, b2], axis=-1), 0.0, GRAY_MAX)


def render_image(rgb, cfg):
    """Run the whole pipeline on an in-memory RGB array.

    Frames go to ``frames_dir`` when ``frame_every`` is positive; no other
    files are touched.  Returns a :class:`PipelineResult`.
    """
    cfg = cfg.normalized()
    gray = to_grayscale(rgb)
    enhanced = clahe(gray, cfg.clahe_clip, cfg.clahe_tiles)
    grad = gradient(enhanced)
    fld = refine_etf(init_etf(grad), cfg.etf_radius, cfg.etf_iterations)
    masks = quantize_directions(fld, cfg.n_dirs)
    quantized, levels = quantize(enhanced, cfg.n_gray_levels)

    specs = extend_strokes(
        search_strokes(quantized, masks, levels, cfg.stroke_width, cfg.seed)
    )

    shape = enhanced.shape
    edge = edge_map(grad, cfg.n_dirs, default_kernel_len(shape, cfg.kernel_len_divisor))

    placed = [render_stroke(s, shape, cfg.seed) for s in specs]
    placed_by_cursor = {}
    for spec, p in zip(specs, placed):
        spec.importance = stroke_importance(p, spec.gray, grad.magnitude)
        placed_by_cursor[spec.cursor] = p
    log = build_log(specs, shape, cfg.seed, cfg.snapshot())

    emit = None
    frames = _FrameSink(cfg.frames_dir) if cfg.frame_every > 0 else None
    if frames is not None:
        emit = frames.write
    final = replay(
        log, edge, cfg.frame_every, emit,
        renders=[placed_by_cursor[e.cursor] for e in log.entries],
    )

    output = colorize(rgb, final) if cfg.colorize else final
    result = PipelineResult(
        final=final,
        output=output,
        log=log,
        quantized=quantized,
        levels=levels,
        edge=edge,
        field=fld,
        masks=masks,
        enhanced=enhanced,
        grad=grad,
        frames_emitted=frames.count if frames is not None else 0,
    )
    if cfg.debug_dir:
        result.batch_canvas = aggregate(placed, shape)
        _write_debug(cfg.debug_dir, result, specs, placed, shape)
    return result


def run_pipeline(cfg):
    """File-to-file run: load the input, render, write every requested output."""
    cfg = cfg.normalized()
    if not cfg.input_path:
        raise ConfigError("no input path given")
    if not cfg.output_path:
        raise ConfigError("no output path given")
    rgb = imgio.read_image(cfg.input_path)
    result = render_image(rgb, cfg)
    if cfg.colorize:
        imgio.write_rgb_png(cfg.output_path, result.output)
    else:
        imgio.write_gray_png(cfg.output_path, result.output)
    if cfg.log_path:
        write_log(result.log, cfg.log_path)
    return result


class _FrameSink:
    """Writes replay frames as zero-padded numbered PNGs."""

    def __init__(self, directory):
        os.makedirs(directory, exist_ok=True)
        self.directory = directory
        self.count = 0

    def write(self, index, frame):
        path = os.path.join(self.directory, f"frame_{index:06d}.png")
        imgio.write_gray_png(path, frame)
        self.count += 1


def _write_debug(directory, result, specs, placed, shape):
    """Dump the per-stage intermediates (field, masks, per-direction
    canvases, aggregate, edge map, quantized image) as PNGs."""
    os.makedirs(directory, exist_ok=True)
    imgio.write_rgb_png(os.path.join(directory, "etf.png"), vis.etf_to_rgb(result.field))
    imgio.write_gray_png(os.path.join(directory, "quantized.png"), result.quantized)
    imgio.write_gray_png(os.path.join(directory, "edge_map.png"), result.edge * GRAY_MAX)
    imgio.write_gray_png(os.path.join(directory, "aggregate.png"), result.batch_canvas)
    n = result.masks.n_dirs
    digits = max(2, len(str(n)))
    by_dir = {k: [] for k in range(1, n + 1)}
    for spec, p in zip(specs, placed):
        by_dir[spec.dir_index].append(p)
    for k in range(1, n + 1):
        imgio.write_gray_png(
            os.path.join(directory, f"mask_{k:0{digits}d}.png"),
            vis.mask_to_gray(result.masks.masks[k - 1]),
        )
        imgio.write_gray_png(
            os.path.join(directory, f"dir_{k:0{digits}d}.png"),
            aggregate(by_dir[k], shape),
        )


def default_kernel_len(shape, divisor=30):
    """Edge-map kernel length used by the pipeline for a given image shape."""
    return max(3, int(round(min(shape) / divisor)))
