"""Guided stroke drawing: scanline search, extension, rasterization onto the
canvas, min-compositing, and the edge-map detail pass.

Search works per direction: the quantized image and the direction's mask
are rotated (nearest neighbor, so quantization levels survive) into the
frame where that direction is horizontal.  For each gray level, scan rows
walk down the rotated frame with a random vertical step drawn from
N(width, 1); every maximal run of masked pixels at or below the level
becomes one stroke.  Strokes are later rasterized individually in the
original frame, so batch compositing and stroke-by-stroke replay agree
bit for bit.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.signal import fftconvolve

from .errors import InputError
from .raster import GRAY_MAX, rotate, rotation_transform
from .stroke import generate_stroke
from .streams import scan_stream, stroke_stream


@dataclass
class StrokeSpec:
    """Everything needed to reproduce one stroke.

    ``row_rot``/``col_rot`` locate the stroke head in the rotated search
    frame of its direction; ``cursor`` names the random substream that
    rasterizes it.  ``importance`` and ``order`` are filled when the
    drawing process is reconstructed.
    """

    dir_index: int   # 1-based direction bucket
    angle: float
    gray: float
    width: int
    length: int      # pre-extension run length
    ext_length: int
    row_rot: int
    col_rot: int
    cursor: int
    importance: float = 0.0
    order: int = -1


@dataclass(frozen=True)
class PlacedStroke:
    """A rasterized stroke clipped to the canvas: ``patch`` at (top, left)."""

    top: int
    left: int
    patch: np.ndarray

    @property
    def slices(self):
        h, w = self.patch.shape
        return slice(self.top, self.top + h), slice(self.left, self.left + w)


def search_strokes(quantized, masks, levels, width, seed):
    """Search the quantized image for strokes in every direction.

    Returns specs in deterministic search order: directions in bucket
    order, levels ascending (the white level emits nothing), scan rows top
    to bottom.  ``seed`` is the master seed; scan-row spacing draws from a
    dedicated substream per (direction, level).
    """
    specs = []
    cursor = 0
    for k in range(masks.n_dirs):
        angle = float(masks.angles[k])
        q_rot, _ = rotate(quantized, angle, fill=GRAY_MAX, interp="nearest")
        m_rot, _ = rotate(masks.masks[k], angle, fill=False, interp="nearest")
        for j, level in enumerate(levels):
            if level >= GRAY_MAX:
                continue  # white strokes render blank
            rows = _scan_rows(q_rot.shape[0], width, scan_stream(seed, k, j))
            eligible = m_rot & (q_rot <= level)
            for r in rows:
                for start, run in zip(*_runs(eligible[r])):
                    specs.append(
                        StrokeSpec(
                            dir_index=k + 1,
                            angle=angle,
                            gray=float(level),
                            width=int(width),
                            length=int(run),
                            ext_length=int(run),
                            row_rot=int(r),
                            col_rot=int(start),
                            cursor=cursor,
                        )
                    )
                    cursor += 1
    return specs


def _scan_rows(height, width, rng):
    rows = []
    r = 0
    while r < height:
        rows.append(r)
        r += max(1, int(np.rint(rng.normal(width, 1.0))))
    return rows


def _runs(row):
    """Start indices and lengths of maximal True runs in a 1-D bool array."""
    edges = np.diff(row.astype(np.int8), prepend=0, append=0)
    starts = np.flatnonzero(edges == 1)
    return starts, np.flatnonzero(edges == -1) - starts


def extend_strokes(specs):
    """Lengthen every stroke by twice its width at head and tail."""
    return [
        replace(s, ext_length=s.length + 4 * s.width, col_rot=s.col_rot - 2 * s.width)
        for s in specs
    ]


def render_stroke(spec, canvas_shape, seed):
    """Rasterize a stroke into the original image frame.

    The stroke is generated horizontally from its dedicated substream,
    rotated back by ``-angle`` (bilinear, white fill), and placed so that
    its center lands where the search frame's inverse rotation puts the
    run center.  Returns a :class:`PlacedStroke` clipped to the canvas, or
    ``None`` if it falls entirely outside.
    """
    rng = stroke_stream(seed, spec.cursor)
    raster = generate_stroke(spec.gray, spec.width, spec.ext_length, rng)
    patch, patch_tf = rotate(raster.patch, -spec.angle, fill=GRAY_MAX, interp="bilinear")
    anchor_dst = patch_tf.forward(raster.anchor)
    search_tf = rotation_transform(canvas_shape, spec.angle)
    center = search_tf.inverse(
        (spec.row_rot, spec.col_rot + (spec.ext_length - 1) / 2.0)
    )
    top = int(np.rint(center[0] - anchor_dst[0]))
    left = int(np.rint(center[1] - anchor_dst[1]))
    return _clip_to_canvas(patch, top, left, canvas_shape)


def _clip_to_canvas(patch, top, left, canvas_shape):
    h, w = patch.shape
    ch, cw = canvas_shape
    r0, c0 = max(top, 0), max(left, 0)
    r1, c1 = min(top + h, ch), min(left + w, cw)
    if r0 >= r1 or c0 >= c1:
        return None
    return PlacedStroke(top=r0, left=c0, patch=patch[r0 - top:r1 - top, c0 - left:c1 - left])


def composite(canvas, placed):
    """Min-composite one placed stroke into the canvas, in place."""
    if placed is None:
        return
    region = canvas[placed.slices]
    np.minimum(region, placed.patch, out=region)


def aggregate(placed_strokes, canvas_shape):
    """Min-composite placed strokes onto a white canvas.

    The darkest value wins at every pixel, so the result is independent of
    stroke order; an empty set yields an all-white canvas.
    """
    canvas = np.full(canvas_shape, GRAY_MAX)
    for placed in placed_strokes:
        composite(canvas, placed)
    return canvas


# ---------------------------------------------------------------------------
# Edge map


def line_kernels(n_dirs, kernel_len):
    """1-px-thick line kernels through the center at each bucket angle."""
    if kernel_len < 3:
        raise InputError(f"kernel length must be at least 3, got {kernel_len}")
    center = (kernel_len - 1) / 2.0
    steps = np.arange(kernel_len) - center
    kernels = []
    for i in range(n_dirs):
        theta = i * np.pi / n_dirs
        cos_t, sin_t = math.cos(theta), math.sin(theta)
        kernel = np.zeros((kernel_len, kernel_len))
        if abs(cos_t) >= abs(sin_t):  # step along columns
            rows = np.rint(center + steps * (sin_t / cos_t)).astype(int)
            cols = np.rint(center + steps).astype(int)
        else:
            rows = np.rint(center + steps).astype(int)
            cols = np.rint(center + steps * (cos_t / sin_t)).astype(int)
        kernel[rows, cols] = 1.0
        kernels.append(kernel)
    return kernels


def edge_map(grad, n_dirs, kernel_len):
    """Directional line-convolution edge map, 1 away from edges, toward 0 on them.

    Each pixel's gradient magnitude is credited to the direction whose
    line kernel responds most strongly there (ties to the lower index);
    convolving each directional layer with its own kernel again and
    summing gives a stroke-like edge energy, inverted and normalized to a
    [0, 1] multiplier.
    """
    mag = grad.magnitude
    kernels = line_kernels(n_dirs, kernel_len)
    best = np.zeros(mag.shape, dtype=np.intp)
    best_resp = np.full(mag.shape, -np.inf)
    for i, kernel in enumerate(kernels):
        resp = fftconvolve(mag, kernel, mode="same")
        closer = resp > best_resp  # strict: ties keep the lower direction
        best[closer] = i
        best_resp[closer] = resp[closer]
    energy = np.zeros_like(mag)
    for i, kernel in enumerate(kernels):
        layer = np.where(best == i, mag, 0.0)
        energy += fftconvolve(layer, kernel, mode="same")
    peak = energy.max()
    if peak <= 0.0:
        return np.ones_like(mag)
    return np.clip(1.0 - energy / peak, 0.0, 1.0)


def compose_final(canvas, edge):
    """Final image: stroke canvas times the [0, 1] edge map, pointwise."""
    if canvas.shape != edge.shape:
        raise InputError(
            f"canvas {canvas.shape} and edge map {edge.shape} dimensions differ"
        )
    return canvas * edge
