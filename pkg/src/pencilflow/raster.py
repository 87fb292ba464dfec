"""Grayscale raster primitives: luma conversion, CLAHE, quantization,
gradients, and rotation with a recorded transform.

Conventions used by the whole package:

* A gray image is a 2-D ``float64`` array with values in ``[0, 255]``.
  Values stay real-valued through every stage; rounding to 8 bits happens
  once, on file export (see :mod:`pencilflow.imgio`).
* Coordinates are ``(row, col)`` with row 0 at the top.  A positive
  rotation angle turns the displayed image counterclockwise, i.e.
  ``rotate(img, pi / 2)[0]`` equals ``np.rot90(img)``.  Rotating a feature
  whose tangent angle is ``a`` (as measured by ``atan2(ty, tx)`` on
  (col, row) components) by ``+a`` makes it horizontal.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InputError

GRAY_MAX = 255.0


def to_grayscale(rgb):
    """BT.601 luma of an 8-bit RGB array, as a float gray image."""
    arr = np.asarray(rgb, dtype=np.float64)
    if arr.size == 0:
        raise InputError("empty input")
    if arr.ndim == 2:
        return np.clip(arr, 0.0, GRAY_MAX)
    if arr.ndim != 3 or arr.shape[2] < 3:
        raise InputError(f"expected an RGB array, got shape {arr.shape}")
    gray = 0.299 * arr[..., 0] + 0.587 * arr[..., 1] + 0.114 * arr[..., 2]
    return np.clip(gray, 0.0, GRAY_MAX)


# ---------------------------------------------------------------------------
# CLAHE


def clahe(img, clip_limit=2.0, tiles=(8, 8)):
    """Contrast-limited adaptive histogram equalization.

    Per-tile histograms (256 bins) are clipped at
    ``clip_limit * tile_area / 256`` and the excess is redistributed
    uniformly over all bins.  Each tile's mapping sends gray value ``v``
    to ``255 * (cdf(v) - hist(v) / 2) / area`` (midpoint-CDF rule, which
    keeps a fully clipped histogram close to the identity mapping), and
    pixels blend bilinearly between the mappings of the four surrounding
    tile centers.  Output values stay within [0, 255].
    """
    img = np.asarray(img, dtype=np.float64)
    if clip_limit <= 0:
        raise ConfigError("clip limit must be positive")
    ty, tx = int(tiles[0]), int(tiles[1])
    if ty < 1 or tx < 1:
        raise ConfigError("tile grid must be at least 1x1")
    h, w = img.shape
    if h < ty or w < tx:
        ty = tx = 1  # image smaller than the grid: global equalization

    row_edges = np.linspace(0, h, ty + 1).astype(int)
    col_edges = np.linspace(0, w, tx + 1).astype(int)
    bins = np.clip(np.rint(img), 0, 255).astype(np.intp)

    luts = np.empty((ty, tx, 256))
    for i in range(ty):
        for j in range(tx):
            tile = bins[row_edges[i]:row_edges[i + 1], col_edges[j]:col_edges[j + 1]]
            hist = np.bincount(tile.ravel(), minlength=256).astype(np.float64)
            area = float(tile.size)
            clip = max(clip_limit * area / 256.0, 1.0)
            excess = np.maximum(hist - clip, 0.0).sum()
            hist = np.minimum(hist, clip) + excess / 256.0
            cdf = np.cumsum(hist)
            luts[i, j] = GRAY_MAX * (cdf - hist / 2.0) / area

    # Tile centers; pixels outside the outermost centers reuse the edge tile.
    rc = (row_edges[:-1] + row_edges[1:] - 1) / 2.0
    cc = (col_edges[:-1] + col_edges[1:] - 1) / 2.0
    row_band = np.concatenate([[0], np.floor(rc).astype(int) + 1, [h]])
    col_band = np.concatenate([[0], np.floor(cc).astype(int) + 1, [w]])
    levels = np.arange(256.0)

    out = np.empty_like(img)
    for bi in range(ty + 1):
        i0, i1 = max(bi - 1, 0), min(bi, ty - 1)
        r_lo, r_hi = row_band[bi], row_band[bi + 1]
        if r_hi <= r_lo:
            continue
        rows = np.arange(r_lo, r_hi)
        wy = np.zeros(rows.size) if i0 == i1 else (rows - rc[i0]) / (rc[i1] - rc[i0])
        for bj in range(tx + 1):
            j0, j1 = max(bj - 1, 0), min(bj, tx - 1)
            c_lo, c_hi = col_band[bj], col_band[bj + 1]
            if c_hi <= c_lo:
                continue
            cols = np.arange(c_lo, c_hi)
            wx = np.zeros(cols.size) if j0 == j1 else (cols - cc[j0]) / (cc[j1] - cc[j0])
            block = img[r_lo:r_hi, c_lo:c_hi]
            v00 = np.interp(block, levels, luts[i0, j0])
            v01 = np.interp(block, levels, luts[i0, j1])
            v10 = np.interp(block, levels, luts[i1, j0])
            v11 = np.interp(block, levels, luts[i1, j1])
            wyb = wy[:, None]
            wxb = wx[None, :]
            out[r_lo:r_hi, c_lo:c_hi] = (
                (1.0 - wyb) * ((1.0 - wxb) * v00 + wxb * v01)
                + wyb * ((1.0 - wxb) * v10 + wxb * v11)
            )
    return np.clip(out, 0.0, GRAY_MAX)


# ---------------------------------------------------------------------------
# Quantization


def quantize(img, n_levels):
    """Snap every pixel to the nearest of ``n_levels`` uniform gray levels.

    Levels are ``round(255 * k / (n_levels - 1))`` for ``k = 0..n-1``, so 0
    and 255 are always present.  Ties between two levels go to the darker
    one.  Returns ``(quantized, levels)``.
    """
    if not 2 <= int(n_levels) <= 64:
        raise ConfigError(f"number of gray levels must be in [2, 64], got {n_levels}")
    n_levels = int(n_levels)
    img = np.asarray(img, dtype=np.float64)
    levels = np.rint(GRAY_MAX * np.arange(n_levels) / (n_levels - 1))
    midpoints = (levels[:-1] + levels[1:]) / 2.0
    idx = np.searchsorted(midpoints, img, side="left")
    return levels[idx], levels


# ---------------------------------------------------------------------------
# Gradients


@dataclass(frozen=True)
class GradientField:
    """Forward-difference derivatives and their magnitude."""

    gx: np.ndarray
    gy: np.ndarray
    magnitude: np.ndarray


def gradient(img):
    """Forward differences with the last row/column replicated."""
    img = np.asarray(img, dtype=np.float64)
    h, w = img.shape
    if h < 2 or w < 2:
        raise InputError(f"gradient needs at least a 2x2 image, got {h}x{w}")
    gx = np.empty_like(img)
    gx[:, :-1] = img[:, 1:] - img[:, :-1]
    gx[:, -1] = gx[:, -2]
    gy = np.empty_like(img)
    gy[:-1, :] = img[1:, :] - img[:-1, :]
    gy[-1, :] = gy[-2, :]
    return GradientField(gx=gx, gy=gy, magnitude=np.hypot(gx, gy))


# ---------------------------------------------------------------------------
# Rotation


@dataclass(frozen=True)
class RotationTransform:
    """Affine map between a source image and its rotated bounding box.

    ``forward`` sends (row, col) points from the source frame into the
    rotated frame, ``inverse`` goes back; both are exact real-valued maps,
    independent of the raster interpolation used to produce pixels.
    """

    angle: float
    src_size: tuple
    dst_size: tuple
    offset: tuple  # (row, col) translation term of the forward map

    def forward(self, points):
        return self._apply(points, self.angle, self.offset)

    def inverse(self, points):
        cos_t = math.cos(self.angle)
        sin_t = math.sin(self.angle)
        orow, ocol = self.offset
        # Invert forward: subtract offset, rotate by -angle.
        pts = np.asarray(points, dtype=np.float64)
        r = pts[..., 0] - orow
        c = pts[..., 1] - ocol
        return np.stack([cos_t * r + sin_t * c, -sin_t * r + cos_t * c], axis=-1)

    @staticmethod
    def _apply(points, angle, offset):
        cos_t = math.cos(angle)
        sin_t = math.sin(angle)
        pts = np.asarray(points, dtype=np.float64)
        r = pts[..., 0]
        c = pts[..., 1]
        return np.stack(
            [cos_t * r - sin_t * c + offset[0], sin_t * r + cos_t * c + offset[1]],
            axis=-1,
        )


def rotation_transform(shape, angle):
    """Transform of :func:`rotate` for a given source shape, geometry only."""
    h, w = int(shape[0]), int(shape[1])
    cos_a, sin_a = abs(math.cos(angle)), abs(math.sin(angle))
    # ceil with a snap so axis-aligned angles keep exact dimensions
    dst_w = int(math.ceil(w * cos_a + h * sin_a - 1e-9))
    dst_h = int(math.ceil(w * sin_a + h * cos_a - 1e-9))
    cos_t = math.cos(angle)
    sin_t = math.sin(angle)
    cy, cx = (h - 1) / 2.0, (w - 1) / 2.0
    dy, dx = (dst_h - 1) / 2.0, (dst_w - 1) / 2.0
    # forward: row' = cos*r - sin*c + orow ; col' = sin*r + cos*c + ocol
    orow = dy - cos_t * cy + sin_t * cx
    ocol = dx - sin_t * cy - cos_t * cx
    return RotationTransform(
        angle=float(angle), src_size=(h, w), dst_size=(dst_h, dst_w), offset=(orow, ocol)
    )


def rotate(img, angle, fill=GRAY_MAX, interp="bilinear"):
    """Rotate ``img`` by ``angle`` (counterclockwise as displayed) onto the
    expanded bounding box.  Returns ``(rotated, transform)``.

    ``interp`` is ``"nearest"`` (dtype-preserving, used for masks and
    quantized images) or ``"bilinear"`` (float).  Pixels that fall outside
    the source take ``fill``.
    """
    img = np.asarray(img)
    if not math.isfinite(angle):
        raise ConfigError("rotation angle must be finite")
    tf = rotation_transform(img.shape, angle)
    if interp not in ("nearest", "bilinear"):
        raise ConfigError(f"unknown interpolation {interp!r}")
    if angle == 0.0:  # common in the pipeline (horizontal direction bucket)
        out = img.copy() if interp == "nearest" else np.asarray(img, dtype=np.float64).copy()
        return out, tf

    h, w = tf.src_size
    dst_h, dst_w = tf.dst_size
    cos_t = math.cos(angle)
    sin_t = math.sin(angle)
    orow, ocol = tf.offset
    r = np.arange(dst_h, dtype=np.float64)[:, None] - orow
    c = np.arange(dst_w, dtype=np.float64)[None, :] - ocol
    src_r = cos_t * r + sin_t * c
    src_c = -sin_t * r + cos_t * c

    if interp == "nearest":
        ri = np.rint(src_r).astype(np.intp)
        ci = np.rint(src_c).astype(np.intp)
        valid = (ri >= 0) & (ri < h) & (ci >= 0) & (ci < w)
        out = np.full((dst_h, dst_w), fill, dtype=img.dtype)
        out[valid] = img[ri[valid], ci[valid]]
        return out, tf

    # bilinear through a 1-px guard ring holding the fill value: clamping
    # out-of-range taps into the ring reproduces fill without any masking
    padded = np.full((h + 2, w + 2), fill, dtype=np.float64)
    padded[1:-1, 1:-1] = img
    r0 = np.floor(src_r).astype(np.intp)
    c0 = np.floor(src_c).astype(np.intp)
    fr = src_r - r0
    fc = src_c - c0
    r1 = np.clip(r0 + 1, -1, h)
    c1 = np.clip(c0 + 1, -1, w)
    r1 += 1
    c1 += 1
    np.clip(r0, -1, h, out=r0)
    np.clip(c0, -1, w, out=c0)
    r0 += 1
    c0 += 1
    top = padded[r0, c0]
    top += fc * (padded[r0, c1] - top)
    bot = padded[r1, c0]
    bot += fc * (padded[r1, c1] - bot)
    out = top + fr * (bot - top)
    return np.clip(out, 0.0, GRAY_MAX), tf
