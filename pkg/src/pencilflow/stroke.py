"""Single-stroke synthesis.

A pencil stroke is modeled on the V-shaped cross-section seen in real
drawings: the central row of the stroke is darkest and noisiest, rows
toward the rim get lighter and flatter until they blend into the paper.
A straight stroke is sampled row-by-row from that statistical model and
then bent twice along a large circular arc, which sharpens the ends and
adds the slight curvature of a wrist-drawn line.
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError
from .raster import GRAY_MAX


@dataclass(frozen=True)
class DistributionMatrix:
    """Per-row (mean, variance) of a stroke's cross-section gray values."""

    width: int
    means: np.ndarray      # (width,)
    variances: np.ndarray  # (width,)


@dataclass(frozen=True)
class StrokeRaster:
    """A stroke as a small gray patch on white background.

    ``anchor`` is the (row, col) of the stroke's geometric center within
    the patch; it stays valid through both bending passes because bending
    only pushes content downward, away from the anchored central axis.
    """

    patch: np.ndarray
    anchor: tuple
    length: int
    width: int


def distribution_matrix(gray, width):
    """Cross-section model for a stroke of central gray ``gray`` and width
    ``width`` (odd, so the central row exists).

    A row at distance ``d`` from the center has
    ``mean = gray + (255 - gray) * 2d / (width - 1)`` and
    ``variance = (255 - gray) * cos(pi * d / (width - 1))``: the center is
    the darkest and most variable, the rims are exactly paper white.
    """
    if not 0.0 <= gray <= GRAY_MAX:
        raise ConfigError(f"gray value must be in [0, 255], got {gray}")
    width = int(width)
    if width % 2 == 0:
        raise ConfigError("stroke width must be odd")
    if width < 3:
        raise ConfigError(f"stroke width must be at least 3, got {width}")
    half = (width - 1) / 2.0
    d = np.abs(np.arange(width) - half)
    means = gray + (GRAY_MAX - gray) * 2.0 * d / (width - 1)
    variances = (GRAY_MAX - gray) * np.cos(np.pi * d / (width - 1))
    # rim rows are exactly white with zero spread; keep that exact despite
    # cos(pi/2) not being a representable zero
    rim = d == half
    means[rim] = GRAY_MAX
    variances[rim] = 0.0
    return DistributionMatrix(width=width, means=means, variances=variances)


def synthesize_straight(gray, width, length, rng):
    """Sample a straight width x length stroke from the cross-section model."""
    length = int(length)
    if length < 1:
        raise ConfigError(f"stroke length must be at least 1, got {length}")
    model = distribution_matrix(gray, width)
    sd = np.sqrt(model.variances)
    patch = rng.normal(loc=model.means[:, None], scale=sd[:, None], size=(model.width, length))
    np.clip(patch, 0.0, GRAY_MAX, out=patch)
    return StrokeRaster(
        patch=patch,
        anchor=((model.width - 1) / 2.0, (length - 1) / 2.0),
        length=length,
        width=model.width,
    )


def bend_profile(length, width):
    """Arc radius and per-column downward shift of one bending pass.

    With the origin at the line midpoint, a column at abscissa ``x`` moves
    down by ``x**2 / (2 * radius)`` where ``radius = length**2 / (4 * width)``.
    """
    radius = float(length) ** 2 / (4.0 * float(width))
    x = np.arange(length) - (length - 1) / 2.0
    return radius, x * x / (2.0 * radius)


def bend(raster, mode):
    """Bend a stroke along the circular-arc profile.

    ``mode="discard"`` keeps the patch box: content pushed past the bottom
    is dropped and vacated cells turn white (this thins the stroke ends).
    ``mode="preserve"`` grows the patch downward so shifted content is
    kept (this adds overall curvature).  Strokes shorter than twice their
    width are returned unchanged: the arc model degenerates there.
    """
    if mode not in ("discard", "preserve"):
        raise ConfigError(f"unknown bend mode {mode!r}")
    if raster.length < 2 * raster.width:
        return raster
    _, dy = bend_profile(raster.length, raster.width)
    height = raster.patch.shape[0]
    grow = int(np.ceil(dy.max())) if mode == "preserve" else 0
    # white guard rows above and below let the interpolation taps index
    # freely: anything sampled outside the patch reads paper white
    padded = np.full((height + grow + 2, raster.length), GRAY_MAX)
    padded[1:1 + height] = raster.patch
    src_rows = np.arange(1, height + grow + 1, dtype=np.float64)[:, None] - dy[None, :]
    low = np.floor(src_rows).astype(np.intp)
    frac = src_rows - low
    np.clip(low, 0, padded.shape[0] - 2, out=low)
    cols = np.arange(raster.length)[None, :]
    v0 = padded[low, cols]
    v1 = padded[low + 1, cols]
    patch = v0 + frac * (v1 - v0)  # exact where frac == 0 or v0 == v1
    np.clip(patch, 0.0, GRAY_MAX, out=patch)
    return replace(raster, patch=patch)


def generate_stroke(gray, width, length, rng):
    """Full stroke: straight synthesis, a discard bend, then a preserve bend."""
    raster = synthesize_straight(gray, width, length, rng)
    raster = bend(raster, "discard")
    return bend(raster, "preserve")
