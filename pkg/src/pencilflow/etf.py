"""Edge tangent flow: a smoothed unit-vector field parallel to nearby edges.

The field starts as the gradient rotated 90 degrees counterclockwise and
is refined iteratively so that vectors in weak-gradient areas swing toward
the direction of strong neighbors.  Quantizing the tangent angles modulo
pi then partitions the image into direction buckets, one stroke direction
per bucket.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

_ZERO_SUM = 1e-12


@dataclass(frozen=True)
class VectorField:
    """Per-pixel unit tangents plus normalized gradient magnitude in [0, 1]."""

    tx: np.ndarray
    ty: np.ndarray
    mag: np.ndarray


@dataclass(frozen=True)
class DirectionMasks:
    """Partition of the pixels into ``n_dirs`` direction buckets.

    ``angles[k]`` is ``k * pi / n_dirs``; ``masks[k]`` flags the pixels
    assigned to that direction.  Every pixel belongs to exactly one mask.
    """

    n_dirs: int
    angles: np.ndarray
    masks: np.ndarray  # (n_dirs, H, W) bool


def init_etf(grad):
    """Initial field: normalized perpendicular of the gradient.

    ``perp(gx, gy) = (-gy, gx)`` turns the gradient 90 degrees
    counterclockwise so vectors run along edges instead of across them.
    Zero-gradient pixels get a zero tangent.
    """
    px = -grad.gy
    py = grad.gx
    norm = np.hypot(px, py)
    nonzero = norm > 0.0
    safe = np.where(nonzero, norm, 1.0)
    tx = np.where(nonzero, px / safe, 0.0)
    ty = np.where(nonzero, py / safe, 0.0)
    peak = grad.magnitude.max()
    mag = grad.magnitude / peak if peak > 0.0 else np.zeros_like(grad.magnitude)
    return VectorField(tx=tx, ty=ty, mag=mag)


def refine_etf(field, radius=5, iterations=2):
    """Iteratively align each tangent with its box neighborhood.

    One iteration replaces t(x) by the normalized sum over the radius-r box
    of ``phi * |t(x).t(y)| * wm * t(y)`` where ``phi`` flips anti-parallel
    neighbors into alignment (so ``phi * |dot|`` is just the dot product)
    and ``wm = (1 + tanh(mag(y) - mag(x))) / 2`` favors stronger neighbors.
    Pixels whose weighted sum vanishes keep their previous tangent.
    """
    radius = int(radius)
    if radius < 1:
        raise ConfigError(f"ETF radius must be at least 1, got {radius}")
    if iterations < 0:
        raise ConfigError(f"ETF iterations must be >= 0, got {iterations}")
    tx, ty = field.tx, field.ty
    for _ in range(int(iterations)):
        tx, ty = _refine_once(tx, ty, field.mag, radius)
    return VectorField(tx=tx, ty=ty, mag=field.mag)


def _refine_once(tx, ty, mag, radius):
    h, w = tx.shape
    ptx = np.pad(tx, radius)  # zero tangents outside contribute nothing
    pty = np.pad(ty, radius)
    pmag = np.pad(mag, radius)
    acc_x = np.zeros_like(tx)
    acc_y = np.zeros_like(ty)
    for dr in range(-radius, radius + 1):
        for dc in range(-radius, radius + 1):
            ntx = ptx[radius + dr:radius + dr + h, radius + dc:radius + dc + w]
            nty = pty[radius + dr:radius + dr + h, radius + dc:radius + dc + w]
            nmag = pmag[radius + dr:radius + dr + h, radius + dc:radius + dc + w]
            weight = tx * ntx
            weight += ty * nty
            weight *= 0.5 * (1.0 + np.tanh(nmag - mag))
            acc_x += weight * ntx
            acc_y += weight * nty
    norm = np.hypot(acc_x, acc_y)
    keep = norm <= _ZERO_SUM
    safe = np.where(keep, 1.0, norm)
    return (
        np.where(keep, tx, acc_x / safe),
        np.where(keep, ty, acc_y / safe),
    )


def quantize_directions(field, n_dirs):
    """Assign every pixel to the nearest of ``n_dirs`` directions mod pi.

    Tangent angle and bucket angles live on the half-circle [0, pi) since
    opposite vectors describe the same stroke direction.  Ties go to the
    lower bucket; zero tangents (flat regions) go to bucket 1 (horizontal).
    """
    n_dirs = int(n_dirs)
    if n_dirs < 1:
        raise ConfigError(f"number of directions must be at least 1, got {n_dirs}")
    angles = np.arange(n_dirs) * np.pi / n_dirs
    theta = np.mod(np.arctan2(field.ty, field.tx), np.pi)
    assigned = np.zeros(theta.shape, dtype=np.intp)
    best = np.full(theta.shape, np.inf)
    for k, a in enumerate(angles):
        dist = np.abs(theta - a)
        np.minimum(dist, np.pi - dist, out=dist)
        closer = dist < best  # strict: ties keep the lower bucket
        assigned[closer] = k
        best[closer] = dist[closer]
    assigned[(field.tx == 0.0) & (field.ty == 0.0)] = 0
    masks = assigned[None, :, :] == np.arange(n_dirs)[:, None, None]
    return DirectionMasks(n_dirs=n_dirs, angles=angles, masks=masks)
