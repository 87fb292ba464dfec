"""Debug visualizations: the ETF field as hue, masks as binary images."""

import numpy as np

from .raster import GRAY_MAX


def hsv_to_rgb(h, s, v):
    """Vectorized HSV (all in [0, 1]) to RGB float arrays in [0, 1]."""
    i = np.floor(h * 6.0).astype(int) % 6
    f = h * 6.0 - np.floor(h * 6.0)
    p = v * (1.0 - s)
    q = v * (1.0 - f * s)
    t = v * (1.0 - (1.0 - f) * s)
    r = np.choose(i, [v, q, p, p, t, v])
    g = np.choose(i, [t, v, v, q, p, p])
    b = np.choose(i, [p, p, t, v, v, q])
    return r, g, b


def etf_to_rgb(field):
    """Tangent angle as hue, gradient magnitude as brightness."""
    angle = np.mod(np.arctan2(field.ty, field.tx), np.pi)
    hue = angle / np.pi
    value = np.where((field.tx == 0.0) & (field.ty == 0.0), 0.0, 0.25 + 0.75 * field.mag)
    r, g, b = hsv_to_rgb(hue, np.ones_like(hue), value)
    return np.clip(np.rint(np.stack([r, g, b], axis=-1) * GRAY_MAX), 0, 255).astype(np.uint8)


def mask_to_gray(mask):
    """Binary mask as a gray image (white = member)."""
    return np.where(mask, GRAY_MAX, 0.0)
