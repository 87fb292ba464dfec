"""Bundled synthetic test images.

Real photographs cannot ship with the package, so a few deterministic
scenes stand in for them: a portrait, a landscape, and a still life, each
with smooth shading, hard edges, and mild texture so every pipeline stage
has something to bite on.  All generators are pure functions of their
arguments (noise comes from fixed-seed streams), which keeps every test
and demo reproducible.
"""

import numpy as np

from .raster import GRAY_MAX


def _smooth_noise(shape, cell, amplitude, seed):
    """Band-limited value noise: bilinear upsampling of a seeded lattice."""
    rng = np.random.default_rng(seed)
    gh = shape[0] // cell + 2
    gw = shape[1] // cell + 2
    lattice = rng.uniform(-1.0, 1.0, size=(gh, gw))
    ys = np.arange(shape[0]) / cell
    xs = np.arange(shape[1]) / cell
    y0 = ys.astype(int)
    x0 = xs.astype(int)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]
    v00 = lattice[np.ix_(y0, x0)]
    v01 = lattice[np.ix_(y0, x0 + 1)]
    v10 = lattice[np.ix_(y0 + 1, x0)]
    v11 = lattice[np.ix_(y0 + 1, x0 + 1)]
    top = v00 + fx * (v01 - v00)
    bot = v10 + fx * (v11 - v10)
    return amplitude * (top + fy * (bot - top))


def _to_rgb(r, g, b):
    rgb = np.stack([r, g, b], axis=-1)
    return np.clip(np.rint(rgb), 0, 255).astype(np.uint8)


def portrait(width=256, height=None):
    """A head-and-shoulders scene: shaded face, dark hair, plain backdrop."""
    if height is None:
        height = int(round(width * 1.25))
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    u = (xx - width / 2.0) / width       # -0.5 .. 0.5
    v = (yy - height / 2.0) / height

    # backdrop: soft diagonal gradient, barely mottled like out-of-focus cloth
    base = 205.0 - 55.0 * (v + 0.35 * u) + _smooth_noise((height, width), max(48, width // 3), 1.5, seed=11)

    # shoulders
    shoulders = v > 0.22 - 0.55 * u * u
    shade = 95.0 + 120.0 * np.abs(u) + 60.0 * (v - 0.2)
    shade += _smooth_noise((height, width), max(32, width // 4), 1.5, seed=12)
    gray = np.where(shoulders, shade, base)

    # head: ellipse with Lambert-like shading from the upper left
    head = (u / 0.27) ** 2 + ((v + 0.12) / 0.34) ** 2
    inside = head < 1.0
    nz = np.sqrt(np.clip(1.0 - head, 0.0, 1.0))
    lam = np.clip(-1.15 * u - 0.75 * (v + 0.12) + 0.9 * nz, 0.0, 1.4)
    face = 120.0 + 95.0 * lam + _smooth_noise((height, width), max(24, width // 8), 1.0, seed=13)
    gray = np.where(inside, face, gray)

    # hair: upper cap of the head ellipse, streaky
    hair = inside & (v < -0.16 + 0.10 * np.cos(6.0 * u))
    streaks = 18.0 * np.sin(40.0 * u + 14.0 * v)
    gray = np.where(hair, 52.0 + 0.12 * face + streaks * 0.4, gray)

    # eyes, brows, mouth
    for sx in (-0.105, 0.105):
        eye = ((u - sx) / 0.045) ** 2 + ((v + 0.085) / 0.028) ** 2
        gray = np.where(eye < 1.0, 238.0, gray)
        gray = np.where(eye < 0.25, 38.0, gray)
        brow = (np.abs(v + 0.145 + 0.3 * (u - sx) * (u - sx) / 0.045) < 0.012) & (np.abs(u - sx) < 0.055)
        gray = np.where(brow, 60.0, gray)
    mouth = (np.abs(v - 0.11 - 0.25 * u * u) < 0.013) & (np.abs(u) < 0.075)
    gray = np.where(mouth, 88.0, gray)
    nose = (np.abs(u + 0.3 * (v - 0.02) * (v - 0.02)) < 0.008) & (v > -0.06) & (v < 0.035)
    gray = np.where(nose, face - 45.0, gray)

    gray = np.clip(gray, 0.0, GRAY_MAX)
    warm = np.where(inside & ~hair, 1.06, 1.0)
    return _to_rgb(gray * warm, gray, gray * np.where(inside & ~hair, 0.88, 1.02))


def landscape(size=256):
    """Hills under a bright sky with a sun disk and a textured field."""
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    u = xx / size
    v = yy / size

    sky = 235.0 - 70.0 * v
    sun = ((u - 0.72) ** 2 + (v - 0.2) ** 2) < 0.004
    gray = np.where(sun, 252.0, sky)

    ridge1 = 0.52 + 0.07 * np.sin(6.3 * u) + 0.03 * np.sin(17.0 * u + 1.0)
    hill1 = v > ridge1
    gray = np.where(hill1, 150.0 - 60.0 * (v - ridge1), gray)

    ridge2 = 0.68 + 0.05 * np.sin(9.0 * u + 2.2)
    hill2 = v > ridge2
    field = 120.0 - 45.0 * np.sin(10.0 * (v - 0.68)) + _smooth_noise((size, size), max(3, size // 48), 12.0, seed=21)
    field += 25.0 * np.sin(60.0 * (v + 0.12 * np.sin(4.0 * u)))
    gray = np.where(hill2, field, gray)

    gray = np.clip(gray, 0.0, GRAY_MAX)
    blue = np.where(~hill1 & ~hill2, 1.12, 0.92)
    green = np.where(hill2, 1.08, np.where(hill1, 1.04, 1.0))
    return _to_rgb(gray * 0.95, gray * green, np.clip(gray * blue, 0, 255))


def still_life(size=256):
    """A shaded sphere and a box on a table edge."""
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    u = (xx - size / 2.0) / size
    v = (yy - size / 2.0) / size

    gray = 215.0 - 65.0 * v + _smooth_noise((size, size), max(6, size // 24), 6.0, seed=31)
    table = v > 0.18
    gray = np.where(table, 165.0 - 90.0 * (v - 0.18) + 10.0 * np.sin(90.0 * v), gray)

    # box: two visible faces
    front = (u > 0.05) & (u < 0.33) & (v > -0.02) & (v < 0.22)
    top = (u > 0.05 + 0.4 * (-0.02 - v)) & (u < 0.33 + 0.4 * (-0.02 - v)) & (v > -0.12) & (v <= -0.02)
    gray = np.where(front, 110.0 + 60.0 * (u - 0.05), gray)
    gray = np.where(top, 190.0, gray)

    # sphere with Lambert shading and a cast shadow
    su = (u + 0.18) / 0.17
    sv = (v - 0.03) / 0.17
    r2 = su * su + sv * sv
    ball = r2 < 1.0
    nz = np.sqrt(np.clip(1.0 - r2, 0.0, 1.0))
    lam = np.clip(-0.6 * su - 0.5 * sv + 0.75 * nz, 0.05, 1.3)
    gray = np.where(ball, 40.0 + 160.0 * lam, gray)
    shadow = (((u + 0.13) / 0.24) ** 2 + ((v - 0.225) / 0.05) ** 2) < 1.0
    gray = np.where(shadow & ~ball, gray * 0.55, gray)

    gray = np.clip(gray, 0.0, GRAY_MAX)
    red = np.where(ball, 1.15, 1.0)
    return _to_rgb(np.clip(gray * red, 0, 255), gray * np.where(front | top, 1.05, 1.0), gray * 0.97)


def step_edge_45(size=256, ramp=4.0):
    """Gray image with a diagonal step edge whose tangent angle is pi/4.

    The step runs along row == col and transitions linearly over
    ``2 * ramp`` pixels of perpendicular distance, so every pixel within
    ``ramp`` of the edge carries a gradient exactly perpendicular to it.
    """
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    dist = (xx - yy) / np.sqrt(2.0)  # signed distance to the diagonal
    t = np.clip((dist / ramp + 1.0) / 2.0, 0.0, 1.0)
    return GRAY_MAX * t


def sample_images(size=256):
    """The three bundled scenes at a common square-ish working size."""
    return {
        "portrait": portrait(size, size),
        "landscape": landscape(size),
        "still_life": still_life(size),
    }
