"""PNG/JPEG file I/O.  The single place where gray values get rounded to 8 bits."""

import os

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import InputError, OutputError


def read_image(path):
    """Load an 8-bit image file as an (H, W, 3) uint8 RGB array."""
    try:
        with Image.open(path) as im:
            rgb = im.convert("RGB")
            arr = np.asarray(rgb, dtype=np.uint8)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except UnidentifiedImageError:
        raise InputError(f"not a readable image: {path}") from None
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    if arr.size == 0:
        raise InputError("empty input")
    return arr


def to_uint8(img):
    """Round a float image in [0, 255] to uint8 (the canonical export rounding)."""
    return np.clip(np.rint(np.asarray(img, dtype=np.float64)), 0, 255).astype(np.uint8)


def write_gray_png(path, img):
    """Write a gray image as an 8-bit grayscale PNG."""
    _write(path, Image.fromarray(to_uint8(img), mode="L"))


def write_rgb_png(path, arr):
    """Write an RGB array (uint8 or float in [0, 255]) as an 8-bit PNG."""
    data = np.asarray(arr)
    if data.dtype != np.uint8:
        data = to_uint8(data)
    _write(path, Image.fromarray(data, mode="RGB"))


def _write(path, image):
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent):
        raise OutputError(f"output directory does not exist: {parent}")
    try:
        image.save(path, format="PNG")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from None
