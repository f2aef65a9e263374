"""8-bit image kernels: validation, crop, horizontal flip, bilinear resize, file IO.

Images are numpy ``uint8`` arrays of shape (height, width, channels) with
channels 1 or 3, row-major and interleaved. All kernels are pure functions;
the resize arithmetic is pinned down to the floating-point expression order so
that independent implementations produce byte-identical output.
"""

from __future__ import annotations

import numpy as np
from PIL import Image

from .errors import EmptyBoxError, InvalidTargetError, OutOfBoundsError
from .geometry import BoundingBox


def as_image(arr) -> np.ndarray:
    """Validate an array as an 8-bit image and canonicalize it to (H, W, C).

    Accepts (H, W) grayscale and returns it as (H, W, 1). Raises ValueError on
    any other shape, on channels not in {1, 3}, or on non-uint8 dtype.
    """
    a = np.asarray(arr)
    if a.dtype != np.uint8:
        raise ValueError(f"image dtype must be uint8, got {a.dtype}")
    if a.ndim == 2:
        a = a[:, :, np.newaxis]
    if a.ndim != 3:
        raise ValueError(f"image must have 2 or 3 dimensions, got {a.ndim}")
    if a.shape[2] not in (1, 3):
        raise ValueError(f"image must have 1 or 3 channels, got {a.shape[2]}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"image dimensions must be positive, got {a.shape}")
    return np.ascontiguousarray(a)


def crop(img, box: BoundingBox) -> np.ndarray:
    """Extract the pixels of ``box`` as a new image; the source is untouched."""
    img = as_image(img)
    h, w = img.shape[:2]
    if box.width <= 0 or box.height <= 0:
        raise EmptyBoxError(f"crop box {box} has no area")
    if box.xmin < 0 or box.ymin < 0 or box.xmax > w or box.ymax > h:
        raise OutOfBoundsError(f"crop box {box} exceeds image {w}x{h}")
    return img[box.ymin : box.ymax, box.xmin : box.xmax].copy()


def hflip(img) -> np.ndarray:
    """Mirror an image left-to-right."""
    img = as_image(img)
    return np.ascontiguousarray(img[:, ::-1])


def _axis_coords(n_src: int, n_dst: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Half-pixel-center source coordinates for one axis, clamped to the edge.

    Returns (lower neighbor index, upper neighbor index, fractional weight).
    The expression order is fixed: xs = (xt + 0.5) * (src / dst) - 0.5.
    """
    scale = n_src / n_dst
    s = (np.arange(n_dst, dtype=np.float64) + 0.5) * scale - 0.5
    s = np.clip(s, 0.0, float(n_src - 1))
    lo_f = np.floor(s)
    frac = s - lo_f
    lo = lo_f.astype(np.int64)
    hi = np.minimum(lo + 1, n_src - 1)
    return lo, hi, frac


def bilinear_resize_batch(stack, target_w: int, target_h: int) -> np.ndarray:
    """Resize a (N, H, W, C) uint8 stack with bilinear interpolation.

    Per-pixel arithmetic matches :func:`bilinear_resize` exactly; the batch
    form exists so sweeps over many fills avoid per-image call overhead.
    """
    stack = np.asarray(stack)
    if stack.ndim != 4 or stack.dtype != np.uint8:
        raise ValueError(f"expected uint8 (N, H, W, C) stack, got {stack.dtype} ndim={stack.ndim}")
    if target_w < 1 or target_h < 1:
        raise InvalidTargetError(f"resize target must be >= 1x1, got {target_w}x{target_h}")
    _, h, w, _ = stack.shape
    x0, x1, fx = _axis_coords(w, target_w)
    y0, y1, fy = _axis_coords(h, target_h)
    src = stack.astype(np.float64)
    p00 = src[:, y0[:, None], x0[None, :], :]
    p10 = src[:, y0[:, None], x1[None, :], :]
    p01 = src[:, y1[:, None], x0[None, :], :]
    p11 = src[:, y1[:, None], x1[None, :], :]
    fxb = fx[None, None, :, None]
    fyb = fy[None, :, None, None]
    top = (1.0 - fxb) * p00 + fxb * p10
    bottom = (1.0 - fxb) * p01 + fxb * p11
    blend = (1.0 - fyb) * top + fyb * bottom
    # Round half away from zero; blends are nonnegative so floor(v + 0.5) is exact.
    return np.floor(blend + 0.5).astype(np.uint8)


def bilinear_resize(img, target_w: int, target_h: int) -> np.ndarray:
    """Resize an image to (target_h, target_w) with bilinear interpolation.

    Half-pixel-center convention with edge clamping; the blend is computed in
    double precision per channel and rounded half away from zero, so the
    output is bit-exact across conforming implementations. Aspect ratio is not
    preserved; the caller controls both target dimensions.
    """
    img = as_image(img)
    return bilinear_resize_batch(img[np.newaxis], target_w, target_h)[0]


def load_image(path) -> np.ndarray:
    """Decode a PNG or JPEG file to a canonical (H, W, C) uint8 array.

    Grayscale files stay single-channel; anything that is not L or RGB is
    converted to RGB.
    """
    with Image.open(path) as im:
        if im.mode not in ("L", "RGB"):
            im = im.convert("RGB")
        arr = np.asarray(im)
    return as_image(arr)


def save_png(path, img) -> None:
    """Encode an image as PNG (lossless, so written pixels round-trip exactly)."""
    img = as_image(img)
    if img.shape[2] == 1:
        pil = Image.fromarray(img[:, :, 0], mode="L")
    else:
        pil = Image.fromarray(img, mode="RGB")
    pil.save(path, format="PNG")
