"""Rectangle arithmetic: box enlargement, zoom windows, random patches, translation jitter.

All real-to-integer coordinate conversions round half away from zero so that
independent implementations agree on every pixel boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    BoxLargerThanBoundsError,
    EmptyBoxError,
    InvalidZoomError,
    OutOfBoundsError,
    PatchTooLargeError,
)


def round_half_away(value: float) -> int:
    """Round to the nearest integer with ties going away from zero."""
    if value >= 0.0:
        return int(math.floor(value + 0.5))
    return int(math.ceil(value - 0.5))


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned pixel rectangle; xmax and ymax are exclusive."""

    xmin: int
    ymin: int
    xmax: int
    ymax: int

    @property
    def width(self) -> int:
        return self.xmax - self.xmin

    @property
    def height(self) -> int:
        return self.ymax - self.ymin

    @property
    def area(self) -> int:
        return self.width * self.height

    def as_list(self) -> list[int]:
        return [self.xmin, self.ymin, self.xmax, self.ymax]

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.xmin, self.ymin, self.xmax, self.ymax)

    @classmethod
    def from_list(cls, values) -> "BoundingBox":
        xmin, ymin, xmax, ymax = (int(v) for v in values)
        return cls(xmin, ymin, xmax, ymax)


@dataclass(frozen=True)
class ZoomWindow:
    """A window inside a source image together with the zoom factor it realizes."""

    box: BoundingBox
    zoom_factor: float


def enlarge_box_real(box: BoundingBox, factor: float) -> tuple[float, float, float, float]:
    """Pre-rounding stage of :func:`enlarge_box`.

    Each dimension is scaled by ``(1 + factor)`` about the box center, so the
    area grows by exactly ``(1 + factor) ** 2`` before rounding and clamping.
    """
    gx = factor * box.width / 2.0
    gy = factor * box.height / 2.0
    return (box.xmin - gx, box.ymin - gy, box.xmax + gx, box.ymax + gy)


def enlarge_box(box: BoundingBox, factor: float, bounds_w: int, bounds_h: int) -> BoundingBox:
    """Grow ``box`` by ``factor`` per dimension about its center, clamped to bounds.

    ``factor=0.2`` pads each side by 10% of the corresponding dimension.
    Raises EmptyBoxError if the input has no area (or the clamped result
    degenerates, which only happens when the input lies outside the bounds).
    """
    if box.width <= 0 or box.height <= 0:
        raise EmptyBoxError(f"cannot enlarge zero-area box {box}")
    if factor < 0:
        raise ValueError(f"enlarge factor must be >= 0, got {factor}")
    x0f, y0f, x1f, y1f = enlarge_box_real(box, factor)
    x0 = min(max(round_half_away(x0f), 0), bounds_w)
    y0 = min(max(round_half_away(y0f), 0), bounds_h)
    x1 = min(max(round_half_away(x1f), 0), bounds_w)
    y1 = min(max(round_half_away(y1f), 0), bounds_h)
    if x0 >= x1 or y0 >= y1:
        raise EmptyBoxError(f"box {box} enlarged and clamped to {bounds_w}x{bounds_h} is empty")
    return BoundingBox(x0, y0, x1, y1)


def zoom_window(
    src_w: int,
    src_h: int,
    z: float,
    ux: float,
    uy: float,
    zoom_min: float = 1.0,
    zoom_max: float = 2.0,
) -> ZoomWindow:
    """Place a window of size ``round(src/z)`` uniformly inside the source.

    ``ux, uy`` in [0, 1) select the top-left corner among all valid offsets,
    so every placement of the window is reachable. ``z=1`` forces the single
    full-frame window.
    """
    if not (zoom_min <= z <= zoom_max):
        raise InvalidZoomError(f"zoom {z} outside configured range [{zoom_min}, {zoom_max}]")
    if not (0.0 <= ux < 1.0 and 0.0 <= uy < 1.0):
        raise ValueError(f"position draws must lie in [0, 1), got ({ux}, {uy})")
    win_w = max(1, round_half_away(src_w / z))
    win_h = max(1, round_half_away(src_h / z))
    x0 = int(math.floor(ux * (src_w - win_w + 1)))
    y0 = int(math.floor(uy * (src_h - win_h + 1)))
    return ZoomWindow(BoundingBox(x0, y0, x0 + win_w, y0 + win_h), z)


def crop_window(src_w: int, src_h: int, out_w: int, out_h: int, ux: float, uy: float) -> BoundingBox:
    """Pick an ``out_w x out_h`` patch uniformly over all valid offsets."""
    if out_w < 1 or out_h < 1:
        raise EmptyBoxError(f"patch size must be positive, got {out_w}x{out_h}")
    if out_w > src_w or out_h > src_h:
        raise PatchTooLargeError(f"patch {out_w}x{out_h} exceeds source {src_w}x{src_h}")
    if not (0.0 <= ux < 1.0 and 0.0 <= uy < 1.0):
        raise ValueError(f"position draws must lie in [0, 1), got ({ux}, {uy})")
    x0 = int(math.floor(ux * (src_w - out_w + 1)))
    y0 = int(math.floor(uy * (src_h - out_h + 1)))
    return BoundingBox(x0, y0, x0 + out_w, y0 + out_h)


def translate_box(
    box: BoundingBox,
    fraction: float,
    bounds_w: int,
    bounds_h: int,
    ux: float,
    uy: float,
) -> BoundingBox:
    """Shift ``box`` by up to ``fraction`` of its own size, sliding back into bounds.

    ``ux, uy`` in [-1, 1] scale the maximum offset per axis. The box keeps its
    exact dimensions; a shift that would leave the bounds is clamped, never
    padded.
    """
    w = box.width
    h = box.height
    if w <= 0 or h <= 0:
        raise EmptyBoxError(f"cannot translate zero-area box {box}")
    if fraction < 0:
        raise ValueError(f"translation fraction must be >= 0, got {fraction}")
    if not (-1.0 <= ux <= 1.0 and -1.0 <= uy <= 1.0):
        raise ValueError(f"translation draws must lie in [-1, 1], got ({ux}, {uy})")
    if w > bounds_w or h > bounds_h:
        raise BoxLargerThanBoundsError(f"box {w}x{h} cannot fit in {bounds_w}x{bounds_h}")
    if box.xmin < 0 or box.ymin < 0 or box.xmax > bounds_w or box.ymax > bounds_h:
        raise OutOfBoundsError(f"box {box} not inside bounds {bounds_w}x{bounds_h}")
    dx = round_half_away(ux * fraction * w)
    dy = round_half_away(uy * fraction * h)
    x0 = min(max(box.xmin + dx, 0), bounds_w - w)
    y0 = min(max(box.ymin + dy, 0), bounds_h - h)
    return BoundingBox(x0, y0, x0 + w, y0 + h)
