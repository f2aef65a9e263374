"""The augmentation chain: enlarge -> crop -> zoom-or-randomcrop -> flip -> resize.

``augment_sample`` is a pure function of (image, config, stream). Every call
consumes exactly four draws from its stream, whatever the mode, so zoom and
random-crop runs on identical seeds stay stream-aligned for A/B comparisons.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConfigError
from .geometry import crop_window, zoom_window
from .image import as_image, bilinear_resize, crop, hflip
from .rng import RngStream, derive_stream

MODES = ("zoom", "random_crop")


@dataclass(frozen=True)
class AugmentConfig:
    """All numeric knobs of the pipeline.

    ``mode="zoom"`` expects an object crop of any size and samples a window of
    size ``source/z`` with z uniform in [zoom_min, zoom_max]; ``random_crop``
    expects a (crop_src_w, crop_src_h) input and takes a target-sized patch at
    a uniform offset. Both resize to (target_w, target_h) and flip with
    probability ``flip_prob``.
    """

    enlarge_factor: float = 0.20
    zoom_min: float = 1.0
    zoom_max: float = 2.0
    target_w: int = 227
    target_h: int = 227
    flip_prob: float = 0.5
    mode: str = "zoom"
    crop_src_w: int | None = None
    crop_src_h: int | None = None
    samples_per_image: int = 1

    def validate(self) -> "AugmentConfig":
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.enlarge_factor < 0:
            raise ConfigError(f"enlarge_factor must be >= 0, got {self.enlarge_factor}")
        if not (1.0 <= self.zoom_min <= self.zoom_max):
            raise ConfigError(f"need 1.0 <= zoom_min <= zoom_max, got [{self.zoom_min}, {self.zoom_max}]")
        if not (0.0 <= self.flip_prob <= 1.0):
            raise ConfigError(f"flip_prob must be in [0, 1], got {self.flip_prob}")
        if self.target_w < 1 or self.target_h < 1:
            raise ConfigError(f"target size must be >= 1x1, got {self.target_w}x{self.target_h}")
        if self.samples_per_image < 1:
            raise ConfigError(f"samples_per_image must be >= 1, got {self.samples_per_image}")
        if self.mode == "random_crop":
            if self.crop_src_w is None or self.crop_src_h is None:
                raise ConfigError("random_crop mode requires crop_src_w and crop_src_h")
            if self.target_w > self.crop_src_w or self.target_h > self.crop_src_h:
                raise ConfigError(
                    f"target {self.target_w}x{self.target_h} exceeds "
                    f"crop source {self.crop_src_w}x{self.crop_src_h}"
                )
        return self

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "AugmentConfig":
        if not isinstance(data, dict):
            raise ConfigError(f"config must be a JSON object, got {type(data).__name__}")
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            cfg = cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc
        return cfg.validate()

    @classmethod
    def from_json(cls, text: str) -> "AugmentConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


def augment_sample(img, cfg: AugmentConfig, stream: RngStream) -> np.ndarray:
    """Produce one augmented view of ``img``.

    Draw order is fixed: u1 (zoom factor; drawn but unused in random_crop
    mode), u2 (x position), u3 (y position), u4 (flip coin). The output is
    always (target_h, target_w, channels).
    """
    cfg.validate()
    img = as_image(img)
    h, w = img.shape[:2]
    u1 = stream.unit_float()
    u2 = stream.unit_float()
    u3 = stream.unit_float()
    u4 = stream.unit_float()

    if cfg.mode == "zoom":
        z = cfg.zoom_min + u1 * (cfg.zoom_max - cfg.zoom_min)
        if z > cfg.zoom_max:  # one-ulp overshoot guard for exotic ranges
            z = cfg.zoom_max
        window = zoom_window(w, h, z, u2, u3, zoom_min=cfg.zoom_min, zoom_max=cfg.zoom_max)
        patch = crop(img, window.box)
    else:
        if w != cfg.crop_src_w or h != cfg.crop_src_h:
            raise ConfigError(
                f"random_crop input must be {cfg.crop_src_w}x{cfg.crop_src_h}, got {w}x{h}"
            )
        patch = crop(img, crop_window(w, h, cfg.target_w, cfg.target_h, u2, u3))

    if patch.shape[0] != cfg.target_h or patch.shape[1] != cfg.target_w:
        out = bilinear_resize(patch, cfg.target_w, cfg.target_h)
    else:
        out = patch
    if u4 < cfg.flip_prob:
        out = hflip(out)
    return out


def augment_batch(img, cfg: AugmentConfig, seed: int, epoch: int = 0, image_id: str = "") -> list[np.ndarray]:
    """All ``samples_per_image`` augmentations of ``img`` for one epoch.

    Element ``i`` uses the stream derived from (seed, image_id, i, epoch), so
    the list is identical whatever order the elements are computed in.
    """
    cfg.validate()
    return [
        augment_sample(img, cfg, derive_stream(seed, image_id, i, epoch))
        for i in range(cfg.samples_per_image)
    ]
