"""Estimator-style wrappers over the augmentation functions.

These follow the fit/transform protocol so the augmenters can sit inside
pipelines and grid searches: constructor stores hyperparameters verbatim,
``fit`` validates them into an immutable config, ``transform`` maps a list of
images to a list of augmented views (samples_per_image per input, in order).

Streams are keyed by element position, so transform(X) is deterministic for a
given (seed, epoch) and independent of how X is batched for processing.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .augment import AugmentConfig, augment_batch
from .errors import InvalidTargetError
from .image import bilinear_resize


class RandomZoomAugmenter(BaseEstimator, TransformerMixin):
    """Zoom-window augmentation: sample a 1/z-sized window, resize, maybe flip."""

    def __init__(
        self,
        zoom_min: float = 1.0,
        zoom_max: float = 2.0,
        target_w: int = 227,
        target_h: int = 227,
        flip_prob: float = 0.5,
        samples_per_image: int = 1,
        seed: int = 0,
        epoch: int = 0,
    ):
        self.zoom_min = zoom_min
        self.zoom_max = zoom_max
        self.target_w = target_w
        self.target_h = target_h
        self.flip_prob = flip_prob
        self.samples_per_image = samples_per_image
        self.seed = seed
        self.epoch = epoch

    def fit(self, X=None, y=None):
        self.config_ = AugmentConfig(
            zoom_min=self.zoom_min,
            zoom_max=self.zoom_max,
            target_w=self.target_w,
            target_h=self.target_h,
            flip_prob=self.flip_prob,
            samples_per_image=self.samples_per_image,
            mode="zoom",
        ).validate()
        return self

    def transform(self, X) -> list[np.ndarray]:
        check_is_fitted(self, "config_")
        out: list[np.ndarray] = []
        for index, img in enumerate(X):
            out.extend(
                augment_batch(img, self.config_, self.seed, epoch=self.epoch, image_id=str(index))
            )
        return out


class RandomCropAugmenter(BaseEstimator, TransformerMixin):
    """Fixed-frame augmentation: take a target-sized patch at a random offset."""

    def __init__(
        self,
        crop_src_w: int = 256,
        crop_src_h: int = 256,
        target_w: int = 227,
        target_h: int = 227,
        flip_prob: float = 0.5,
        samples_per_image: int = 1,
        seed: int = 0,
        epoch: int = 0,
    ):
        self.crop_src_w = crop_src_w
        self.crop_src_h = crop_src_h
        self.target_w = target_w
        self.target_h = target_h
        self.flip_prob = flip_prob
        self.samples_per_image = samples_per_image
        self.seed = seed
        self.epoch = epoch

    def fit(self, X=None, y=None):
        self.config_ = AugmentConfig(
            mode="random_crop",
            crop_src_w=self.crop_src_w,
            crop_src_h=self.crop_src_h,
            target_w=self.target_w,
            target_h=self.target_h,
            flip_prob=self.flip_prob,
            samples_per_image=self.samples_per_image,
        ).validate()
        return self

    def transform(self, X) -> list[np.ndarray]:
        check_is_fitted(self, "config_")
        out: list[np.ndarray] = []
        for index, img in enumerate(X):
            out.extend(
                augment_batch(img, self.config_, self.seed, epoch=self.epoch, image_id=str(index))
            )
        return out


class BilinearResizer(BaseEstimator, TransformerMixin):
    """Deterministic resize of every input to (target_w, target_h)."""

    def __init__(self, target_w: int = 227, target_h: int = 227):
        self.target_w = target_w
        self.target_h = target_h

    def fit(self, X=None, y=None):
        if self.target_w < 1 or self.target_h < 1:
            raise InvalidTargetError(
                f"target size must be >= 1x1, got {self.target_w}x{self.target_h}"
            )
        self.target_ = (self.target_w, self.target_h)
        return self

    def transform(self, X) -> list[np.ndarray]:
        check_is_fitted(self, "target_")
        return [bilinear_resize(img, self.target_w, self.target_h) for img in X]
