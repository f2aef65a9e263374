"""Deterministic image-crop and augmentation dataset toolkit.

Turns box-annotated image collections into crop datasets and augmented
training views: enlarged-box cropping with clean/dirty class selection,
random zoom or random fixed-frame crops with horizontal flips, translation
jitter, bit-exact bilinear resizing, and reproducible parallel builds driven
by a counter-keyed random stream per output file.
"""

from .annotations import (
    AnnotationRecord,
    ClassHierarchy,
    parse_hierarchy,
    parse_voc_xml,
    select_classes,
)
from .augment import AugmentConfig, augment_batch, augment_sample
from .builder import augment_offline, bench, build_crops, inspect_manifest, translate_dataset
from .errors import (
    BoxLargerThanBoundsError,
    ConfigError,
    CycleError,
    EmptyBoxError,
    InvalidTargetError,
    InvalidZoomError,
    MissingSourceError,
    NoInputsError,
    OutOfBoundsError,
    ParseError,
    PatchTooLargeError,
    RobocropError,
)
from .estimators import BilinearResizer, RandomCropAugmenter, RandomZoomAugmenter
from .geometry import (
    BoundingBox,
    ZoomWindow,
    crop_window,
    enlarge_box,
    enlarge_box_real,
    round_half_away,
    translate_box,
    zoom_window,
)
from .image import as_image, bilinear_resize, bilinear_resize_batch, crop, hflip, load_image, save_png
from .manifest import (
    BuildReport,
    ManifestEntry,
    iter_manifest,
    read_manifest,
    resolve_output_path,
    write_manifest,
)
from .rng import RngStream, derive_stream, fnv1a64, rng_reference_vector

__version__ = "0.1.0"

__all__ = [
    "AnnotationRecord",
    "AugmentConfig",
    "BilinearResizer",
    "BoundingBox",
    "BoxLargerThanBoundsError",
    "BuildReport",
    "ClassHierarchy",
    "ConfigError",
    "CycleError",
    "EmptyBoxError",
    "InvalidTargetError",
    "InvalidZoomError",
    "ManifestEntry",
    "MissingSourceError",
    "NoInputsError",
    "OutOfBoundsError",
    "ParseError",
    "PatchTooLargeError",
    "RandomCropAugmenter",
    "RandomZoomAugmenter",
    "RngStream",
    "RobocropError",
    "ZoomWindow",
    "__version__",
    "as_image",
    "augment_batch",
    "augment_offline",
    "augment_sample",
    "bench",
    "bilinear_resize",
    "bilinear_resize_batch",
    "build_crops",
    "crop",
    "crop_window",
    "derive_stream",
    "enlarge_box",
    "enlarge_box_real",
    "fnv1a64",
    "hflip",
    "inspect_manifest",
    "iter_manifest",
    "load_image",
    "parse_hierarchy",
    "parse_voc_xml",
    "read_manifest",
    "resolve_output_path",
    "rng_reference_vector",
    "round_half_away",
    "save_png",
    "select_classes",
    "translate_box",
    "translate_dataset",
    "write_manifest",
    "zoom_window",
]
