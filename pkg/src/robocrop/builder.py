"""Dataset construction: crop building, translation, offline augmentation.

All builders are deterministic functions of their inputs and seed. Parallel
runs produce byte-identical trees because every output file depends only on
its own derived RNG stream, and the manifest is sorted before writing.
"""

from __future__ import annotations

import logging
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .annotations import AnnotationRecord, ClassHierarchy, parse_hierarchy, parse_voc_xml, select_classes
from .augment import AugmentConfig, augment_batch, augment_sample
from .errors import MissingSourceError, NoInputsError, ParseError
from .geometry import BoundingBox, enlarge_box, enlarge_box_real, round_half_away, translate_box
from .image import as_image, bilinear_resize, crop, load_image, save_png
from .manifest import BuildReport, ManifestEntry, read_manifest, resolve_output_path, write_manifest
from .rng import derive_stream

logger = logging.getLogger(__name__)

_IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg", ".bmp")


def _pool(jobs: int) -> ProcessPoolExecutor:
    ctx = multiprocessing.get_context("fork")
    return ProcessPoolExecutor(max_workers=jobs, mp_context=ctx)


def _chunksize(n_tasks: int, jobs: int) -> int:
    return max(1, n_tasks // (jobs * 4)) if n_tasks else 1


def _finish(report: BuildReport, started: float) -> BuildReport:
    report.wall_time = time.monotonic() - started
    report.throughput = report.images_seen / report.wall_time if report.wall_time > 0 else 0.0
    return report


# ---------------------------------------------------------------------------
# build_crops


@dataclass(frozen=True)
class _CropTask:
    image_id: str
    image_path: str
    objects: tuple[tuple[int, str, tuple[int, int, int, int]], ...]
    enlarge_factor: float
    crops_dir: str


def _rounded_enlargement(box: BoundingBox, factor: float) -> tuple[int, int, int, int]:
    """The enlarged box before clamping; used to detect whether clamping bit."""
    rxmin, rymin, rxmax, rymax = enlarge_box_real(box, factor)
    return (
        round_half_away(rxmin),
        round_half_away(rymin),
        round_half_away(rxmax),
        round_half_away(rymax),
    )


def _run_crop_task(task: _CropTask) -> tuple[list[ManifestEntry], int, list[str]]:
    entries: list[ManifestEntry] = []
    warnings: list[str] = []
    try:
        img = load_image(task.image_path)
    except (OSError, ValueError) as exc:
        return [], len(task.objects), [f"{task.image_path}: cannot load source image: {exc}"]
    h, w = img.shape[:2]
    dropped = 0
    for object_index, label, coords in task.objects:
        box = BoundingBox(*coords)
        clipped = BoundingBox(
            max(0, min(box.xmin, w)),
            max(0, min(box.ymin, h)),
            max(0, min(box.xmax, w)),
            max(0, min(box.ymax, h)),
        )
        if clipped.xmax <= clipped.xmin or clipped.ymax <= clipped.ymin:
            dropped += 1
            warnings.append(
                f"{task.image_id}#{object_index}: box {box.as_list()} empty within {w}x{h} image"
            )
            continue
        enlarged = enlarge_box(clipped, task.enlarge_factor, w, h)
        clamped = _rounded_enlargement(clipped, task.enlarge_factor) != (
            enlarged.xmin,
            enlarged.ymin,
            enlarged.xmax,
            enlarged.ymax,
        )
        name = f"{task.image_id}_{object_index}.png"
        save_png(Path(task.crops_dir) / name, crop(img, enlarged))
        entries.append(
            ManifestEntry(
                image_id=task.image_id,
                source_path=task.image_path,
                class_label=label,
                box_original=clipped,
                box_enlarged=enlarged,
                output_path=f"crops/{name}",
                out_w=enlarged.width,
                out_h=enlarged.height,
                object_index=object_index,
                source_w=w,
                source_h=h,
                clamped=clamped,
            )
        )
    return entries, dropped, warnings


def build_crops(
    annotations_dir: str | Path,
    images_dir: str | Path,
    hierarchy_file: str | Path | None,
    mode: str,
    cfg: AugmentConfig,
    out_dir: str | Path,
    jobs: int = 1,
    seed: int = 0,
) -> tuple[BuildReport, Path]:
    """Crop every selected object's enlarged box into out_dir/crops.

    The crop stage itself draws no random numbers; ``seed`` is accepted for
    interface symmetry with the other builders. Returns the report and the
    manifest path (out_dir/manifest.jsonl, sorted by image_id, object_index).
    """
    del seed
    cfg.validate()
    started = time.monotonic()
    annotations_dir = Path(annotations_dir)
    images_dir = Path(images_dir)
    # A typo'd path must not masquerade as an empty (but valid) corpus.
    if not annotations_dir.is_dir():
        raise FileNotFoundError(f"annotations directory not found: {annotations_dir}")
    if not images_dir.is_dir():
        raise FileNotFoundError(f"images directory not found: {images_dir}")
    out_dir = Path(out_dir)
    crops_dir = out_dir / "crops"
    crops_dir.mkdir(parents=True, exist_ok=True)

    hierarchy = ClassHierarchy(frozenset())
    if hierarchy_file is not None:
        hierarchy = parse_hierarchy(Path(hierarchy_file).read_text(encoding="utf-8"))

    records: list[AnnotationRecord] = []
    report = BuildReport()
    for xml_path in sorted(annotations_dir.glob("*.xml")):
        try:
            records.append(parse_voc_xml(xml_path.read_text(encoding="utf-8")))
        except ParseError as exc:
            logger.warning("%s: skipped: %s", xml_path, exc)
    report.images_seen = len(records)
    report.objects_seen = sum(len(r.objects) for r in records)

    all_classes = {label for r in records for label, _ in r.objects}
    selected = select_classes(all_classes, hierarchy, mode)
    report.classes_selected = set(selected)

    tasks = []
    for record in sorted(records, key=lambda r: r.image_id):
        objects = tuple(
            (idx, label, box.as_tuple())
            for idx, (label, box) in enumerate(record.objects)
            if label in selected
        )
        if objects:
            tasks.append(
                _CropTask(
                    image_id=record.image_id,
                    image_path=str(images_dir / record.image_path),
                    objects=objects,
                    enlarge_factor=cfg.enlarge_factor,
                    crops_dir=str(crops_dir),
                )
            )

    entries: list[ManifestEntry] = []
    if jobs <= 1:
        results = map(_run_crop_task, tasks)
    else:
        pool = _pool(jobs)
        results = pool.map(_run_crop_task, tasks, chunksize=_chunksize(len(tasks), jobs))
    try:
        for task_entries, dropped, warnings in results:
            entries.extend(task_entries)
            report.objects_dropped += dropped
            for message in warnings:
                logger.warning("%s", message)
    finally:
        if jobs > 1:
            pool.shutdown()
    report.crops_written = len(entries)

    manifest_path = out_dir / "manifest.jsonl"
    write_manifest(manifest_path, entries)
    return _finish(report, started), manifest_path


# ---------------------------------------------------------------------------
# translate_dataset


def translate_dataset(
    manifest_path: str | Path,
    fraction: float,
    out_dir: str | Path,
    seed: int = 0,
) -> tuple[BuildReport, Path]:
    """Re-crop every entry at a randomly shifted copy of its original box.

    Entry i shifts by dx = round(ux*fraction*width) with ux = 2*u - 1 drawn
    from derive(seed, image_id, i, 0); the shifted box slides back inside the
    source frame, so output crops keep the original box dimensions exactly.
    """
    if fraction < 0:
        raise ValueError(f"fraction must be >= 0, got {fraction}")
    started = time.monotonic()
    out_dir = Path(out_dir)
    crops_dir = out_dir / "crops"
    crops_dir.mkdir(parents=True, exist_ok=True)

    report = BuildReport()
    entries = read_manifest(manifest_path)
    new_entries: list[ManifestEntry] = []
    cache: dict[str, np.ndarray] = {}
    for index, entry in enumerate(entries):
        if entry.source_path not in cache:
            try:
                cache[entry.source_path] = load_image(entry.source_path)
            except (OSError, ValueError) as exc:
                raise MissingSourceError(f"{entry.source_path}: {exc}") from exc
        img = cache[entry.source_path]
        h, w = img.shape[:2]
        stream = derive_stream(seed, image_id=entry.image_id, sample_index=index, epoch=0)
        ux = 2.0 * stream.unit_float() - 1.0
        uy = 2.0 * stream.unit_float() - 1.0
        box = entry.box_original
        moved = translate_box(box, fraction, w, h, ux, uy)
        dx = round_half_away(ux * fraction * box.width)
        dy = round_half_away(uy * fraction * box.height)
        slid = (moved.xmin, moved.ymin) != (box.xmin + dx, box.ymin + dy)
        name = f"{entry.image_id}_{entry.object_index}.png"
        save_png(crops_dir / name, crop(img, moved))
        new_entries.append(
            ManifestEntry(
                image_id=entry.image_id,
                source_path=entry.source_path,
                class_label=entry.class_label,
                box_original=moved,
                box_enlarged=moved,
                output_path=f"crops/{name}",
                out_w=moved.width,
                out_h=moved.height,
                object_index=entry.object_index,
                source_w=w,
                source_h=h,
                clamped=slid,
            )
        )
        report.classes_selected.add(entry.class_label)
    report.images_seen = len(cache)
    report.objects_seen = len(entries)
    report.crops_written = len(new_entries)

    manifest_out = out_dir / "manifest.jsonl"
    write_manifest(manifest_out, new_entries)
    return _finish(report, started), manifest_out


# ---------------------------------------------------------------------------
# augment_offline


@dataclass(frozen=True)
class _AugmentTask:
    crop_path: str
    stream_id: str
    out_dir: str


def _run_augment_task(
    task: _AugmentTask, cfg: AugmentConfig, seed: int, epoch: int
) -> tuple[int, int, list[str]]:
    try:
        img = load_image(task.crop_path)
    except (OSError, ValueError) as exc:
        return 0, cfg.samples_per_image, [f"{task.crop_path}: cannot load crop: {exc}"]
    views = augment_batch(img, cfg, seed, epoch=epoch, image_id=task.stream_id)
    for k, view in enumerate(views):
        save_png(Path(task.out_dir) / f"{task.stream_id}_{k}.png", view)
    return len(views), 0, []


def augment_offline(
    manifest_path: str | Path,
    cfg: AugmentConfig,
    out_dir: str | Path,
    jobs: int = 1,
    seed: int = 0,
    epoch: int = 0,
) -> BuildReport:
    """Write samples_per_image augmented views of every manifest crop.

    The stream for entry views is keyed by "<image_id>_<object_index>", which
    is unique per entry, so outputs are independent of worker count and
    scheduling order.
    """
    cfg.validate()
    started = time.monotonic()
    out_dir = Path(out_dir)
    aug_dir = out_dir / "aug"
    aug_dir.mkdir(parents=True, exist_ok=True)

    entries = read_manifest(manifest_path)
    tasks = [
        _AugmentTask(
            crop_path=str(resolve_output_path(manifest_path, entry)),
            stream_id=f"{entry.image_id}_{entry.object_index}",
            out_dir=str(aug_dir),
        )
        for entry in entries
    ]

    report = BuildReport()
    report.images_seen = len(entries)
    report.objects_seen = len(entries) * cfg.samples_per_image
    report.classes_selected = {entry.class_label for entry in entries}

    if jobs <= 1:
        results = (_run_augment_task(task, cfg, seed, epoch) for task in tasks)
    else:
        pool = _pool(jobs)
        results = pool.map(
            _run_augment_task,
            tasks,
            [cfg] * len(tasks),
            [seed] * len(tasks),
            [epoch] * len(tasks),
            chunksize=_chunksize(len(tasks), jobs),
        )
    try:
        for written, dropped, warnings in results:
            report.crops_written += written
            report.objects_dropped += dropped
            for message in warnings:
                logger.warning("%s", message)
    finally:
        if jobs > 1:
            pool.shutdown()
    return _finish(report, started)


# ---------------------------------------------------------------------------
# inspect


def _log_histogram(values: list[int]) -> dict:
    if not values:
        return {"edges": [], "counts": [0] * 16}
    lo = float(min(values))
    hi = float(max(values))
    if hi <= lo:
        hi = lo * 2.0  # degenerate spread; any widening keeps bins positive
    edges = np.geomspace(lo, hi, num=17)
    counts, _ = np.histogram(np.asarray(values, dtype=np.float64), bins=edges)
    return {"edges": [float(e) for e in edges], "counts": [int(c) for c in counts]}


def inspect_manifest(manifest_path: str | Path) -> dict:
    """Summary statistics of a manifest: class counts, box histograms, clamp rate."""
    entries = read_manifest(manifest_path)
    per_class: dict[str, int] = {}
    for entry in entries:
        per_class[entry.class_label] = per_class.get(entry.class_label, 0) + 1
    widths = [entry.box_original.width for entry in entries]
    heights = [entry.box_original.height for entry in entries]
    areas = [entry.box_original.area for entry in entries]
    clamp_rate = (
        sum(1 for entry in entries if entry.clamped) / len(entries) if entries else 0.0
    )
    return {
        "entries": len(entries),
        "per_class": dict(sorted(per_class.items())),
        "width_hist": _log_histogram(widths),
        "height_hist": _log_histogram(heights),
        "area_hist": _log_histogram(areas),
        "clamp_rate": clamp_rate,
    }


# ---------------------------------------------------------------------------
# bench


def _bench_worker(
    paths: list[str], cfg: AugmentConfig, worker_index: int, duration: float
) -> tuple[int, list[float]]:
    images = []
    for path in paths:
        img = load_image(path)
        if cfg.mode == "random_crop" and (
            img.shape[1] != cfg.crop_src_w or img.shape[0] != cfg.crop_src_h
        ):
            img = bilinear_resize(img, cfg.crop_src_w, cfg.crop_src_h)
        images.append(as_image(img))
    latencies: list[float] = []
    count = 0
    deadline = time.monotonic() + duration
    while time.monotonic() < deadline:
        img = images[count % len(images)]
        stream = derive_stream(0, image_id=f"bench{count % len(images)}", sample_index=count, epoch=worker_index)
        t0 = time.perf_counter()
        augment_sample(img, cfg, stream)
        latencies.append((time.perf_counter() - t0) * 1000.0)
        count += 1
    return count, latencies


def bench(input_dir: str | Path, cfg: AugmentConfig, jobs: int = 1, duration: float = 2.0) -> dict:
    """Run the augmentation loop flat-out for ``duration`` seconds per worker."""
    cfg.validate()
    input_dir = Path(input_dir)
    paths = sorted(
        str(p) for p in input_dir.iterdir() if p.suffix.lower() in _IMAGE_SUFFIXES
    )
    if not paths:
        raise NoInputsError(f"no decodable images under {input_dir}")

    if duration <= 0:
        return {
            "jobs": jobs,
            "duration_s": float(duration),
            "samples": 0,
            "images_per_sec": 0.0,
            "p50_ms": 0.0,
            "p99_ms": 0.0,
        }

    started = time.monotonic()
    if jobs <= 1:
        results = [_bench_worker(paths, cfg, 0, duration)]
    else:
        with _pool(jobs) as pool:
            futures = [
                pool.submit(_bench_worker, paths, cfg, worker, duration)
                for worker in range(jobs)
            ]
            results = [f.result() for f in futures]
    wall = time.monotonic() - started

    total = sum(count for count, _ in results)
    latencies = np.asarray(
        [ms for _, worker_lat in results for ms in worker_lat], dtype=np.float64
    )
    return {
        "jobs": jobs,
        "duration_s": float(duration),
        "samples": int(total),
        "images_per_sec": total / wall if wall > 0 else 0.0,
        "p50_ms": float(np.percentile(latencies, 50)) if total else 0.0,
        "p99_ms": float(np.percentile(latencies, 99)) if total else 0.0,
    }
