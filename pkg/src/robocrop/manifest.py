"""JSONL manifests: one crop record per line, plus the build summary type.

Entries are written sorted by (image_id, object_index) so the file is
byte-identical however many workers produced it. Boxes are serialized as
[xmin, ymin, xmax, ymax] lists.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ParseError
from .geometry import BoundingBox

_FIELDS = (
    "image_id",
    "source_path",
    "class_label",
    "box_original",
    "box_enlarged",
    "output_path",
    "out_w",
    "out_h",
    "object_index",
    "source_w",
    "source_h",
    "clamped",
)


@dataclass(frozen=True)
class ManifestEntry:
    """Provenance record for one emitted crop."""

    image_id: str
    source_path: str
    class_label: str
    box_original: BoundingBox
    box_enlarged: BoundingBox
    output_path: str
    out_w: int
    out_h: int
    object_index: int
    source_w: int
    source_h: int
    clamped: bool

    def sort_key(self) -> tuple[str, int]:
        return (self.image_id, self.object_index)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["box_original"] = self.box_original.as_list()
        data["box_enlarged"] = self.box_enlarged.as_list()
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "ManifestEntry":
        missing = [name for name in _FIELDS if name not in data]
        if missing:
            raise ParseError(f"manifest entry missing fields: {missing}")
        unknown = set(data) - set(_FIELDS)
        if unknown:
            raise ParseError(f"manifest entry has unknown fields: {sorted(unknown)}")
        try:
            return cls(
                image_id=str(data["image_id"]),
                source_path=str(data["source_path"]),
                class_label=str(data["class_label"]),
                box_original=BoundingBox.from_list(data["box_original"]),
                box_enlarged=BoundingBox.from_list(data["box_enlarged"]),
                output_path=str(data["output_path"]),
                out_w=int(data["out_w"]),
                out_h=int(data["out_h"]),
                object_index=int(data["object_index"]),
                source_w=int(data["source_w"]),
                source_h=int(data["source_h"]),
                clamped=bool(data["clamped"]),
            )
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad manifest entry: {exc}") from exc


@dataclass
class BuildReport:
    """Counters for one builder run.

    crops_written + objects_dropped equals the number of objects whose class
    survived selection.
    """

    images_seen: int = 0
    objects_seen: int = 0
    crops_written: int = 0
    objects_dropped: int = 0
    classes_selected: set[str] = field(default_factory=set)
    wall_time: float = 0.0
    throughput: float = 0.0

    def to_dict(self) -> dict:
        data = asdict(self)
        data["classes_selected"] = sorted(self.classes_selected)
        return data


def resolve_output_path(manifest_path: str | Path, entry: ManifestEntry) -> Path:
    """Entry output paths are stored relative to the manifest's directory."""
    path = Path(entry.output_path)
    return path if path.is_absolute() else Path(manifest_path).parent / path


def write_manifest(path: str | Path, entries: Iterable[ManifestEntry]) -> int:
    """Write entries sorted by (image_id, object_index); returns the count."""
    ordered = sorted(entries, key=ManifestEntry.sort_key)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for entry in ordered:
            fh.write(json.dumps(entry.to_dict(), separators=(",", ":")) + "\n")
    return len(ordered)


def iter_manifest(path: str | Path) -> Iterator[ManifestEntry]:
    """Yield entries; blank lines are skipped. ParseError names the bad line."""
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"{path}:{lineno}: not valid JSON: {exc}") from exc
            try:
                yield ManifestEntry.from_dict(data)
            except ParseError as exc:
                raise ParseError(f"{path}:{lineno}: {exc}") from exc


def read_manifest(path: str | Path) -> list[ManifestEntry]:
    return list(iter_manifest(path))
