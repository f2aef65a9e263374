"""Shared fixtures: deterministic synthetic VOC corpora."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pytest
from PIL import Image

_XML = """<annotation>
  <folder>synthetic</folder>
  <filename>{filename}</filename>
  <size><width>{w}</width><height>{h}</height><depth>3</depth></size>
{objects}</annotation>
"""

_OBJ = """  <object>
    <name>{name}</name>
    <pose>Unspecified</pose>
    <bndbox><xmin>{xmin}</xmin><ymin>{ymin}</ymin><xmax>{xmax}</xmax><ymax>{ymax}</ymax></bndbox>
  </object>
"""


@dataclass
class Corpus:
    root: Path
    annotations_dir: Path
    images_dir: Path
    hierarchy_file: Path
    n_images: int
    n_objects: int
    classes: list[str]


def build_corpus(
    root: Path,
    n_images: int,
    seed: int = 0,
    classes: tuple[str, ...] = ("dog", "cat", "animal", "car"),
    hierarchy: tuple[tuple[str, str], ...] = (("dog", "animal"), ("cat", "animal")),
    min_side: int = 60,
    max_side: int = 160,
) -> Corpus:
    """Write a reproducible synthetic corpus: PNGs, VOC XML, hierarchy file.

    Boxes use 1-based inclusive VOC coordinates. Some boxes hug the frame so
    enlargement exercises the clamp path.
    """
    rng = np.random.default_rng(seed)
    annotations_dir = root / "annotations"
    images_dir = root / "images"
    annotations_dir.mkdir(parents=True, exist_ok=True)
    images_dir.mkdir(parents=True, exist_ok=True)

    n_objects = 0
    for i in range(n_images):
        w = int(rng.integers(min_side, max_side + 1))
        h = int(rng.integers(min_side, max_side + 1))
        arr = rng.integers(0, 256, size=(h, w, 3)).astype(np.uint8)
        filename = f"im{i:04d}.png"
        Image.fromarray(arr).save(images_dir / filename)

        objects = ""
        for _ in range(int(rng.integers(1, 4))):
            bw = int(rng.integers(16, max(17, w // 2)))
            bh = int(rng.integers(16, max(17, h // 2)))
            x0 = int(rng.integers(0, w - bw))
            y0 = int(rng.integers(0, h - bh))
            name = classes[int(rng.integers(0, len(classes)))]
            objects += _OBJ.format(
                name=name, xmin=x0 + 1, ymin=y0 + 1, xmax=x0 + bw, ymax=y0 + bh
            )
            n_objects += 1
        (annotations_dir / f"im{i:04d}.xml").write_text(
            _XML.format(filename=filename, w=w, h=h, objects=objects), encoding="utf-8"
        )

    hierarchy_file = root / "hierarchy.txt"
    hierarchy_file.write_text(
        "".join(f"{child}\t{parent}\n" for child, parent in hierarchy), encoding="utf-8"
    )
    return Corpus(
        root=root,
        annotations_dir=annotations_dir,
        images_dir=images_dir,
        hierarchy_file=hierarchy_file,
        n_images=n_images,
        n_objects=n_objects,
        classes=list(classes),
    )


@pytest.fixture
def corpus_factory(tmp_path):
    """Callable fixture: corpus_factory(n_images, seed=..., ...) under tmp_path."""
    counter = {"n": 0}

    def factory(n_images: int, **kwargs) -> Corpus:
        counter["n"] += 1
        return build_corpus(tmp_path / f"corpus{counter['n']}", n_images, **kwargs)

    return factory


@pytest.fixture
def small_corpus(corpus_factory) -> Corpus:
    return corpus_factory(6, seed=7)
