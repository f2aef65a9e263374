"""VOC-style annotation parsing and IS-A class-hierarchy semantics.

The XML parser accepts the VOC element subset (filename, size, object blocks
with name and bndbox) and ignores anything else. VOC's 1-based inclusive
coordinates are converted to 0-based half-open at this boundary so all
internal arithmetic is uniform.
"""

from __future__ import annotations

import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import PurePath

from .errors import CycleError, ParseError
from .geometry import BoundingBox

logger = logging.getLogger(__name__)


@dataclass
class AnnotationRecord:
    """One image's identity plus its labeled boxes."""

    image_id: str
    image_path: str
    image_w: int
    image_h: int
    objects: list[tuple[str, BoundingBox]] = field(default_factory=list)


def _required_text(root: ET.Element, path: str) -> str:
    node = root.find(path)
    if node is None or node.text is None or not node.text.strip():
        raise ParseError(f"missing required element <{path}>")
    return node.text.strip()


def _coord(obj: ET.Element, tag: str) -> int:
    text = _required_text(obj, f"bndbox/{tag}")
    try:
        return int(float(text))
    except ValueError as exc:
        raise ParseError(f"bad coordinate <{tag}>: {text!r}") from exc


def parse_voc_xml(data: bytes | str, image_id: str | None = None) -> AnnotationRecord:
    """Parse one VOC-style annotation document.

    Boxes are clamped to the declared image size; objects whose box has no
    area after clamping are dropped with a warning. ``image_id`` defaults to
    the stem of the <filename> element.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise ParseError(f"malformed XML: {exc}") from exc

    filename = _required_text(root, "filename")
    try:
        width = int(_required_text(root, "size/width"))
        height = int(_required_text(root, "size/height"))
    except ValueError as exc:
        raise ParseError(f"bad image size: {exc}") from exc
    if width < 1 or height < 1:
        raise ParseError(f"image size must be positive, got {width}x{height}")

    if image_id is None:
        image_id = PurePath(filename).stem
    if not image_id:
        raise ParseError(f"cannot derive image id from filename {filename!r}")

    objects: list[tuple[str, BoundingBox]] = []
    for obj in root.findall("object"):
        label = _required_text(obj, "name")
        # VOC coordinates are 1-based inclusive: shift the minimum corner only.
        x0 = _coord(obj, "xmin") - 1
        y0 = _coord(obj, "ymin") - 1
        x1 = _coord(obj, "xmax")
        y1 = _coord(obj, "ymax")
        x0, x1 = max(0, x0), min(width, x1)
        y0, y1 = max(0, y0), min(height, y1)
        if x0 >= x1 or y0 >= y1:
            logger.warning(
                "dropping degenerate box for %r in %s (empty after clamping to %dx%d)",
                label, image_id, width, height,
            )
            continue
        objects.append((label, BoundingBox(x0, y0, x1, y1)))

    return AnnotationRecord(image_id=image_id, image_path=filename,
                            image_w=width, image_h=height, objects=objects)


class ClassHierarchy:
    """Immutable IS-A graph with transitive ancestor queries.

    Construction verifies acyclicity and precomputes the ancestor closure, so
    instances are safely shareable across threads.
    """

    def __init__(self, edges):
        self._edges = frozenset((str(c), str(p)) for c, p in edges)
        parents: dict[str, set[str]] = {}
        for child, parent in self._edges:
            parents.setdefault(child, set()).add(parent)
        self._ancestors: dict[str, frozenset[str]] = {}
        for node in parents:
            self._close(node, parents, on_stack=set())

    def _close(self, node: str, parents: dict[str, set[str]], on_stack: set[str]) -> frozenset[str]:
        if node in self._ancestors:
            return self._ancestors[node]
        if node in on_stack:
            raise CycleError(f"class {node!r} is its own ancestor")
        on_stack.add(node)
        result: set[str] = set()
        for parent in parents.get(node, ()):
            result.add(parent)
            result |= self._close(parent, parents, on_stack)
        on_stack.remove(node)
        closed = frozenset(result)
        self._ancestors[node] = closed
        return closed

    @property
    def edges(self) -> frozenset[tuple[str, str]]:
        return self._edges

    def ancestors(self, label: str) -> frozenset[str]:
        """All classes reachable from ``label`` along IS-A edges (excluding itself)."""
        return self._ancestors.get(label, frozenset())

    def is_ancestor(self, candidate: str, label: str) -> bool:
        return candidate in self.ancestors(label)


def parse_hierarchy(text: str) -> ClassHierarchy:
    """Parse ``child<TAB>parent`` lines into a :class:`ClassHierarchy`.

    Blank lines and lines starting with ``#`` are ignored. Raises ParseError
    on malformed lines and CycleError if the edges form a cycle.
    """
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise ParseError(f"line {lineno}: expected 'child<TAB>parent', got {raw!r}")
        edges.append((parts[0].strip(), parts[1].strip()))
    return ClassHierarchy(edges)


def select_classes(all_classes, hierarchy: ClassHierarchy, mode: str) -> set[str]:
    """Apply clean/dirty selection semantics to a class set.

    Dirty mode keeps everything. Clean mode removes every class that is an
    ancestor of another class in the set, keeping the more specific labels;
    the result never contains an IS-A related pair and the rule is
    order-independent.
    """
    classes = set(all_classes)
    if mode == "dirty":
        return classes
    if mode != "clean":
        raise ValueError(f"mode must be 'clean' or 'dirty', got {mode!r}")
    ancestors_present: set[str] = set()
    for label in classes:
        ancestors_present |= hierarchy.ancestors(label)
    return classes - ancestors_present
