"""Manifest serialization and the build report."""

import json

import pytest

from robocrop import BoundingBox, BuildReport, ManifestEntry, ParseError, read_manifest, write_manifest


def entry(image_id="im0", object_index=0, **overrides):
    base = dict(
        image_id=image_id,
        source_path=f"/data/{image_id}.png",
        class_label="dog",
        box_original=BoundingBox(10, 10, 50, 40),
        box_enlarged=BoundingBox(6, 7, 54, 43),
        output_path=f"/out/{image_id}_{object_index}.png",
        out_w=48,
        out_h=36,
        object_index=object_index,
        source_w=100,
        source_h=80,
        clamped=False,
    )
    base.update(overrides)
    return ManifestEntry(**base)


class TestEntrySerialization:
    def test_round_trip(self):
        e = entry(clamped=True)
        assert ManifestEntry.from_dict(e.to_dict()) == e

    def test_boxes_serialized_as_lists(self):
        data = entry().to_dict()
        assert data["box_original"] == [10, 10, 50, 40]
        assert data["box_enlarged"] == [6, 7, 54, 43]

    def test_missing_field_rejected(self):
        data = entry().to_dict()
        del data["class_label"]
        with pytest.raises(ParseError, match="class_label"):
            ManifestEntry.from_dict(data)

    def test_unknown_field_rejected(self):
        data = entry().to_dict()
        data["extra"] = 1
        with pytest.raises(ParseError, match="extra"):
            ManifestEntry.from_dict(data)


class TestManifestFile:
    def test_write_sorts_and_read_round_trips(self, tmp_path):
        entries = [entry("b", 1), entry("a", 1), entry("b", 0), entry("a", 0)]
        path = tmp_path / "m.jsonl"
        assert write_manifest(path, entries) == 4
        back = read_manifest(path)
        assert [(e.image_id, e.object_index) for e in back] == [
            ("a", 0), ("a", 1), ("b", 0), ("b", 1)
        ]
        assert sorted(back, key=ManifestEntry.sort_key) == back

    def test_lines_are_compact_json(self, tmp_path):
        path = tmp_path / "m.jsonl"
        write_manifest(path, [entry()])
        line = path.read_text().splitlines()[0]
        assert ": " not in line and ", " not in line
        json.loads(line)

    def test_bad_json_line_reports_number(self, tmp_path):
        path = tmp_path / "m.jsonl"
        write_manifest(path, [entry("a"), entry("b")])
        lines = path.read_text().splitlines()
        lines.insert(1, "{broken")
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(ParseError, match="2"):
            read_manifest(path)

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "m.jsonl"
        write_manifest(path, [entry("a")])
        path.write_text(path.read_text() + "\n\n")
        assert len(read_manifest(path)) == 1

    def test_missing_field_line_reported(self, tmp_path):
        path = tmp_path / "m.jsonl"
        data = entry().to_dict()
        del data["out_w"]
        path.write_text(json.dumps(data) + "\n")
        with pytest.raises(ParseError, match="1"):
            read_manifest(path)


class TestBuildReport:
    def test_to_dict_sorts_classes(self):
        report = BuildReport(classes_selected={"dog", "cat", "animal"})
        assert report.to_dict()["classes_selected"] == ["animal", "cat", "dog"]

    def test_defaults_zeroed(self):
        report = BuildReport()
        data = report.to_dict()
        assert data["images_seen"] == 0
        assert data["crops_written"] == 0
        assert data["wall_time"] == 0.0
