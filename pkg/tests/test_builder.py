"""Builder orchestration: crop building, translation, offline augmentation,
inspection, and the throughput loop."""

import numpy as np
import pytest
from PIL import Image

from robocrop import (
    AugmentConfig,
    BoundingBox,
    MissingSourceError,
    NoInputsError,
    ParseError,
    augment_batch,
    augment_offline,
    bench,
    bilinear_resize,
    build_crops,
    crop,
    enlarge_box,
    inspect_manifest,
    load_image,
    read_manifest,
    resolve_output_path,
    translate_dataset,
)

from .conftest import build_corpus

_TOY_XML = """<annotation>
  <filename>{fn}</filename>
  <size><width>80</width><height>80</height></size>
  <object><name>{cls}</name>
  <bndbox><xmin>21</xmin><ymin>21</ymin><xmax>60</xmax><ymax>60</ymax></bndbox></object>
</annotation>
"""


def make_toy(root):
    """Three one-object images: dog, animal, car; hierarchy dog->animal."""
    ann = root / "ann"
    img = root / "img"
    ann.mkdir(parents=True)
    img.mkdir(parents=True)
    rng = np.random.default_rng(0)
    for i, cls in enumerate(["dog", "animal", "car"]):
        fn = f"toy{i}.png"
        Image.fromarray(rng.integers(0, 256, (80, 80, 3)).astype(np.uint8)).save(img / fn)
        (ann / f"toy{i}.xml").write_text(_TOY_XML.format(fn=fn, cls=cls))
    hier = root / "hier.txt"
    hier.write_text("dog\tanimal\n")
    return ann, img, hier


class TestBuildCrops:
    def test_toy_dirty_vs_clean_counts(self, tmp_path):
        ann, img, hier = make_toy(tmp_path)
        report_d, manifest_d = build_crops(ann, img, hier, "dirty", AugmentConfig(), tmp_path / "d")
        report_c, manifest_c = build_crops(ann, img, hier, "clean", AugmentConfig(), tmp_path / "c")
        assert report_d.crops_written == 3
        assert report_c.crops_written == 2
        labels_c = {e.class_label for e in read_manifest(manifest_c)}
        assert labels_c == {"dog", "car"}

    def test_report_invariants_and_outputs(self, tmp_path, small_corpus):
        report, manifest_path = build_crops(
            small_corpus.annotations_dir,
            small_corpus.images_dir,
            small_corpus.hierarchy_file,
            "dirty",
            AugmentConfig(),
            tmp_path / "out",
        )
        entries = read_manifest(manifest_path)
        assert report.images_seen == small_corpus.n_images
        assert report.objects_seen == small_corpus.n_objects
        assert report.crops_written == len(entries)
        assert report.crops_written + report.objects_dropped == small_corpus.n_objects
        for e in entries:
            assert e.box_enlarged == enlarge_box(e.box_original, 0.2, e.source_w, e.source_h)
            img = load_image(resolve_output_path(manifest_path, e))
            assert img.shape == (e.out_h, e.out_w, 3)
            src = load_image(e.source_path)
            assert np.array_equal(img, crop(src, e.box_enlarged))

    def test_manifest_sorted(self, tmp_path, small_corpus):
        _, manifest_path = build_crops(
            small_corpus.annotations_dir, small_corpus.images_dir, None,
            "dirty", AugmentConfig(), tmp_path / "out",
        )
        entries = read_manifest(manifest_path)
        keys = [e.sort_key() for e in entries]
        assert keys == sorted(keys)

    def test_clean_subset_of_dirty(self, tmp_path, small_corpus):
        _, md = build_crops(small_corpus.annotations_dir, small_corpus.images_dir,
                            small_corpus.hierarchy_file, "dirty", AugmentConfig(), tmp_path / "d")
        _, mc = build_crops(small_corpus.annotations_dir, small_corpus.images_dir,
                            small_corpus.hierarchy_file, "clean", AugmentConfig(), tmp_path / "c")
        dirty_keys = {(e.image_id, e.object_index) for e in read_manifest(md)}
        clean_keys = {(e.image_id, e.object_index) for e in read_manifest(mc)}
        assert clean_keys <= dirty_keys

    def test_jobs_do_not_change_manifest(self, tmp_path, small_corpus):
        _, m1 = build_crops(small_corpus.annotations_dir, small_corpus.images_dir, None,
                            "dirty", AugmentConfig(), tmp_path / "j1", jobs=1)
        _, m2 = build_crops(small_corpus.annotations_dir, small_corpus.images_dir, None,
                            "dirty", AugmentConfig(), tmp_path / "j2", jobs=2)
        assert m1.read_bytes() == m2.read_bytes()

    def test_malformed_xml_skipped(self, tmp_path, small_corpus):
        (small_corpus.annotations_dir / "broken.xml").write_text("<annotation><filen")
        report, _ = build_crops(small_corpus.annotations_dir, small_corpus.images_dir,
                                None, "dirty", AugmentConfig(), tmp_path / "out")
        assert report.images_seen == small_corpus.n_images

    def test_empty_annotations_dir(self, tmp_path):
        (tmp_path / "ann").mkdir()
        (tmp_path / "img").mkdir()
        report, manifest_path = build_crops(tmp_path / "ann", tmp_path / "img", None,
                                            "dirty", AugmentConfig(), tmp_path / "out")
        assert report.images_seen == 0
        assert report.crops_written == 0
        assert read_manifest(manifest_path) == []

    def test_missing_input_dirs_fatal(self, tmp_path):
        (tmp_path / "img").mkdir()
        with pytest.raises(FileNotFoundError, match="annotations directory"):
            build_crops(tmp_path / "nope", tmp_path / "img", None,
                        "dirty", AugmentConfig(), tmp_path / "out")
        (tmp_path / "ann").mkdir()
        with pytest.raises(FileNotFoundError, match="images directory"):
            build_crops(tmp_path / "ann", tmp_path / "gone", None,
                        "dirty", AugmentConfig(), tmp_path / "out")

    def test_missing_image_drops_objects(self, tmp_path, small_corpus):
        victim = sorted(small_corpus.images_dir.glob("*.png"))[0]
        victim.unlink()
        report, _ = build_crops(small_corpus.annotations_dir, small_corpus.images_dir,
                                None, "dirty", AugmentConfig(), tmp_path / "out")
        assert report.objects_dropped > 0
        assert report.crops_written + report.objects_dropped == small_corpus.n_objects


@pytest.fixture
def built(tmp_path, small_corpus):
    report, manifest_path = build_crops(
        small_corpus.annotations_dir, small_corpus.images_dir,
        small_corpus.hierarchy_file, "dirty", AugmentConfig(), tmp_path / "base",
    )
    return small_corpus, report, manifest_path


class TestTranslateDataset:
    def test_fraction_zero_identity(self, tmp_path, built):
        _, _, manifest_path = built
        _, new_manifest = translate_dataset(manifest_path, 0.0, tmp_path / "t0", seed=3)
        for old, new in zip(read_manifest(manifest_path), read_manifest(new_manifest)):
            assert new.box_original == old.box_original
            assert np.array_equal(
                load_image(resolve_output_path(new_manifest, new)),
                crop(load_image(old.source_path), old.box_original),
            )

    def test_dims_and_count_preserved(self, tmp_path, built):
        _, _, manifest_path = built
        report, new_manifest = translate_dataset(manifest_path, 0.3, tmp_path / "t3", seed=5)
        old_entries = read_manifest(manifest_path)
        new_entries = read_manifest(new_manifest)
        assert len(new_entries) == len(old_entries)
        assert report.crops_written == len(old_entries)
        for old, new in zip(old_entries, new_entries):
            assert (new.out_w, new.out_h) == (old.box_original.width, old.box_original.height)
            assert new.box_original.width == old.box_original.width
            assert new.box_original.height == old.box_original.height
            assert 0 <= new.box_original.xmin and new.box_original.xmax <= new.source_w
            assert 0 <= new.box_original.ymin and new.box_original.ymax <= new.source_h

    def test_deterministic_across_runs(self, tmp_path, built):
        _, _, manifest_path = built
        _, m1 = translate_dataset(manifest_path, 0.2, tmp_path / "a", seed=9)
        _, m2 = translate_dataset(manifest_path, 0.2, tmp_path / "b", seed=9)
        assert m1.read_bytes() == m2.read_bytes()

    def test_missing_source_fatal(self, tmp_path, built):
        corpus, _, manifest_path = built
        for png in corpus.images_dir.glob("*.png"):
            png.unlink()
        with pytest.raises(MissingSourceError):
            translate_dataset(manifest_path, 0.1, tmp_path / "t", seed=0)


class TestAugmentOffline:
    def test_file_count_and_report(self, tmp_path, built):
        _, base_report, manifest_path = built
        cfg = AugmentConfig(target_w=32, target_h=32, samples_per_image=3)
        report = augment_offline(manifest_path, cfg, tmp_path / "aug", jobs=1, seed=4)
        files = sorted((tmp_path / "aug" / "aug").glob("*.png"))
        assert len(files) == base_report.crops_written * 3
        assert report.crops_written == len(files)
        assert report.objects_dropped == 0

    def test_jobs_byte_identical_trees(self, tmp_path, built):
        _, _, manifest_path = built
        cfg = AugmentConfig(target_w=24, target_h=24, samples_per_image=2)
        augment_offline(manifest_path, cfg, tmp_path / "x1", jobs=1, seed=8)
        augment_offline(manifest_path, cfg, tmp_path / "x2", jobs=3, seed=8)
        f1 = sorted((tmp_path / "x1" / "aug").glob("*.png"))
        f2 = sorted((tmp_path / "x2" / "aug").glob("*.png"))
        assert [f.name for f in f1] == [f.name for f in f2]
        for a, b in zip(f1, f2):
            assert a.read_bytes() == b.read_bytes()

    def test_degenerate_config_is_plain_resize(self, tmp_path, built):
        _, _, manifest_path = built
        cfg = AugmentConfig(zoom_min=1.0, zoom_max=1.0, flip_prob=0.0,
                            target_w=40, target_h=40)
        augment_offline(manifest_path, cfg, tmp_path / "plain", jobs=1, seed=2)
        for entry in read_manifest(manifest_path):
            out = load_image(tmp_path / "plain" / "aug" / f"{entry.image_id}_{entry.object_index}_0.png")
            ref = bilinear_resize(load_image(resolve_output_path(manifest_path, entry)), 40, 40)
            assert np.array_equal(out, ref)

    def test_matches_augment_batch_per_entry(self, tmp_path, built):
        _, _, manifest_path = built
        cfg = AugmentConfig(target_w=20, target_h=20, samples_per_image=2)
        augment_offline(manifest_path, cfg, tmp_path / "aa", jobs=1, seed=13, epoch=4)
        for entry in read_manifest(manifest_path)[:4]:
            stream_id = f"{entry.image_id}_{entry.object_index}"
            views = augment_batch(load_image(resolve_output_path(manifest_path, entry)), cfg, 13,
                                  epoch=4, image_id=stream_id)
            for k, view in enumerate(views):
                out = load_image(tmp_path / "aa" / "aug" / f"{stream_id}_{k}.png")
                assert np.array_equal(out, view)


class TestInspect:
    def test_toy_counts(self, tmp_path):
        ann, img, hier = make_toy(tmp_path)
        _, manifest_path = build_crops(ann, img, hier, "dirty", AugmentConfig(), tmp_path / "d")
        stats = inspect_manifest(manifest_path)
        assert stats["per_class"] == {"animal": 1, "car": 1, "dog": 1}
        assert stats["entries"] == 3
        assert len(stats["width_hist"]["counts"]) == 16
        assert len(stats["area_hist"]["edges"]) == 17
        assert sum(stats["width_hist"]["counts"]) == 3
        assert 0.0 <= stats["clamp_rate"] <= 1.0

    def test_empty_manifest_zero_report(self, tmp_path):
        path = tmp_path / "m.jsonl"
        path.write_text("")
        stats = inspect_manifest(path)
        assert stats["entries"] == 0
        assert stats["per_class"] == {}
        assert stats["clamp_rate"] == 0.0
        assert stats["width_hist"]["counts"] == [0] * 16

    def test_malformed_line_names_line(self, tmp_path, built):
        _, _, manifest_path = built
        lines = manifest_path.read_text().splitlines()
        lines.insert(2, "not json at all")
        bad = tmp_path / "bad.jsonl"
        bad.write_text("\n".join(lines) + "\n")
        with pytest.raises(ParseError, match="3"):
            inspect_manifest(bad)


class TestBench:
    def test_empty_dir_rejected(self, tmp_path):
        (tmp_path / "empty").mkdir()
        with pytest.raises(NoInputsError):
            bench(tmp_path / "empty", AugmentConfig(), jobs=1, duration=0.1)

    def test_zero_duration(self, small_corpus):
        stats = bench(small_corpus.images_dir, AugmentConfig(), jobs=1, duration=0.0)
        assert stats["samples"] == 0
        assert stats["images_per_sec"] == 0.0

    def test_zoom_and_random_crop_smoke(self, small_corpus):
        zoom_cfg = AugmentConfig(target_w=32, target_h=32)
        rc_cfg = AugmentConfig(mode="random_crop", crop_src_w=64, crop_src_h=64,
                               target_w=48, target_h=48)
        for cfg in (zoom_cfg, rc_cfg):
            stats = bench(small_corpus.images_dir, cfg, jobs=1, duration=0.2)
            assert stats["samples"] > 0
            assert stats["images_per_sec"] > 0
            assert stats["p99_ms"] >= stats["p50_ms"] >= 0
