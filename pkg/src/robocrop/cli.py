"""Command-line interface.

Subcommands: build-crops, translate, augment, inspect, bench, rng-vector.
Exit codes: 0 success, 1 fatal error, 2 invalid usage.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .augment import AugmentConfig
from .builder import augment_offline, bench, build_crops, inspect_manifest, translate_dataset
from .errors import RobocropError
from .rng import rng_reference_vector

logger = logging.getLogger(__name__)


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise ValueError(f"seed must fit in 64 bits, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise ValueError(f"expected a positive integer, got {text}")
    return value


def _load_config(value: str | None) -> AugmentConfig:
    """Inline JSON object, or a path to a JSON file."""
    if value is None:
        return AugmentConfig().validate()
    stripped = value.strip()
    if stripped.startswith("{"):
        return AugmentConfig.from_json(stripped)
    return AugmentConfig.from_json(Path(value).read_text(encoding="utf-8"))


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="robocrop",
        description="Deterministic crop/augmentation dataset builder.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-crops", help="crop enlarged object boxes into a dataset")
    p.add_argument("--annotations", required=True, help="directory of VOC XML files")
    p.add_argument("--images", required=True, help="directory of source images")
    p.add_argument("--hierarchy", default=None, help="child<TAB>parent class hierarchy file")
    p.add_argument("--mode", choices=("clean", "dirty"), default="dirty")
    p.add_argument("--config", default=None, help="JSON config (inline or file path)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--seed", type=_u64, default=0)

    p = sub.add_parser("translate", help="re-crop boxes at randomly shifted positions")
    p.add_argument("--manifest", required=True)
    p.add_argument("--fraction", type=float, required=True, help="shift limit as a fraction of box size")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=_u64, default=0)

    p = sub.add_parser("augment", help="write augmented views of manifest crops")
    p.add_argument("--manifest", required=True)
    p.add_argument("--config", default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--epoch", type=int, default=0)

    p = sub.add_parser("inspect", help="print manifest statistics as JSON")
    p.add_argument("--manifest", required=True)

    p = sub.add_parser("bench", help="measure augmentation throughput")
    p.add_argument("--input", required=True, help="directory of benchmark images")
    p.add_argument("--config", default=None)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--duration", type=float, default=2.0, help="seconds per worker")

    p = sub.add_parser("rng-vector", help="print the generator's first outputs for a seed")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--count", type=_positive_int, default=20)

    return parser


def run(args: argparse.Namespace) -> int:
    if args.command == "build-crops":
        report, manifest_path = build_crops(
            annotations_dir=args.annotations,
            images_dir=args.images,
            hierarchy_file=args.hierarchy,
            mode=args.mode,
            cfg=_load_config(args.config),
            out_dir=args.out,
            jobs=args.jobs,
            seed=args.seed,
        )
        payload = report.to_dict()
        payload["manifest"] = str(manifest_path)
        _emit(payload)
    elif args.command == "translate":
        if args.fraction < 0:
            raise RobocropError(f"--fraction must be >= 0, got {args.fraction}")
        report, manifest_path = translate_dataset(
            manifest_path=args.manifest,
            fraction=args.fraction,
            out_dir=args.out,
            seed=args.seed,
        )
        payload = report.to_dict()
        payload["manifest"] = str(manifest_path)
        _emit(payload)
    elif args.command == "augment":
        report = augment_offline(
            manifest_path=args.manifest,
            cfg=_load_config(args.config),
            out_dir=args.out,
            jobs=args.jobs,
            seed=args.seed,
            epoch=args.epoch,
        )
        _emit(report.to_dict())
    elif args.command == "inspect":
        _emit(inspect_manifest(args.manifest))
    elif args.command == "bench":
        _emit(
            bench(
                input_dir=args.input,
                cfg=_load_config(args.config),
                jobs=args.jobs,
                duration=args.duration,
            )
        )
    elif args.command == "rng-vector":
        for value in rng_reference_vector(args.seed, args.count):
            sys.stdout.write(f"{value:016x}\n")
    else:  # pragma: no cover - argparse enforces the choices
        raise RobocropError(f"unknown command {args.command!r}")
    return 0


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except RobocropError as exc:
        logger.error("%s", exc)
        return 1
    except OSError as exc:
        logger.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
