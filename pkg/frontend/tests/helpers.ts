/**
 * Test harness: temp dirs, PNG exchange, and spawning the robocrop CLI.
 *
 * The CLI is the reference implementation; these tests talk to it the same
 * way any other consumer would (argv + PNG/JSONL/JSON files on disk).
 */

import { spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { PNG } from "pngjs";
import { expect } from "vitest";

import { ImageBuffer, RngStream } from "../src/index.js";

export const PYTHON = process.env.ROBOCROP_PYTHON ?? "python3";

/** Run one robocrop CLI invocation; throws with stderr attached on failure. */
export function runCli(args: string[], cwd?: string): string {
  const proc = spawnSync(PYTHON, ["-m", "robocrop", ...args], {
    cwd,
    encoding: "utf8",
    maxBuffer: 16 * 1024 * 1024,
  });
  if (proc.error) {
    throw new Error(`failed to spawn ${PYTHON} -m robocrop: ${proc.error.message}`);
  }
  if (proc.status !== 0) {
    throw new Error(`robocrop ${args[0]} exited ${proc.status}:\n${proc.stderr}`);
  }
  return proc.stdout;
}

/** True when the reference CLI is importable; used to fail fast with a hint. */
export function cliAvailable(): boolean {
  const proc = spawnSync(PYTHON, ["-m", "robocrop", "rng-vector", "--count", "1"], { encoding: "utf8" });
  return proc.status === 0;
}

export function makeTmpDir(prefix: string): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), `${prefix}-`));
}

/** Fill an image with stream-driven bytes; deterministic per stream state. */
export function randomImage(stream: RngStream, width: number, height: number, channels: 1 | 3): ImageBuffer {
  const data = new Uint8Array(width * height * channels);
  for (let i = 0; i < data.length; i++) {
    data[i] = Number(stream.nextU64() & 0xffn);
  }
  return { width, height, channels, data };
}

/** Encode to PNG bytes; grayscale images use color type 0, RGB color type 2. */
export function imageToPng(img: ImageBuffer): Buffer {
  const png = new PNG({ width: img.width, height: img.height });
  for (let i = 0; i < img.width * img.height; i++) {
    const o = i * 4;
    if (img.channels === 1) {
      const v = img.data[i];
      png.data[o] = v;
      png.data[o + 1] = v;
      png.data[o + 2] = v;
    } else {
      png.data[o] = img.data[i * 3];
      png.data[o + 1] = img.data[i * 3 + 1];
      png.data[o + 2] = img.data[i * 3 + 2];
    }
    png.data[o + 3] = 255;
  }
  return PNG.sync.write(png, { colorType: img.channels === 1 ? 0 : 2 });
}

export function writePng(filePath: string, img: ImageBuffer): void {
  fs.writeFileSync(filePath, imageToPng(img));
}

/** Decode a PNG to `channels` planes (grayscale files carry r == g == b). */
export function readPng(filePath: string, channels: 1 | 3): ImageBuffer {
  const png = PNG.sync.read(fs.readFileSync(filePath));
  const data = new Uint8Array(png.width * png.height * channels);
  for (let i = 0; i < png.width * png.height; i++) {
    if (channels === 1) {
      data[i] = png.data[i * 4];
    } else {
      data[i * 3] = png.data[i * 4];
      data[i * 3 + 1] = png.data[i * 4 + 1];
      data[i * 3 + 2] = png.data[i * 4 + 2];
    }
  }
  return { width: png.width, height: png.height, channels, data };
}

/** One-entry JSONL manifest pointing the CLI at `pngName` in the same dir. */
export function writeManifest(
  dir: string,
  imageId: string,
  pngName: string,
  width: number,
  height: number,
): string {
  const entry = {
    image_id: imageId,
    source_path: pngName,
    class_label: "obj",
    box_original: [0, 0, width, height],
    box_enlarged: [0, 0, width, height],
    output_path: pngName,
    out_w: width,
    out_h: height,
    object_index: 0,
    source_w: width,
    source_h: height,
    clamped: false,
  };
  const manifestPath = path.join(dir, "manifest.jsonl");
  fs.writeFileSync(manifestPath, JSON.stringify(entry) + "\n");
  return manifestPath;
}

/** Byte equality with a first-mismatch diagnostic instead of a wall of hex. */
export function expectImagesEqual(actual: ImageBuffer, expected: ImageBuffer, label: string): void {
  expect(actual.width, `${label}: width`).toBe(expected.width);
  expect(actual.height, `${label}: height`).toBe(expected.height);
  expect(actual.channels, `${label}: channels`).toBe(expected.channels);
  if (Buffer.compare(Buffer.from(actual.data), Buffer.from(expected.data)) === 0) {
    return;
  }
  for (let i = 0; i < expected.data.length; i++) {
    if (actual.data[i] !== expected.data[i]) {
      throw new Error(
        `${label}: pixel data differs at byte ${i}: got ${actual.data[i]}, want ${expected.data[i]} ` +
          `(image ${expected.width}x${expected.height}x${expected.channels})`,
      );
    }
  }
}
