/**
 * The augmentation chain: zoom-or-randomcrop -> resize -> flip.
 *
 * `augmentSample` is a pure function of (image, config, stream). Every call
 * consumes exactly four draws from its stream, whatever the mode, so zoom and
 * random-crop runs on identical seeds stay stream-aligned for A/B
 * comparisons. Outputs are byte-identical to the robocrop CLI `augment`
 * subcommand for the same derived stream.
 */

import { AugmentConfig, parseConfig, validateConfig } from "./config.js";
import { cropWindow, zoomWindow } from "./geometry.js";
import { asImage, bilinearResize, crop, hflip, ImageBuffer } from "./image.js";
import { deriveStream, RngStream } from "./rng.js";
import { ConfigError } from "./errors.js";

/** Stream coordinates for one sample; defaults match the CLI's. */
export interface SampleKey {
  imageId?: string;
  sampleIndex?: number;
  epoch?: number;
}

/**
 * Produce one augmented view of `img`.
 *
 * Draw order is fixed: u1 (zoom factor; drawn but unused in random_crop
 * mode), u2 (x position), u3 (y position), u4 (flip coin). The output is
 * always (target_h, target_w, channels).
 */
export function augmentSample(img: ImageBuffer, cfg: AugmentConfig, stream: RngStream): ImageBuffer {
  validateConfig(cfg);
  const image = asImage(img);
  const w = image.width;
  const h = image.height;
  const u1 = stream.unitFloat();
  const u2 = stream.unitFloat();
  const u3 = stream.unitFloat();
  const u4 = stream.unitFloat();

  let patch: ImageBuffer;
  if (cfg.mode === "zoom") {
    let z = cfg.zoom_min + u1 * (cfg.zoom_max - cfg.zoom_min);
    if (z > cfg.zoom_max) {
      // one-ulp overshoot guard for exotic ranges
      z = cfg.zoom_max;
    }
    patch = crop(image, zoomWindow(w, h, z, u2, u3, cfg.zoom_min, cfg.zoom_max));
  } else {
    if (w !== cfg.crop_src_w || h !== cfg.crop_src_h) {
      throw new ConfigError(`random_crop input must be ${cfg.crop_src_w}x${cfg.crop_src_h}, got ${w}x${h}`);
    }
    patch = crop(image, cropWindow(w, h, cfg.target_w, cfg.target_h, u2, u3));
  }

  let out = patch;
  if (patch.height !== cfg.target_h || patch.width !== cfg.target_w) {
    out = bilinearResize(patch, cfg.target_w, cfg.target_h);
  }
  if (u4 < cfg.flip_prob) {
    out = hflip(out);
  }
  return out;
}

/**
 * One augmented view addressed by (seed, imageId, sampleIndex, epoch).
 *
 * Accepts the config as a validated object, a partial, or the CLI's JSON
 * string; the stream derivation matches the CLI, so the same key yields the
 * same bytes here and there.
 */
export function augment(
  img: ImageBuffer,
  config: string | Partial<AugmentConfig> | null | undefined,
  seed: bigint | number,
  key: SampleKey = {},
): ImageBuffer {
  const cfg = parseConfig(config);
  const stream = deriveStream(seed, key.imageId ?? "", key.sampleIndex ?? 0, key.epoch ?? 0);
  return augmentSample(img, cfg, stream);
}

/**
 * All `samples_per_image` augmentations of `img` for one epoch.
 *
 * Element `i` uses the stream derived from (seed, imageId, i, epoch), so the
 * list is identical whatever order the elements are computed in.
 */
export function augmentBatch(
  img: ImageBuffer,
  config: string | Partial<AugmentConfig> | null | undefined,
  seed: bigint | number,
  key: Omit<SampleKey, "sampleIndex"> = {},
): ImageBuffer[] {
  const cfg = parseConfig(config);
  const views: ImageBuffer[] = [];
  for (let i = 0; i < cfg.samples_per_image; i++) {
    views.push(augmentSample(img, cfg, deriveStream(seed, key.imageId ?? "", i, key.epoch ?? 0)));
  }
  return views;
}
