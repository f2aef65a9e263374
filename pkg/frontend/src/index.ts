/**
 * Deterministic zoom/crop/flip augmentation for training loops.
 *
 * Pure array-in/array-out calls whose outputs are byte-identical to the
 * robocrop CLI for the same (seed, image id, sample index, epoch) key, so a
 * JS/TS training loop can apply the layer online and still reproduce an
 * offline-built dataset exactly.
 */

export { augment, augmentBatch, augmentSample, SampleKey } from "./augment.js";
export { AugmentConfig, AugmentMode, DEFAULT_CONFIG, MODES, parseConfig, validateConfig } from "./config.js";
export {
  ConfigError,
  EmptyBoxError,
  InvalidTargetError,
  InvalidZoomError,
  OutOfBoundsError,
  PatchTooLargeError,
  RobocropError,
  ShapeError,
} from "./errors.js";
export { Box, cropWindow, roundHalfAway, zoomWindow } from "./geometry.js";
export { asImage, bilinearResize, crop, hflip, ImageBuffer } from "./image.js";
export { deriveStream, fnv1a64, RngStream, rngReferenceVector, toU64 } from "./rng.js";

/** Mirrors the CLI package version this library is byte-compatible with. */
export const VERSION = "0.1.0";
