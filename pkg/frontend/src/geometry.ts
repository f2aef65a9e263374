/**
 * Window placement for the two augmentation modes.
 *
 * All real-to-integer coordinate conversions round half away from zero so
 * that every pixel boundary agrees with the CLI.
 */

import { EmptyBoxError, InvalidZoomError, PatchTooLargeError } from "./errors.js";

/** Axis-aligned pixel rectangle; xmax and ymax are exclusive. */
export interface Box {
  xmin: number;
  ymin: number;
  xmax: number;
  ymax: number;
}

/** Round to the nearest integer with ties going away from zero. */
export function roundHalfAway(value: number): number {
  if (value >= 0) {
    return Math.floor(value + 0.5);
  }
  return Math.ceil(value - 0.5);
}

/**
 * Place a window of size `round(src/z)` uniformly inside the source.
 *
 * `ux, uy` in [0, 1) select the top-left corner among all valid offsets, so
 * every placement of the window is reachable. `z=1` forces the single
 * full-frame window.
 */
export function zoomWindow(
  srcW: number,
  srcH: number,
  z: number,
  ux: number,
  uy: number,
  zoomMin = 1.0,
  zoomMax = 2.0,
): Box {
  if (!(zoomMin <= z && z <= zoomMax)) {
    throw new InvalidZoomError(`zoom ${z} outside configured range [${zoomMin}, ${zoomMax}]`);
  }
  if (!(ux >= 0 && ux < 1 && uy >= 0 && uy < 1)) {
    throw new RangeError(`position draws must lie in [0, 1), got (${ux}, ${uy})`);
  }
  const winW = Math.max(1, roundHalfAway(srcW / z));
  const winH = Math.max(1, roundHalfAway(srcH / z));
  const x0 = Math.floor(ux * (srcW - winW + 1));
  const y0 = Math.floor(uy * (srcH - winH + 1));
  return { xmin: x0, ymin: y0, xmax: x0 + winW, ymax: y0 + winH };
}

/** Pick an `outW x outH` patch uniformly over all valid offsets. */
export function cropWindow(
  srcW: number,
  srcH: number,
  outW: number,
  outH: number,
  ux: number,
  uy: number,
): Box {
  if (outW < 1 || outH < 1) {
    throw new EmptyBoxError(`patch size must be positive, got ${outW}x${outH}`);
  }
  if (outW > srcW || outH > srcH) {
    throw new PatchTooLargeError(`patch ${outW}x${outH} exceeds source ${srcW}x${srcH}`);
  }
  if (!(ux >= 0 && ux < 1 && uy >= 0 && uy < 1)) {
    throw new RangeError(`position draws must lie in [0, 1), got (${ux}, ${uy})`);
  }
  const x0 = Math.floor(ux * (srcW - outW + 1));
  const y0 = Math.floor(uy * (srcH - outH + 1));
  return { xmin: x0, ymin: y0, xmax: x0 + outW, ymax: y0 + outH };
}
