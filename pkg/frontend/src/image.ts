/**
 * 8-bit image kernels: validation, crop, horizontal flip, bilinear resize.
 *
 * Images are flat `Uint8Array`s in row-major, channel-interleaved order with
 * 1 or 3 channels. The resize arithmetic is pinned down to the
 * floating-point expression order so that output is byte-identical to the
 * robocrop CLI.
 */

import { Box } from "./geometry.js";
import { EmptyBoxError, InvalidTargetError, OutOfBoundsError, ShapeError } from "./errors.js";

/** One 8-bit image: (height, width, channels) row-major interleaved pixels. */
export interface ImageBuffer {
  width: number;
  height: number;
  channels: 1 | 3;
  data: Uint8Array;
}

/** Validate an `ImageBuffer`; throws ShapeError on any malformed field. */
export function asImage(img: ImageBuffer): ImageBuffer {
  if (!Number.isInteger(img.width) || !Number.isInteger(img.height) || img.width < 1 || img.height < 1) {
    throw new ShapeError(`image dimensions must be positive integers, got ${img.width}x${img.height}`);
  }
  if (img.channels !== 1 && img.channels !== 3) {
    throw new ShapeError(`image must have 1 or 3 channels, got ${img.channels}`);
  }
  if (!(img.data instanceof Uint8Array)) {
    throw new ShapeError(`image data must be a Uint8Array, got ${Object.prototype.toString.call(img.data)}`);
  }
  const expected = img.width * img.height * img.channels;
  if (img.data.length !== expected) {
    throw new ShapeError(
      `image data length ${img.data.length} does not match ${img.width}x${img.height}x${img.channels} = ${expected}`,
    );
  }
  return img;
}

/** Extract the pixels of `box` as a new image; the source is untouched. */
export function crop(img: ImageBuffer, box: Box): ImageBuffer {
  asImage(img);
  const w = box.xmax - box.xmin;
  const h = box.ymax - box.ymin;
  if (w <= 0 || h <= 0) {
    throw new EmptyBoxError(`crop box [${box.xmin}, ${box.ymin}, ${box.xmax}, ${box.ymax}] has no area`);
  }
  if (box.xmin < 0 || box.ymin < 0 || box.xmax > img.width || box.ymax > img.height) {
    throw new OutOfBoundsError(
      `crop box [${box.xmin}, ${box.ymin}, ${box.xmax}, ${box.ymax}] exceeds image ${img.width}x${img.height}`,
    );
  }
  const ch = img.channels;
  const out = new Uint8Array(w * h * ch);
  const rowBytes = w * ch;
  for (let y = 0; y < h; y++) {
    const srcStart = ((box.ymin + y) * img.width + box.xmin) * ch;
    out.set(img.data.subarray(srcStart, srcStart + rowBytes), y * rowBytes);
  }
  return { width: w, height: h, channels: ch, data: out };
}

/** Mirror an image left-to-right. */
export function hflip(img: ImageBuffer): ImageBuffer {
  asImage(img);
  const { width, height, channels } = img;
  const out = new Uint8Array(img.data.length);
  for (let y = 0; y < height; y++) {
    const row = y * width * channels;
    for (let x = 0; x < width; x++) {
      const src = row + x * channels;
      const dst = row + (width - 1 - x) * channels;
      for (let c = 0; c < channels; c++) {
        out[dst + c] = img.data[src + c];
      }
    }
  }
  return { width, height, channels, data: out };
}

/**
 * Half-pixel-center source coordinates for one axis, clamped to the edge.
 *
 * The expression order is fixed: xs = (xt + 0.5) * (src / dst) - 0.5.
 */
function axisCoords(nSrc: number, nDst: number): { lo: Int32Array; hi: Int32Array; frac: Float64Array } {
  const scale = nSrc / nDst;
  const lo = new Int32Array(nDst);
  const hi = new Int32Array(nDst);
  const frac = new Float64Array(nDst);
  for (let i = 0; i < nDst; i++) {
    let s = (i + 0.5) * scale - 0.5;
    s = Math.min(Math.max(s, 0.0), nSrc - 1);
    const loF = Math.floor(s);
    lo[i] = loF;
    hi[i] = Math.min(loF + 1, nSrc - 1);
    frac[i] = s - loF;
  }
  return { lo, hi, frac };
}

/**
 * Resize an image to (targetH, targetW) with bilinear interpolation.
 *
 * Half-pixel-center convention with edge clamping; the blend is computed in
 * double precision per channel and rounded half away from zero, so the
 * output is bit-exact across conforming implementations. Aspect ratio is not
 * preserved; the caller controls both target dimensions.
 */
export function bilinearResize(img: ImageBuffer, targetW: number, targetH: number): ImageBuffer {
  asImage(img);
  if (!Number.isInteger(targetW) || !Number.isInteger(targetH) || targetW < 1 || targetH < 1) {
    throw new InvalidTargetError(`resize target must be >= 1x1, got ${targetW}x${targetH}`);
  }
  const { width, height, channels } = img;
  const x = axisCoords(width, targetW);
  const y = axisCoords(height, targetH);
  const src = img.data;
  const out = new Uint8Array(targetW * targetH * channels);
  let o = 0;
  for (let yt = 0; yt < targetH; yt++) {
    const y0 = y.lo[yt] * width;
    const y1 = y.hi[yt] * width;
    const fy = y.frac[yt];
    const ofy = 1.0 - fy;
    for (let xt = 0; xt < targetW; xt++) {
      const x0 = x.lo[xt];
      const x1 = x.hi[xt];
      const fx = x.frac[xt];
      const ofx = 1.0 - fx;
      const i00 = (y0 + x0) * channels;
      const i10 = (y0 + x1) * channels;
      const i01 = (y1 + x0) * channels;
      const i11 = (y1 + x1) * channels;
      for (let c = 0; c < channels; c++) {
        const top = ofx * src[i00 + c] + fx * src[i10 + c];
        const bottom = ofx * src[i01 + c] + fx * src[i11 + c];
        const blend = ofy * top + fy * bottom;
        // Round half away from zero; blends are nonnegative so floor(v + 0.5) is exact.
        out[o++] = Math.floor(blend + 0.5);
      }
    }
  }
  return { width: targetW, height: targetH, channels, data: out };
}
