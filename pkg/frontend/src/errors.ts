/**
 * Error types, named to match the CLI's error categories one for one.
 */

export class RobocropError extends Error {
  constructor(message: string) {
    super(message);
    this.name = new.target.name;
  }
}

/** A rectangle extends outside the image or bounds it indexes. */
export class OutOfBoundsError extends RobocropError {}

/** A rectangle has zero or negative area. */
export class EmptyBoxError extends RobocropError {}

/** A resize target dimension is smaller than one pixel. */
export class InvalidTargetError extends RobocropError {}

/** A zoom factor lies outside the configured range. */
export class InvalidZoomError extends RobocropError {}

/** A requested patch exceeds the source dimensions. */
export class PatchTooLargeError extends RobocropError {}

/** An augmentation config violates its invariants. */
export class ConfigError extends RobocropError {}

/** An array does not describe a valid 8-bit image. */
export class ShapeError extends RobocropError {}
