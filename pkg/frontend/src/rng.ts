/**
 * Splittable deterministic random streams built on splitmix64.
 *
 * State and outputs are 64-bit and carried as BigInt; `unitFloat` maps the
 * top 53 bits onto a double in [0, 1). The recurrence, the stream derivation,
 * and the float mapping are pinned so that outputs agree bit for bit with the
 * robocrop CLI (`rng-vector` prints the same sequence).
 */

const MASK64 = 0xffffffffffffffffn;

const GOLDEN = 0x9e3779b97f4a7c15n;
const MIX_A = 0xbf58476d1ce4e5b9n;
const MIX_B = 0x94d049bb133111ebn;
const SAMPLE_KEY = 0x632be59bd9b4e019n;

const FNV_OFFSET = 0xcbf29ce484222325n;
const FNV_PRIME = 0x100000001b3n;

const TWO_POW_53 = 2 ** 53;

const utf8 = new TextEncoder();

/** Coerce a seed-like value to an unsigned 64-bit BigInt. */
export function toU64(value: bigint | number): bigint {
  if (typeof value === "number") {
    if (!Number.isSafeInteger(value)) {
      throw new TypeError(`seed must be a safe integer or BigInt, got ${value}`);
    }
    return BigInt(value) & MASK64;
  }
  return value & MASK64;
}

function mix64(z: bigint): bigint {
  z = ((z ^ (z >> 30n)) * MIX_A) & MASK64;
  z = ((z ^ (z >> 27n)) * MIX_B) & MASK64;
  return z ^ (z >> 31n);
}

/** 64-bit FNV-1a hash of the UTF-8 encoding of `text`. */
export function fnv1a64(text: string): bigint {
  let h = FNV_OFFSET;
  for (const byte of utf8.encode(text)) {
    h = ((h ^ BigInt(byte)) * FNV_PRIME) & MASK64;
  }
  return h;
}

/** Deterministic 64-bit stream with a fixed, platform-independent sequence. */
export class RngStream {
  state: bigint;

  constructor(state: bigint | number) {
    this.state = toU64(state);
  }

  /** Advance the state by the golden-gamma increment and mix it. */
  nextU64(): bigint {
    this.state = (this.state + GOLDEN) & MASK64;
    return mix64(this.state);
  }

  /** Uniform double in [0, 1): top 53 bits of the next output over 2^53. */
  unitFloat(): number {
    return Number(this.nextU64() >> 11n) / TWO_POW_53;
  }
}

/**
 * Create the child stream for one (image, sample, epoch) triple.
 *
 * The child state mixes the global seed with an FNV-1a hash of the image id
 * and odd-constant multiples of the sample index and epoch, so distinct
 * triples get decorrelated streams without any shared mutable state.
 */
export function deriveStream(
  seed: bigint | number,
  imageId = "",
  sampleIndex = 0,
  epoch = 0,
): RngStream {
  let key = toU64(seed) ^ fnv1a64(imageId);
  key ^= (BigInt(sampleIndex) * SAMPLE_KEY) & MASK64;
  key ^= (BigInt(epoch) * GOLDEN) & MASK64;
  return new RngStream(mix64(key));
}

/**
 * First `n` raw outputs of the stream seeded with `seed`.
 *
 * Conformance hook: must equal the CLI's `rng-vector` output line for line
 * (seed 0 starts 0xE220A8397B1DCDAF, ...).
 */
export function rngReferenceVector(seed: bigint | number, n: number): bigint[] {
  if (!Number.isInteger(n) || n < 1) {
    throw new RangeError(`vector length must be >= 1, got ${n}`);
  }
  const stream = new RngStream(seed);
  return Array.from({ length: n }, () => stream.nextU64());
}
