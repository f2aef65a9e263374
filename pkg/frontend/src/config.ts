/**
 * Augmentation config: the same JSON object the robocrop CLI accepts.
 *
 * Field names are the wire names on purpose: one schema everywhere, no
 * mapping layer between what a config file says and what this library sees.
 */

import { ConfigError } from "./errors.js";

export const MODES = ["zoom", "random_crop"] as const;
export type AugmentMode = (typeof MODES)[number];

export interface AugmentConfig {
  enlarge_factor: number;
  zoom_min: number;
  zoom_max: number;
  target_w: number;
  target_h: number;
  flip_prob: number;
  mode: AugmentMode;
  crop_src_w: number | null;
  crop_src_h: number | null;
  samples_per_image: number;
}

export const DEFAULT_CONFIG: AugmentConfig = {
  enlarge_factor: 0.2,
  zoom_min: 1.0,
  zoom_max: 2.0,
  target_w: 227,
  target_h: 227,
  flip_prob: 0.5,
  mode: "zoom",
  crop_src_w: null,
  crop_src_h: null,
  samples_per_image: 1,
};

const NUMBER_FIELDS = ["enlarge_factor", "zoom_min", "zoom_max", "flip_prob"] as const;
const INT_FIELDS = ["target_w", "target_h", "samples_per_image"] as const;
const OPTIONAL_INT_FIELDS = ["crop_src_w", "crop_src_h"] as const;

/** Check every invariant; returns the config for chaining. */
export function validateConfig(cfg: AugmentConfig): AugmentConfig {
  for (const field of NUMBER_FIELDS) {
    if (typeof cfg[field] !== "number" || !Number.isFinite(cfg[field])) {
      throw new ConfigError(`${field} must be a finite number, got ${cfg[field]}`);
    }
  }
  for (const field of INT_FIELDS) {
    if (!Number.isInteger(cfg[field])) {
      throw new ConfigError(`${field} must be an integer, got ${cfg[field]}`);
    }
  }
  for (const field of OPTIONAL_INT_FIELDS) {
    const value = cfg[field];
    if (value !== null && !Number.isInteger(value)) {
      throw new ConfigError(`${field} must be an integer or null, got ${value}`);
    }
  }
  if (!MODES.includes(cfg.mode)) {
    throw new ConfigError(`mode must be one of ${JSON.stringify(MODES)}, got ${JSON.stringify(cfg.mode)}`);
  }
  if (cfg.enlarge_factor < 0) {
    throw new ConfigError(`enlarge_factor must be >= 0, got ${cfg.enlarge_factor}`);
  }
  if (!(cfg.zoom_min >= 1.0 && cfg.zoom_min <= cfg.zoom_max)) {
    throw new ConfigError(`need 1.0 <= zoom_min <= zoom_max, got [${cfg.zoom_min}, ${cfg.zoom_max}]`);
  }
  if (!(cfg.flip_prob >= 0.0 && cfg.flip_prob <= 1.0)) {
    throw new ConfigError(`flip_prob must be in [0, 1], got ${cfg.flip_prob}`);
  }
  if (cfg.target_w < 1 || cfg.target_h < 1) {
    throw new ConfigError(`target size must be >= 1x1, got ${cfg.target_w}x${cfg.target_h}`);
  }
  if (cfg.samples_per_image < 1) {
    throw new ConfigError(`samples_per_image must be >= 1, got ${cfg.samples_per_image}`);
  }
  if (cfg.mode === "random_crop") {
    if (cfg.crop_src_w === null || cfg.crop_src_h === null) {
      throw new ConfigError("random_crop mode requires crop_src_w and crop_src_h");
    }
    if (cfg.target_w > cfg.crop_src_w || cfg.target_h > cfg.crop_src_h) {
      throw new ConfigError(
        `target ${cfg.target_w}x${cfg.target_h} exceeds crop source ${cfg.crop_src_w}x${cfg.crop_src_h}`,
      );
    }
  }
  return cfg;
}

/**
 * Build a validated config from a JSON string, a partial object, or nothing.
 *
 * Missing fields take defaults; unknown keys are rejected so typos cannot
 * silently fall back to a default.
 */
export function parseConfig(value?: string | Partial<AugmentConfig> | null): AugmentConfig {
  if (value === undefined || value === null) {
    return { ...DEFAULT_CONFIG };
  }
  let raw: unknown = value;
  if (typeof value === "string") {
    try {
      raw = JSON.parse(value);
    } catch (exc) {
      throw new ConfigError(`config is not valid JSON: ${(exc as Error).message}`);
    }
  }
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new ConfigError(`config must be a JSON object, got ${JSON.stringify(raw)}`);
  }
  const unknown = Object.keys(raw).filter((key) => !(key in DEFAULT_CONFIG));
  if (unknown.length > 0) {
    throw new ConfigError(`unknown config keys: ${JSON.stringify(unknown.sort())}`);
  }
  return validateConfig({ ...DEFAULT_CONFIG, ...(raw as Partial<AugmentConfig>) });
}
