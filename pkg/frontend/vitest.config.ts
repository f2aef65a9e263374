import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // The cross-check suite shells out to the Python CLI many times.
    testTimeout: 600_000,
    hookTimeout: 60_000,
  },
});
