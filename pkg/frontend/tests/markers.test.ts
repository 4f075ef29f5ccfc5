import { describe, expect, it } from "vitest";

import { barHeights, markerPosition } from "../src/markers.js";

describe("markerPosition", () => {
  it("is within one pixel of score times axis width", () => {
    const axis = 200;
    for (let i = 0; i <= 100; i++) {
      const score = i / 100;
      expect(Math.abs(markerPosition(score, axis) - score * axis)).toBeLessThanOrEqual(1);
    }
  });

  it("a perfect score sits at the right edge", () => {
    expect(markerPosition(1.0, 200)).toBe(200);
  });

  it("zero sits at the left edge", () => {
    expect(markerPosition(0.0, 200)).toBe(0);
  });

  it("clamps out-of-range scores", () => {
    expect(markerPosition(1.2, 200)).toBe(200);
    expect(markerPosition(-0.2, 200)).toBe(0);
  });
});

describe("barHeights", () => {
  it("scales the tallest bin to the full height", () => {
    const hist = { bin_count: 4, range: [0, 1] as [number, number], counts: [1, 4, 2, 0] };
    expect(barHeights(hist, 40)).toEqual([10, 40, 20, 0]);
  });

  it("handles the all-zero histogram", () => {
    const hist = { bin_count: 3, range: [0, 1] as [number, number], counts: [0, 0, 0] };
    expect(barHeights(hist, 40)).toEqual([0, 0, 0]);
  });
});
