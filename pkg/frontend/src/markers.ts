// Position math for the evaluation panel: histograms with a red marker at the
// current score and black markers at a hovered example's scores.

import type { HistogramData } from "./types.js";

/** Pixel offset of a score marker from the left edge of its axis. */
export function markerPosition(score: number, axisWidth: number): number {
  const clamped = Math.min(Math.max(score, 0), 1);
  return Math.round(clamped * axisWidth);
}

/** Bar heights in pixels for one histogram, tallest bin = maxHeight. */
export function barHeights(hist: HistogramData, maxHeight: number): number[] {
  const peak = Math.max(...hist.counts, 1);
  return hist.counts.map((c) => Math.round((c / peak) * maxHeight));
}
