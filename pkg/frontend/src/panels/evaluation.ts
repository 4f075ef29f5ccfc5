// Evaluation panel: six corpus histograms, a red marker at the current
// design's score and black markers at a hovered example's scores.

import { barHeights, markerPosition } from "../markers.js";
import type { FeedbackBundle, MetricReport } from "../types.js";
import { METRIC_LABELS, METRIC_NAMES } from "../types.js";

export const AXIS_WIDTH = 200;
const BAR_AREA_HEIGHT = 48;

export function renderEvaluationPanel(
  container: HTMLElement,
  bundle: FeedbackBundle | null,
  hovered: MetricReport | null,
): void {
  container.textContent = "";
  if (!bundle) {
    const note = document.createElement("p");
    note.className = "panel-note";
    note.textContent = "Waiting for feedback…";
    container.appendChild(note);
    return;
  }

  const overall = document.createElement("div");
  overall.className = "overall-score";
  overall.textContent = `Overall ${(bundle.report.overall * 100).toFixed(0)} / 100`;
  container.appendChild(overall);

  for (const name of METRIC_NAMES) {
    const row = document.createElement("div");
    row.className = "metric-row";

    const label = document.createElement("div");
    label.className = "metric-label";
    const pct = Math.round(bundle.percentiles[name] * 100);
    label.textContent = `${METRIC_LABELS[name]} · ${bundle.report[name].toFixed(2)} (p${pct})`;
    row.appendChild(label);

    const axis = document.createElement("div");
    axis.className = "metric-axis";
    axis.style.width = `${AXIS_WIDTH}px`;
    axis.style.height = `${BAR_AREA_HEIGHT}px`;

    const hist = bundle.histograms[name];
    const heights = barHeights(hist, BAR_AREA_HEIGHT);
    const binWidth = AXIS_WIDTH / hist.counts.length;
    heights.forEach((h, i) => {
      const bar = document.createElement("div");
      bar.className = "hist-bar";
      bar.style.left = `${i * binWidth}px`;
      bar.style.width = `${binWidth - 1}px`;
      bar.style.height = `${h}px`;
      axis.appendChild(bar);
    });

    const red = document.createElement("div");
    red.className = "marker marker-red";
    red.style.left = `${markerPosition(bundle.report[name], AXIS_WIDTH)}px`;
    axis.appendChild(red);

    if (hovered) {
      const black = document.createElement("div");
      black.className = "marker marker-black";
      black.style.left = `${markerPosition(hovered[name], AXIS_WIDTH)}px`;
      axis.appendChild(black);
    }

    row.appendChild(axis);
    container.appendChild(row);
  }
}
