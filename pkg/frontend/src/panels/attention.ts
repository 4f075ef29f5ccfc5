// Attention panel: the predicted-attention grid colormapped onto a canvas,
// scaled to the studio canvas aspect.

import { decodeAttentionValues, valueToColor } from "../colormap.js";
import type { FeedbackBundle } from "../types.js";

export function renderAttentionPanel(
  container: HTMLElement,
  bundle: FeedbackBundle | null,
): void {
  container.textContent = "";
  if (!bundle) {
    return;
  }
  if (!bundle.attention) {
    const note = document.createElement("p");
    note.className = "panel-note";
    note.textContent = bundle.attention_error
      ? `Attention unavailable: ${bundle.attention_error.message}`
      : "Attention unavailable.";
    container.appendChild(note);
    return;
  }

  const { width, height } = bundle.attention;
  const values = decodeAttentionValues(bundle.attention.values);
  const canvas = document.createElement("canvas");
  canvas.className = "attention-canvas";
  canvas.width = width;
  canvas.height = height;
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const image = ctx.createImageData(width, height);
  for (let i = 0; i < values.length; i++) {
    const [r, g, b] = valueToColor(values[i]);
    image.data[i * 4] = r;
    image.data[i * 4 + 1] = g;
    image.data[i * 4 + 2] = b;
    image.data[i * 4 + 3] = 255;
  }
  ctx.putImageData(image, 0, 0);
  container.appendChild(canvas);
}
