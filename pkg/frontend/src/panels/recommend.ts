// Recommendation panel: template thumbnails with a random badge, dominant
// color palette (hover shows RGB), pin toggles and click-to-apply.

import type { ApiClient } from "../api.js";
import type { StudioState } from "../state.js";
import type { MetricReport, Recommendation } from "../types.js";

export interface RecommendHandlers {
  onApply(entryId: string): void;
  onPinToggle(rec: Recommendation): void;
  onHover(report: MetricReport | null): void;
}

export function renderRecommendPanel(
  container: HTMLElement,
  state: StudioState,
  api: ApiClient,
  handlers: RecommendHandlers,
): void {
  container.textContent = "";
  const recs = state.visibleRecommendations();
  if (recs.length === 0) {
    const note = document.createElement("p");
    note.className = "panel-note";
    note.textContent = "No templates yet.";
    container.appendChild(note);
    return;
  }

  for (const rec of recs) {
    const card = document.createElement("div");
    card.className = "rec-card";
    card.dataset.entryId = rec.entry_id;

    const thumb = document.createElement("img");
    thumb.className = "rec-thumb";
    thumb.src = api.thumbnailUrl(rec.entry_id);
    thumb.alt = rec.entry_id;
    thumb.addEventListener("click", () => handlers.onApply(rec.entry_id));
    card.appendChild(thumb);

    if (rec.is_random) {
      const badge = document.createElement("span");
      badge.className = "random-badge";
      badge.textContent = "✦ random";
      badge.title = "Random example for diversity, not a similarity match";
      card.appendChild(badge);
    }

    const pin = document.createElement("button");
    pin.className = state.isPinned(rec.entry_id) ? "pin-btn pinned" : "pin-btn";
    pin.textContent = state.isPinned(rec.entry_id) ? "unpin" : "pin";
    pin.addEventListener("click", (ev) => {
      ev.stopPropagation();
      handlers.onPinToggle(rec);
    });
    card.appendChild(pin);

    const palette = document.createElement("div");
    palette.className = "rec-palette";
    for (const swatch of rec.palette) {
      const chip = document.createElement("span");
      chip.className = "palette-chip";
      const [r, g, b] = swatch.rgb;
      chip.style.background = `rgb(${r}, ${g}, ${b})`;
      chip.title = `RGB(${r}, ${g}, ${b})`;
      palette.appendChild(chip);
    }
    card.appendChild(palette);

    card.addEventListener("mouseenter", () => handlers.onHover(rec.report));
    card.addEventListener("mouseleave", () => handlers.onHover(null));
    container.appendChild(card);
  }
}
