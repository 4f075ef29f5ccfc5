// Design studio bootstrap: canvas editing on the left, live feedback panels
// (evaluation, recommendation, attention) on the right.  Every committed edit
// schedules one debounced feedback request; editing never blocks on it.

import { ApiClient } from "./api.js";
import {
  addElement,
  applyTemplate,
  emptyDocument,
  findElement,
  moveElement,
  recolorElement,
  removeElement,
  resizeElement,
  setElementText,
} from "./editor.js";
import { renderAttentionPanel } from "./panels/attention.js";
import { renderEvaluationPanel } from "./panels/evaluation.js";
import { renderRecommendPanel } from "./panels/recommend.js";
import { FeedbackScheduler } from "./scheduler.js";
import { StudioState } from "./state.js";
import type { ElementKind, LayoutDocument, LayoutElement, MetricReport } from "./types.js";

const KINDS: ElementKind[] = [
  "text", "edit_text", "button", "image_button", "image",
  "icon", "shape", "pagination", "container",
];

const qs = <T extends HTMLElement>(sel: string): T => {
  const node = document.querySelector(sel);
  if (!node) throw new Error(`missing ${sel}`);
  return node as T;
};

const apiBase = new URLSearchParams(location.search).get("api") ?? "http://127.0.0.1:8080";
const api = new ApiClient(apiBase);
const state = new StudioState(emptyDocument());
let hoveredReport: MetricReport | null = null;

const canvasEl = qs<HTMLDivElement>("#canvas");
const banner = qs<HTMLDivElement>("#banner");
const evalPanel = qs<HTMLDivElement>("#evaluation-panel");
const recPanel = qs<HTMLDivElement>("#recommend-panel");
const attnPanel = qs<HTMLDivElement>("#attention-panel");
const inspector = qs<HTMLDivElement>("#inspector");

const scheduler = new FeedbackScheduler(
  (doc, signal) => api.feedback(doc, { k_similar: 8, n_random: 4 }, signal),
  (bundle) => {
    state.applyBundle(bundle);
    renderPanels();
  },
  () => {
    state.markStale();
    renderPanels();
  },
);

function commit(next: LayoutDocument): void {
  state.commit(next);
  scheduler.schedule(state.doc);
  renderCanvas();
}

// --- canvas -----------------------------------------------------------

function renderCanvas(): void {
  canvasEl.textContent = "";
  canvasEl.style.width = `${state.doc.canvas.width}px`;
  canvasEl.style.height = `${state.doc.canvas.height}px`;
  const draw = (elements: LayoutElement[]) => {
    for (const el of elements) {
      const node = document.createElement("div");
      node.className = `element kind-${el.kind}`;
      if (el.id === state.selectedId) node.classList.add("selected");
      node.dataset.id = el.id;
      node.style.left = `${el.bounds.x}px`;
      node.style.top = `${el.bounds.y}px`;
      node.style.width = `${el.bounds.w}px`;
      node.style.height = `${el.bounds.h}px`;
      if (el.fill_color) node.style.background = el.fill_color;
      if (el.text) {
        node.textContent = el.text.content;
        node.style.color = el.text.color;
        node.style.fontFamily = el.text.font_family;
        node.style.fontSize = `${el.text.font_size}px`;
      }
      node.addEventListener("pointerdown", (ev) => startDrag(ev, el.id));
      canvasEl.appendChild(node);
      if (el.children) draw(el.children);
    }
  };
  draw(state.doc.elements);
  renderInspector();
}

function startDrag(ev: PointerEvent, id: string): void {
  ev.preventDefault();
  ev.stopPropagation();
  state.selectedId = id;
  renderCanvas();
  const startX = ev.clientX;
  const startY = ev.clientY;
  let moved = false;
  const onMove = (m: PointerEvent) => {
    const node = canvasEl.querySelector<HTMLElement>(`[data-id="${id}"]`);
    const el = findElement(state.doc, id);
    if (!node || !el) return;
    moved = true;
    node.style.left = `${el.bounds.x + (m.clientX - startX)}px`;
    node.style.top = `${el.bounds.y + (m.clientY - startY)}px`;
  };
  const onUp = (m: PointerEvent) => {
    window.removeEventListener("pointermove", onMove);
    window.removeEventListener("pointerup", onUp);
    if (moved) {
      commit(moveElement(state.doc, id, m.clientX - startX, m.clientY - startY));
    }
  };
  window.addEventListener("pointermove", onMove);
  window.addEventListener("pointerup", onUp);
}

canvasEl.addEventListener("pointerdown", () => {
  state.selectedId = null;
  renderCanvas();
});

// --- inspector ---------------------------------------------------------

function renderInspector(): void {
  inspector.textContent = "";
  const el = state.selectedId ? findElement(state.doc, state.selectedId) : null;
  if (!el) {
    const note = document.createElement("p");
    note.className = "panel-note";
    note.textContent = "Select an element to edit it.";
    inspector.appendChild(note);
    return;
  }
  const title = document.createElement("div");
  title.className = "inspector-title";
  title.textContent = `${el.kind} · ${el.id}`;
  inspector.appendChild(title);

  const sizeRow = document.createElement("div");
  sizeRow.className = "inspector-row";
  const wInput = document.createElement("input");
  wInput.type = "number";
  wInput.value = String(el.bounds.w);
  const hInput = document.createElement("input");
  hInput.type = "number";
  hInput.value = String(el.bounds.h);
  const applySize = () =>
    commit(resizeElement(state.doc, el.id, Number(wInput.value), Number(hInput.value)));
  wInput.addEventListener("change", applySize);
  hInput.addEventListener("change", applySize);
  sizeRow.append("w", wInput, "h", hInput);
  inspector.appendChild(sizeRow);

  const colorRow = document.createElement("div");
  colorRow.className = "inspector-row";
  const colorInput = document.createElement("input");
  colorInput.type = "color";
  colorInput.value = el.fill_color ?? "#E0E0E0";
  colorInput.addEventListener("change", () =>
    commit(recolorElement(state.doc, el.id, colorInput.value.toUpperCase())));
  colorRow.append("fill", colorInput);
  inspector.appendChild(colorRow);

  if (el.text) {
    const textRow = document.createElement("div");
    textRow.className = "inspector-row";
    const textInput = document.createElement("input");
    textInput.type = "text";
    textInput.value = el.text.content;
    textInput.addEventListener("change", () =>
      commit(setElementText(state.doc, el.id, textInput.value)));
    textRow.append("text", textInput);
    inspector.appendChild(textRow);
  }

  const deleteBtn = document.createElement("button");
  deleteBtn.textContent = "Delete";
  deleteBtn.addEventListener("click", () => {
    state.selectedId = null;
    commit(removeElement(state.doc, el.id));
  });
  inspector.appendChild(deleteBtn);
}

// --- panels ------------------------------------------------------------

function renderPanels(): void {
  banner.style.display = state.staleData ? "block" : "none";
  renderEvaluationPanel(evalPanel, state.lastBundle, hoveredReport);
  renderRecommendPanel(recPanel, state, api, {
    onApply: (entryId) => {
      void api
        .fetchTemplate(entryId, state.doc.canvas.width, state.doc.canvas.height)
        .then((template) => commit(applyTemplate(state.doc, template)))
        .catch(() => {
          state.markStale();
          renderPanels();
        });
    },
    onPinToggle: (rec) => {
      state.togglePin(rec);
      renderPanels();
    },
    onHover: (report) => {
      hoveredReport = report;
      renderEvaluationPanel(evalPanel, state.lastBundle, hoveredReport);
    },
  });
  renderAttentionPanel(attnPanel, state.lastBundle);
}

// --- toolbar -----------------------------------------------------------

function buildPalette(): void {
  const palette = qs<HTMLDivElement>("#palette");
  for (const kind of KINDS) {
    const btn = document.createElement("button");
    btn.className = "palette-btn";
    btn.textContent = kind.replace("_", " ");
    btn.addEventListener("click", () => {
      const x = 40 + (state.doc.elements.length * 24) % 160;
      const y = 40 + (state.doc.elements.length * 32) % 320;
      commit(addElement(state.doc, kind, x, y));
    });
    palette.appendChild(btn);
  }
}

qs<HTMLButtonElement>("#undo-btn").addEventListener("click", () => {
  if (state.undo()) {
    scheduler.schedule(state.doc);
    renderCanvas();
  }
});
qs<HTMLButtonElement>("#redo-btn").addEventListener("click", () => {
  if (state.redo()) {
    scheduler.schedule(state.doc);
    renderCanvas();
  }
});
qs<HTMLButtonElement>("#export-btn").addEventListener("click", () => {
  const blob = new Blob([JSON.stringify(state.doc, null, 2)], { type: "application/json" });
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = "layout.json";
  a.click();
  URL.revokeObjectURL(a.href);
});
qs<HTMLInputElement>("#import-input").addEventListener("change", (ev) => {
  const file = (ev.target as HTMLInputElement).files?.[0];
  if (!file) return;
  void file.text().then((text) => {
    commit(JSON.parse(text) as LayoutDocument);
  });
});

buildPalette();
renderCanvas();
renderPanels();
void scheduler.fireNow(state.doc);
void api.health().then((h) => {
  qs<HTMLSpanElement>("#status").textContent =
    `corpus ${h.corpus_size} · ${h.embedding_mode} embeddings`;
}).catch(() => {
  qs<HTMLSpanElement>("#status").textContent = "service offline";
});
