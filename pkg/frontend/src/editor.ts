// Pure canvas-document mutations.  Every function returns a new document;
// the undo stack in StudioState snapshots the previous one.

import type { Bounds, ElementKind, LayoutDocument, LayoutElement } from "./types.js";

const DEFAULT_SIZES: Record<ElementKind, [number, number]> = {
  text: [140, 24],
  edit_text: [200, 40],
  button: [120, 40],
  image_button: [48, 48],
  image: [160, 120],
  icon: [32, 32],
  shape: [120, 80],
  pagination: [80, 16],
  container: [200, 160],
};

const TEXT_KINDS: ElementKind[] = ["text", "edit_text", "button", "pagination"];

export function cloneDocument(doc: LayoutDocument): LayoutDocument {
  return JSON.parse(JSON.stringify(doc)) as LayoutDocument;
}

export function emptyDocument(width = 360, height = 640): LayoutDocument {
  return { schema_version: 1, canvas: { width, height }, elements: [] };
}

export function countElements(doc: LayoutDocument): number {
  let count = 0;
  const walk = (items: LayoutElement[]) => {
    for (const item of items) {
      count += 1;
      if (item.children) walk(item.children);
    }
  };
  walk(doc.elements);
  return count;
}

function nextId(doc: LayoutDocument): string {
  const taken = new Set<string>();
  const walk = (items: LayoutElement[]) => {
    for (const item of items) {
      taken.add(item.id);
      if (item.children) walk(item.children);
    }
  };
  walk(doc.elements);
  let i = taken.size + 1;
  while (taken.has(`e${i}`)) i += 1;
  return `e${i}`;
}

function clampBounds(b: Bounds, canvasW: number, canvasH: number): Bounds {
  const x = Math.min(Math.max(b.x, 0), canvasW);
  const y = Math.min(Math.max(b.y, 0), canvasH);
  return {
    x,
    y,
    w: Math.max(Math.min(b.x + Math.max(b.w, 0), canvasW) - x, 0),
    h: Math.max(Math.min(b.y + Math.max(b.h, 0), canvasH) - y, 0),
  };
}

function mapElement(
  doc: LayoutDocument,
  id: string,
  fn: (el: LayoutElement) => LayoutElement,
): LayoutDocument {
  const next = cloneDocument(doc);
  const walk = (items: LayoutElement[]): boolean => {
    for (let i = 0; i < items.length; i++) {
      if (items[i].id === id) {
        items[i] = fn(items[i]);
        return true;
      }
      const children = items[i].children;
      if (children && walk(children)) return true;
    }
    return false;
  };
  walk(next.elements);
  return next;
}

export function addElement(
  doc: LayoutDocument,
  kind: ElementKind,
  x: number,
  y: number,
): LayoutDocument {
  const next = cloneDocument(doc);
  const [w, h] = DEFAULT_SIZES[kind];
  const element: LayoutElement = {
    id: nextId(doc),
    kind,
    bounds: clampBounds({ x, y, w, h }, doc.canvas.width, doc.canvas.height),
  };
  if (kind === "image" || kind === "icon" || kind === "image_button") {
    element.fill_color = "#90A4AE";
  } else if (kind === "shape" || kind === "container") {
    element.fill_color = "#E0E0E0";
  } else if (kind === "button") {
    element.fill_color = "#4285F4";
  }
  if (TEXT_KINDS.includes(kind)) {
    element.text = {
      content: kind === "button" ? "Button" : "Text",
      font_family: "Roboto",
      font_size: 14,
      color: kind === "button" ? "#FFFFFF" : "#212121",
    };
  }
  next.elements.push(element);
  return next;
}

export function moveElement(doc: LayoutDocument, id: string, dx: number, dy: number): LayoutDocument {
  return mapElement(doc, id, (el) => ({
    ...el,
    bounds: clampBounds(
      { ...el.bounds, x: el.bounds.x + dx, y: el.bounds.y + dy },
      doc.canvas.width,
      doc.canvas.height,
    ),
  }));
}

export function resizeElement(doc: LayoutDocument, id: string, w: number, h: number): LayoutDocument {
  return mapElement(doc, id, (el) => ({
    ...el,
    bounds: clampBounds({ ...el.bounds, w, h }, doc.canvas.width, doc.canvas.height),
  }));
}

export function recolorElement(doc: LayoutDocument, id: string, fill: string): LayoutDocument {
  return mapElement(doc, id, (el) => ({ ...el, fill_color: fill }));
}

export function setElementText(doc: LayoutDocument, id: string, content: string): LayoutDocument {
  return mapElement(doc, id, (el) => {
    if (!el.text) return el;
    return { ...el, text: { ...el.text, content } };
  });
}

export function removeElement(doc: LayoutDocument, id: string): LayoutDocument {
  const next = cloneDocument(doc);
  const prune = (items: LayoutElement[]): LayoutElement[] =>
    items.filter((item) => item.id !== id).map((item) =>
      item.children ? { ...item, children: prune(item.children) } : item,
    );
  next.elements = prune(next.elements);
  return next;
}

export function findElement(doc: LayoutDocument, id: string): LayoutElement | null {
  let found: LayoutElement | null = null;
  const walk = (items: LayoutElement[]) => {
    for (const item of items) {
      if (item.id === id) {
        found = item;
        return;
      }
      if (item.children) walk(item.children);
    }
  };
  walk(doc.elements);
  return found;
}

/** Replace the canvas content with a (server-scaled) template's elements. */
export function applyTemplate(doc: LayoutDocument, template: LayoutDocument): LayoutDocument {
  const next = cloneDocument(template);
  next.canvas = { ...doc.canvas };
  delete next.meta;
  return next;
}
