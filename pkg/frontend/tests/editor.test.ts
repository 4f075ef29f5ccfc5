import { describe, expect, it } from "vitest";

import {
  addElement,
  countElements,
  emptyDocument,
  findElement,
  moveElement,
  recolorElement,
  removeElement,
  resizeElement,
  setElementText,
} from "../src/editor.js";

describe("editor operations", () => {
  it("addElement assigns unique ids and default geometry", () => {
    let doc = emptyDocument();
    doc = addElement(doc, "button", 20, 30);
    doc = addElement(doc, "image", 50, 60);
    expect(doc.elements.length).toBe(2);
    expect(new Set(doc.elements.map((e) => e.id)).size).toBe(2);
    expect(doc.elements[0].text?.content).toBe("Button");
    expect(doc.elements[1].fill_color).toBeDefined();
  });

  it("moveElement clamps to the canvas", () => {
    let doc = addElement(emptyDocument(), "icon", 0, 0);
    const id = doc.elements[0].id;
    doc = moveElement(doc, id, -100, 100000);
    const el = findElement(doc, id)!;
    expect(el.bounds.x).toBe(0);
    expect(el.bounds.y + el.bounds.h).toBeLessThanOrEqual(doc.canvas.height);
  });

  it("resize, recolor and text edits are applied immutably", () => {
    const doc = addElement(emptyDocument(), "button", 10, 10);
    const id = doc.elements[0].id;
    const resized = resizeElement(doc, id, 200, 60);
    expect(findElement(resized, id)!.bounds.w).toBe(200);
    expect(findElement(doc, id)!.bounds.w).not.toBe(200);

    const recolored = recolorElement(doc, id, "#FF0000");
    expect(findElement(recolored, id)!.fill_color).toBe("#FF0000");

    const retexted = setElementText(doc, id, "Buy now");
    expect(findElement(retexted, id)!.text?.content).toBe("Buy now");
  });

  it("removeElement drops nested nodes too", () => {
    let doc = addElement(emptyDocument(), "container", 0, 0);
    doc.elements[0].children = [
      { id: "kid", kind: "text", bounds: { x: 0, y: 0, w: 10, h: 10 } },
    ];
    expect(countElements(doc)).toBe(2);
    doc = removeElement(doc, "kid");
    expect(countElements(doc)).toBe(1);
  });
});
