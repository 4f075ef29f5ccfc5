// Blue-green-yellow-red attention colormap; anchors match the service's
// heatmap renderer so the in-browser canvas and the PNG endpoint agree.

export type RGB = [number, number, number];

const ANCHORS: Array<[number, RGB]> = [
  [0, [0, 0, 255]],
  [85, [0, 255, 0]],
  [170, [255, 255, 0]],
  [255, [255, 0, 0]],
];

export function valueToColor(value: number): RGB {
  const v = Math.min(Math.max(Math.round(value), 0), 255);
  for (let i = 0; i < ANCHORS.length - 1; i++) {
    const [v0, c0] = ANCHORS[i];
    const [v1, c1] = ANCHORS[i + 1];
    if (v <= v1) {
      const t = (v - v0) / (v1 - v0);
      return [
        Math.round(c0[0] + t * (c1[0] - c0[0])),
        Math.round(c0[1] + t * (c1[1] - c0[1])),
        Math.round(c0[2] + t * (c1[2] - c0[2])),
      ];
    }
  }
  return ANCHORS[ANCHORS.length - 1][1];
}

/** Decode the bundle's base64 row-major attention bytes. */
export function decodeAttentionValues(base64: string): Uint8Array {
  if (typeof atob === "function") {
    const raw = atob(base64);
    const out = new Uint8Array(raw.length);
    for (let i = 0; i < raw.length; i++) {
      out[i] = raw.charCodeAt(i);
    }
    return out;
  }
  // node (tests)
  return new Uint8Array(Buffer.from(base64, "base64"));
}
