// Wire types for the feedback service (HTTP/JSON API v1).

export type ElementKind =
  | "text"
  | "edit_text"
  | "button"
  | "image_button"
  | "image"
  | "icon"
  | "shape"
  | "pagination"
  | "container";

export interface Bounds {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface TextStyle {
  content: string;
  font_family: string;
  font_size: number;
  color: string;
}

export interface LayoutElement {
  id: string;
  kind: ElementKind;
  bounds: Bounds;
  fill_color?: string;
  text?: TextStyle;
  children?: LayoutElement[];
}

export interface LayoutDocument {
  schema_version: 1;
  canvas: { width: number; height: number };
  elements: LayoutElement[];
  meta?: { app_id: string; category: string; rating: number };
}

export const METRIC_NAMES = [
  "element_balance",
  "alignment",
  "color_unity",
  "font_unity",
  "element_size",
  "density",
] as const;

export type MetricName = (typeof METRIC_NAMES)[number];

export const METRIC_LABELS: Record<MetricName, string> = {
  element_balance: "Element balance",
  alignment: "Alignment",
  color_unity: "Color unity",
  font_unity: "Font unity",
  element_size: "Element size",
  density: "Density",
};

export type MetricReport = Record<MetricName, number> & { overall: number };

export interface HistogramData {
  bin_count: number;
  range: [number, number];
  counts: number[];
}

export interface Swatch {
  rgb: [number, number, number];
  weight: number;
}

export interface Recommendation {
  entry_id: string;
  distance: number;
  is_random: boolean;
  palette: Swatch[];
  report: MetricReport;
}

export interface AttentionMapData {
  width: number;
  height: number;
  values: string; // base64 of row-major bytes
}

export interface FeedbackBundle {
  report: MetricReport;
  percentiles: Record<MetricName, number>;
  histograms: Record<MetricName, HistogramData>;
  recommendations: Recommendation[];
  palette: Swatch[];
  attention: AttentionMapData | null;
  attention_error: { code: string; message: string } | null;
  seed: number;
  embedding_mode: string;
  timing: Record<string, number>;
}

export interface FeedbackOptions {
  k_similar?: number;
  n_random?: number;
  seed?: number;
  min_rating?: number;
  category?: string;
}
