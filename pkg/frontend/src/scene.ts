/** Backend-independent plot construction: series, axes, ticks, overlay markers. */

import type { Marker } from "./markers.js";

export type Element =
  | { kind: "rect"; x: number; y: number; w: number; h: number; fill: string }
  | { kind: "line"; x1: number; y1: number; x2: number; y2: number; color: string; width: number; dashed?: boolean }
  | { kind: "polyline"; points: Array<[number, number]>; color: string; width: number }
  | { kind: "text"; x: number; y: number; text: string; size: number; color: string; anchor: "start" | "middle" | "end" };

export interface Scene {
  width: number;
  height: number;
  elements: Element[];
}

export interface Series {
  label: string;
  x: number[];
  y: number[];
}

export interface PlotOptions {
  title?: string;
  xLabel: string;
  yLabel: string;
  width?: number;
  height?: number;
  markers?: Marker[];
}

export const SERIES_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
const MARKER_COLOR = "#888888";
const AXIS_COLOR = "#222222";

const MARGIN = { left: 64, right: 16, top: 34, bottom: 46 };

/** Round tick positions covering [lo, hi] with a 1-2-5 mantissa progression. */
export function ticks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const raw = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = mag;
  for (const mult of [1, 2, 5, 10]) {
    if (raw <= mult * mag) {
      step = mult * mag;
      break;
    }
  }
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function formatTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 0.01 && a < 10000) {
    return String(parseFloat(v.toPrecision(4)));
  }
  return v.toExponential(1);
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

export function buildScene(seriesList: Series[], opts: PlotOptions): Scene {
  const width = opts.width ?? 720;
  const height = opts.height ?? 480;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  let xLo = Infinity;
  let xHi = -Infinity;
  for (const s of seriesList) {
    const [lo, hi] = extent(s.x);
    xLo = Math.min(xLo, lo);
    xHi = Math.max(xHi, hi);
  }
  if (!(xHi > xLo)) {
    xHi = xLo + 1;
  }
  const yLo = 0;
  const yHi = 1;

  const sx = (x: number) => MARGIN.left + ((x - xLo) / (xHi - xLo)) * plotW;
  const sy = (y: number) => MARGIN.top + (1 - (y - yLo) / (yHi - yLo)) * plotH;

  const el: Element[] = [];
  el.push({ kind: "rect", x: 0, y: 0, w: width, h: height, fill: "#ffffff" });

  // gridless frame with ticks
  for (const t of ticks(xLo, xHi)) {
    const px = sx(t);
    el.push({ kind: "line", x1: px, y1: sy(0), x2: px, y2: sy(0) + 5, color: AXIS_COLOR, width: 1 });
    el.push({ kind: "text", x: px, y: sy(0) + 18, text: formatTick(t), size: 11, color: AXIS_COLOR, anchor: "middle" });
  }
  for (const t of ticks(yLo, yHi, 5)) {
    const py = sy(t);
    el.push({ kind: "line", x1: MARGIN.left - 5, y1: py, x2: MARGIN.left, y2: py, color: AXIS_COLOR, width: 1 });
    el.push({ kind: "text", x: MARGIN.left - 9, y: py + 4, text: formatTick(t), size: 11, color: AXIS_COLOR, anchor: "end" });
  }

  // overlay markers behind the data
  for (const m of opts.markers ?? []) {
    if (m.x < xLo || m.x > xHi) continue;
    const px = sx(m.x);
    el.push({ kind: "line", x1: px, y1: sy(yHi), x2: px, y2: sy(yLo), color: MARKER_COLOR, width: 1, dashed: true });
    el.push({ kind: "text", x: px, y: MARGIN.top - 4, text: m.label, size: 9, color: MARKER_COLOR, anchor: "middle" });
  }

  seriesList.forEach((s, i) => {
    const color = SERIES_COLORS[i % SERIES_COLORS.length];
    const points: Array<[number, number]> = s.x.map((x, k) => [sx(x), sy(Math.min(Math.max(s.y[k], yLo), yHi))]);
    el.push({ kind: "polyline", points, color, width: 1.5 });
    el.push({
      kind: "text",
      x: width - MARGIN.right - 6,
      y: MARGIN.top + 16 + 14 * i,
      text: s.label,
      size: 11,
      color,
      anchor: "end",
    });
  });

  // axes frame
  el.push({ kind: "line", x1: MARGIN.left, y1: sy(yLo), x2: MARGIN.left + plotW, y2: sy(yLo), color: AXIS_COLOR, width: 1 });
  el.push({ kind: "line", x1: MARGIN.left, y1: sy(yLo), x2: MARGIN.left, y2: sy(yHi), color: AXIS_COLOR, width: 1 });

  el.push({ kind: "text", x: MARGIN.left + plotW / 2, y: height - 12, text: opts.xLabel, size: 12, color: AXIS_COLOR, anchor: "middle" });
  el.push({ kind: "text", x: 16, y: MARGIN.top - 14, text: opts.yLabel, size: 12, color: AXIS_COLOR, anchor: "start" });
  if (opts.title) {
    el.push({ kind: "text", x: width / 2, y: 16, text: opts.title, size: 13, color: AXIS_COLOR, anchor: "middle" });
  }

  return { width, height, elements: el };
}
