/** Panel renderers: each consumes one parsed input and draws one figure. */

import {
  AccuracyReport,
  TableData,
  WignerData,
  checksumOf,
} from "./csv.js";
import {
  CLASS_COLORS,
  SERIES_COLORS,
  divergingSigned,
  diverging,
  Rgb,
} from "./colormap.js";
import { BLACK, GRAY, Raster, WHITE } from "./raster.js";

export interface PanelGeometry {
  width: number;
  height: number;
  left: number;
  right: number;
  top: number;
  bottom: number;
}

const DEFAULT_GEOMETRY: PanelGeometry = {
  width: 640,
  height: 480,
  left: 64,
  right: 24,
  top: 28,
  bottom: 48,
};

class Plot {
  readonly raster: Raster;
  readonly geom: PanelGeometry;
  readonly xMin: number;
  readonly xMax: number;
  readonly yMin: number;
  readonly yMax: number;

  constructor(
    geom: PanelGeometry,
    xMin: number,
    xMax: number,
    yMin: number,
    yMax: number,
  ) {
    this.geom = geom;
    this.raster = new Raster(geom.width, geom.height);
    this.xMin = xMin;
    this.xMax = xMax === xMin ? xMin + 1 : xMax;
    this.yMin = yMin;
    this.yMax = yMax === yMin ? yMin + 1 : yMax;
  }

  get plotWidth(): number {
    return this.geom.width - this.geom.left - this.geom.right;
  }

  get plotHeight(): number {
    return this.geom.height - this.geom.top - this.geom.bottom;
  }

  px(x: number): number {
    return Math.round(
      this.geom.left + ((x - this.xMin) / (this.xMax - this.xMin)) * (this.plotWidth - 1),
    );
  }

  py(y: number): number {
    return Math.round(
      this.geom.top +
        (1 - (y - this.yMin) / (this.yMax - this.yMin)) * (this.plotHeight - 1),
    );
  }

  axes(xlabel: string, ylabel: string, title?: string): void {
    const g = this.geom;
    this.raster.frame(g.left - 1, g.top - 1, this.plotWidth + 2, this.plotHeight + 2, BLACK);
    for (const t of ticks(this.xMin, this.xMax)) {
      const x = this.px(t);
      this.raster.line(x, g.top + this.plotHeight, x, g.top + this.plotHeight + 4, BLACK);
      const label = fmt(t);
      this.raster.text(
        x - this.raster.measure(label) / 2,
        g.top + this.plotHeight + 8,
        label,
        BLACK,
      );
    }
    for (const t of ticks(this.yMin, this.yMax)) {
      const y = this.py(t);
      this.raster.line(g.left - 5, y, g.left - 1, y, BLACK);
      const label = fmt(t);
      this.raster.text(g.left - 8 - this.raster.measure(label), y - 3, label, BLACK);
    }
    this.raster.text(
      g.left + (this.plotWidth - this.raster.measure(xlabel)) / 2,
      g.top + this.plotHeight + 24,
      xlabel,
      BLACK,
    );
    this.raster.text(4, g.top - 16, ylabel, BLACK);
    if (title) {
      this.raster.text(
        g.left + (this.plotWidth - this.raster.measure(title)) / 2,
        8,
        title,
        BLACK,
      );
    }
  }
}

function ticks(min: number, max: number, target = 6): number[] {
  const span = max - min;
  if (!(span > 0) || !Number.isFinite(span)) return [min];
  const raw = span / target;
  const mag = 10 ** Math.floor(Math.log10(raw));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= target) ?? mag * 10;
  const out: number[] = [];
  for (let t = Math.ceil(min / step) * step; t <= max + 1e-12 * span; t += step) {
    out.push(Math.abs(t) < 1e-12 * span ? 0 : t);
  }
  return out;
}

function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) return v.toExponential(0).replace("e", "E");
  const s = a >= 100 ? v.toFixed(0) : a >= 1 ? v.toFixed(1) : v.toFixed(2);
  return s.replace(/\.?0+$/, "");
}

export function verifyChecksum(kind: string, expected: string, arrays: ArrayLike<number>[]): void {
  const actual = checksumOf(arrays);
  if (actual !== expected) {
    throw new Error(`${kind}: data changed between parse and render (${actual} != ${expected})`);
  }
  console.log(`${kind}: checksum ${expected} ok`);
}

export function renderWignerHeatmap(
  data: WignerData,
  xlabel: string,
  ylabel: string,
  title?: string,
): Raster {
  verifyChecksum("wigner", data.checksum, [data.values]);
  const geom = { ...DEFAULT_GEOMETRY, width: 560, height: 560, right: 56 };
  const plot = new Plot(geom, data.reMin, data.reMax, data.imMin, data.imMax);
  let absMax = 0;
  for (const v of data.values) absMax = Math.max(absMax, Math.abs(v));
  const res = data.resolution;
  for (let py = 0; py < plot.plotHeight; py++) {
    // image rows run top-down; grid rows follow increasing Im
    const gy = Math.min(res - 1, Math.round(((plot.plotHeight - 1 - py) / (plot.plotHeight - 1)) * (res - 1)));
    for (let px = 0; px < plot.plotWidth; px++) {
      const gx = Math.min(res - 1, Math.round((px / (plot.plotWidth - 1)) * (res - 1)));
      plot.raster.set(
        geom.left + px,
        geom.top + py,
        divergingSigned(data.values[gy * res + gx], absMax),
      );
    }
  }
  plot.axes(xlabel, ylabel, title);
  // color bar, symmetric about zero
  const barX = geom.width - 40;
  for (let py = 0; py < plot.plotHeight; py++) {
    const t = 1 - py / (plot.plotHeight - 1);
    for (let dx = 0; dx < 14; dx++) {
      plot.raster.set(barX + dx, geom.top + py, diverging(t));
    }
  }
  plot.raster.frame(barX - 1, geom.top - 1, 16, plot.plotHeight + 2, BLACK);
  plot.raster.text(barX - 8, geom.top + plot.plotHeight + 8, `+-${fmt(absMax)}`, BLACK);
  return plot.raster;
}

export function renderTrajectory(
  data: TableData,
  xlabel: string,
  ylabel: string,
  columns?: string[],
  title?: string,
): Raster {
  verifyChecksum("trajectory", data.checksum, data.data);
  const xIdx = 0;
  const names = columns ?? data.columns.slice(1);
  const series = names.map((name) => {
    const idx = data.columns.indexOf(name);
    if (idx < 0) throw new Error(`trajectory: no column '${name}'`);
    return { name, values: data.data[idx] };
  });
  const xs = data.data[xIdx];
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const s of series) {
    for (const v of s.values) {
      if (Number.isFinite(v)) {
        yMin = Math.min(yMin, v);
        yMax = Math.max(yMax, v);
      }
    }
  }
  const pad = 0.05 * (yMax - yMin || 1);
  const plot = new Plot(DEFAULT_GEOMETRY, xs[0], xs[xs.length - 1], yMin - pad, yMax + pad);
  plot.axes(xlabel, ylabel, title);
  series.forEach((s, k) => {
    const color = SERIES_COLORS[k % SERIES_COLORS.length];
    for (let i = 1; i < data.rows; i++) {
      if (!Number.isFinite(s.values[i - 1]) || !Number.isFinite(s.values[i])) continue;
      plot.raster.line(
        plot.px(xs[i - 1]),
        plot.py(s.values[i - 1]),
        plot.px(xs[i]),
        plot.py(s.values[i]),
        color,
      );
    }
    const lx = plot.geom.left + 8;
    const ly = plot.geom.top + 6 + 12 * k;
    plot.raster.rect(lx, ly + 2, 10, 3, color);
    plot.raster.text(lx + 14, ly, s.name, BLACK);
  });
  return plot.raster;
}

export function renderPhotonBars(
  data: TableData,
  xlabel: string,
  ylabel: string,
  title?: string,
): Raster {
  verifyChecksum("photon", data.checksum, data.data);
  const ns = data.data[0];
  const ps = data.data[1];
  let pMax = 0;
  for (const p of ps) pMax = Math.max(pMax, p);
  const plot = new Plot(DEFAULT_GEOMETRY, -0.5, ns[ns.length - 1] + 0.5, 0, pMax * 1.08 || 1);
  plot.axes(xlabel, ylabel, title);
  const barW = Math.max(2, Math.floor(plot.plotWidth / ns.length) - 4);
  for (let i = 0; i < ns.length; i++) {
    const x = plot.px(ns[i]);
    const y = plot.py(Math.max(0, ps[i]));
    const y0 = plot.py(0);
    plot.raster.rect(x - Math.floor(barW / 2), y, barW, Math.max(0, y0 - y), SERIES_COLORS[0]);
  }
  return plot.raster;
}

export function renderAccuracyBars(report: AccuracyReport, ylabel: string, title?: string): Raster {
  verifyChecksum(
    "report",
    report.checksum,
    report.variants.map((v) => Float64Array.from([v.mean, v.std, ...v.accuracies])),
  );
  const geom = { ...DEFAULT_GEOMETRY, bottom: 64 };
  const plot = new Plot(geom, 0, report.variants.length, 0, 1.05);
  plot.axes("", ylabel, title);
  report.variants.forEach((v, k) => {
    const color = SERIES_COLORS[k % SERIES_COLORS.length];
    const xc = plot.px(k + 0.5);
    const half = Math.floor(plot.plotWidth / report.variants.length / 3);
    const yTop = plot.py(v.mean);
    const y0 = plot.py(0);
    plot.raster.rect(xc - half, yTop, 2 * half, y0 - yTop, color);
    // std whiskers
    const yHi = plot.py(Math.min(1, v.mean + v.std));
    const yLo = plot.py(Math.max(0, v.mean - v.std));
    plot.raster.line(xc, yHi, xc, yLo, BLACK);
    plot.raster.line(xc - 5, yHi, xc + 5, yHi, BLACK);
    plot.raster.line(xc - 5, yLo, xc + 5, yLo, BLACK);
    const label = v.name.replace(/_/g, " ");
    plot.raster.text(
      Math.max(2, xc - plot.raster.measure(label) / 2),
      geom.top + plot.plotHeight + 22 + (k % 2) * 10,
      label,
      BLACK,
    );
    const pct = `${(100 * v.mean).toFixed(1)}%`;
    plot.raster.text(xc - plot.raster.measure(pct) / 2, yTop - 10, pct, BLACK);
  });
  return plot.raster;
}

export function renderBoundaryScatter(
  boundary: TableData,
  dataset: TableData,
  xlabel: string,
  ylabel: string,
  title?: string,
): Raster {
  verifyChecksum("boundary", boundary.checksum, boundary.data);
  verifyChecksum("dataset", dataset.checksum, dataset.data);
  for (const [table, cols, what] of [
    [boundary, ["x", "y", "p"], "boundary"],
    [dataset, ["x", "y", "label"], "dataset"],
  ] as const) {
    cols.forEach((c, i) => {
      if (table.columns[i] !== c) {
        throw new Error(`${what}: expected column ${i} to be '${c}', got '${table.columns[i]}'`);
      }
    });
  }
  const bx = boundary.data[0];
  const by = boundary.data[1];
  const bp = boundary.data[2];
  const res = Math.round(Math.sqrt(boundary.rows));
  if (res * res !== boundary.rows) {
    throw new Error(`boundary: ${boundary.rows} rows is not a square grid`);
  }
  const geom = { ...DEFAULT_GEOMETRY, width: 560, height: 560 };
  const plot = new Plot(geom, bx[0], bx[boundary.rows - 1], by[0], by[boundary.rows - 1]);
  for (let py = 0; py < plot.plotHeight; py++) {
    const gy = Math.min(res - 1, Math.round(((plot.plotHeight - 1 - py) / (plot.plotHeight - 1)) * (res - 1)));
    for (let px = 0; px < plot.plotWidth; px++) {
      const gx = Math.min(res - 1, Math.round((px / (plot.plotWidth - 1)) * (res - 1)));
      // probability 0.5 sits at the neutral center of the diverging map
      plot.raster.set(
        geom.left + px,
        geom.top + py,
        divergingSigned(bp[gy * res + gx] - 0.5, 0.5),
      );
    }
  }
  plot.axes(xlabel, ylabel, title);
  const labels = dataset.data[2];
  for (let i = 0; i < dataset.rows; i++) {
    const color = CLASS_COLORS[labels[i] > 0.5 ? 1 : 0];
    const x = plot.px(dataset.data[0][i]);
    const y = plot.py(dataset.data[1][i]);
    plot.raster.disc(x, y, 2, color);
    plot.raster.set(x, y, WHITE);
  }
  return plot.raster;
}

export function renderCutoffMse(data: TableData, xlabel: string, ylabel: string, title?: string): Raster {
  verifyChecksum("cutoff", data.checksum, data.data);
  const cutoffs = data.data[0];
  const mse = data.data[2];
  const logMse = Float64Array.from(mse, (v) => Math.log10(Math.max(v, 1e-300)));
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of logMse) {
    lo = Math.min(lo, v);
    hi = Math.max(hi, v);
  }
  const plot = new Plot(
    DEFAULT_GEOMETRY,
    cutoffs[0] - 0.5,
    cutoffs[cutoffs.length - 1] + 0.5,
    lo - 0.5,
    hi + 0.5,
  );
  plot.axes(xlabel, `LOG10 ${ylabel}`, title);
  for (let i = 0; i < cutoffs.length; i++) {
    const x = plot.px(cutoffs[i]);
    const y = plot.py(logMse[i]);
    if (i > 0) {
      plot.raster.line(plot.px(cutoffs[i - 1]), plot.py(logMse[i - 1]), x, y, GRAY);
    }
    plot.raster.disc(x, y, 4, SERIES_COLORS[3]);
  }
  return plot.raster;
}
