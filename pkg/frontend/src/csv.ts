/**
 * Parsers for the simulator's documented output formats.
 *
 * Every parser returns the numeric payload plus a checksum of that payload;
 * renderers recompute the checksum right before drawing so any accidental
 * mutation of the data between parse and draw is caught.
 */

import { createHash } from "node:crypto";
import { readFileSync } from "node:fs";

export interface WignerData {
  reMin: number;
  reMax: number;
  imMin: number;
  imMax: number;
  resolution: number;
  /** row-major, rows follow Im(xi), columns Re(xi) */
  values: Float64Array;
  checksum: string;
}

export interface TableData {
  columns: string[];
  /** column-major numeric payload */
  data: Float64Array[];
  rows: number;
  checksum: string;
}

export interface AccuracyReport {
  variants: {
    name: string;
    mean: number;
    std: number;
    accuracies: number[];
  }[];
  checksum: string;
}

export function checksumOf(arrays: ArrayLike<number>[]): string {
  const hash = createHash("sha256");
  for (const arr of arrays) {
    hash.update(Buffer.from(Float64Array.from(arr as Float64Array).buffer));
  }
  return hash.digest("hex").slice(0, 16);
}

function parseNumber(token: string, context: string): number {
  if (token === "nan") return NaN;
  const v = Number(token);
  if (token.trim() === "" || Number.isNaN(v)) {
    throw new Error(`${context}: not a number: '${token}'`);
  }
  return v;
}

function headerValue(line: string, key: string, path: string): number {
  const match = line.match(new RegExp(`${key}=([^ ]+)`));
  if (!match) throw new Error(`${path}: header line missing '${key}': '${line}'`);
  return parseNumber(match[1], `${path}:${key}`);
}

export function parseWignerCsv(path: string): WignerData {
  const lines = readFileSync(path, "utf8").split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length < 5 || !lines[0].startsWith("#")) {
    throw new Error(`${path}: not a Wigner grid file (expected 4 header lines)`);
  }
  const reMin = headerValue(lines[1], "re_min", path);
  const reMax = headerValue(lines[1], "re_max", path);
  const imMin = headerValue(lines[2], "im_min", path);
  const imMax = headerValue(lines[2], "im_max", path);
  const resolution = headerValue(lines[3], "resolution", path);
  const body = lines.slice(4);
  if (body.length !== resolution) {
    throw new Error(`${path}: expected ${resolution} rows, found ${body.length}`);
  }
  const values = new Float64Array(resolution * resolution);
  body.forEach((line, r) => {
    const cells = line.split(",");
    if (cells.length !== resolution) {
      throw new Error(`${path}: row ${r} has ${cells.length} columns, expected ${resolution}`);
    }
    cells.forEach((c, i) => {
      values[r * resolution + i] = parseNumber(c, `${path}:row ${r}`);
    });
  });
  return { reMin, reMax, imMin, imMax, resolution, values, checksum: checksumOf([values]) };
}

/** Trajectory / photon / boundary / cutoff files: provenance line, column
 * header, then comma-separated numeric rows. */
export function parseTableCsv(path: string): TableData {
  const lines = readFileSync(path, "utf8").split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length < 2 || !lines[0].startsWith("#")) {
    throw new Error(`${path}: missing provenance header`);
  }
  const columns = lines[1].split(",");
  const rows = lines.length - 2;
  const data = columns.map(() => new Float64Array(rows));
  for (let r = 0; r < rows; r++) {
    const cells = lines[r + 2].split(",");
    if (cells.length !== columns.length) {
      throw new Error(
        `${path}: row ${r} has ${cells.length} cells, expected ${columns.length}`,
      );
    }
    cells.forEach((c, i) => {
      data[i][r] = parseNumber(c, `${path}:row ${r}`);
    });
  }
  return { columns, data, rows, checksum: checksumOf(data) };
}

export function parseReportJson(path: string): AccuracyReport {
  const payload = JSON.parse(readFileSync(path, "utf8"));
  if (typeof payload !== "object" || payload === null || !payload.variants) {
    throw new Error(`${path}: not an accuracy report (missing 'variants')`);
  }
  const variants = Object.entries(payload.variants).map(([name, v]) => {
    const entry = v as {
      mean_accuracy: number;
      std_accuracy: number;
      accuracies: number[];
    };
    for (const key of ["mean_accuracy", "std_accuracy", "accuracies"] as const) {
      if (!(key in entry)) throw new Error(`${path}: variant '${name}' missing '${key}'`);
    }
    return {
      name,
      mean: entry.mean_accuracy,
      std: entry.std_accuracy,
      accuracies: entry.accuracies,
    };
  });
  variants.sort((a, b) => (a.name < b.name ? -1 : 1));
  const checksum = checksumOf(
    variants.map((v) => Float64Array.from([v.mean, v.std, ...v.accuracies])),
  );
  return { variants, checksum };
}
