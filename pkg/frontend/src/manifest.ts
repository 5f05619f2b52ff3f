/** Figure manifest: which inputs become which panels. */

import { existsSync, readFileSync } from "node:fs";

export const PANEL_KINDS = [
  "wigner_heatmap",
  "trajectory",
  "photon_bars",
  "accuracy_bars",
  "boundary_scatter",
  "cutoff_mse",
] as const;

export type PanelKind = (typeof PANEL_KINDS)[number];

export interface PanelSpec {
  kind: PanelKind;
  input: string;
  output: string;
  xlabel?: string;
  ylabel?: string;
  title?: string;
  /** trajectory only: subset of columns to draw */
  columns?: string[];
  /** boundary_scatter only: the dataset CSV overlaid on the probability map */
  dataset?: string;
}

export interface Manifest {
  panels: PanelSpec[];
}

function fail(path: string, message: string): never {
  throw new Error(`${path}: ${message}`);
}

export function parseManifest(path: string): Manifest {
  let payload: unknown;
  try {
    payload = JSON.parse(readFileSync(path, "utf8"));
  } catch (err) {
    fail(path, `cannot read manifest: ${(err as Error).message}`);
  }
  if (typeof payload !== "object" || payload === null || !Array.isArray((payload as Manifest).panels)) {
    fail(path, "manifest must be an object with a 'panels' array");
  }
  const panels = (payload as Manifest).panels.map((p, i) => {
    const ctx = `${path}: panels[${i}]`;
    if (!PANEL_KINDS.includes(p.kind)) {
      fail(ctx, `unknown kind '${p.kind}' (expected one of ${PANEL_KINDS.join(", ")})`);
    }
    for (const key of ["input", "output"] as const) {
      if (typeof p[key] !== "string" || p[key].length === 0) {
        fail(ctx, `missing '${key}'`);
      }
    }
    if (p.kind === "boundary_scatter" && typeof p.dataset !== "string") {
      fail(ctx, "boundary_scatter needs a 'dataset' file");
    }
    return p;
  });
  // every referenced input must exist before any panel renders
  for (const [i, p] of panels.entries()) {
    for (const input of [p.input, p.dataset].filter((v): v is string => !!v)) {
      if (!existsSync(input)) {
        fail(`${path}: panels[${i}]`, `input file not found: ${input}`);
      }
    }
  }
  return { panels };
}
