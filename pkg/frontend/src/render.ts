/** Orchestration: manifest in, one PNG per panel out. */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";

import { parseReportJson, parseTableCsv, parseWignerCsv } from "./csv.js";
import { Manifest, PanelSpec, parseManifest } from "./manifest.js";
import {
  renderAccuracyBars,
  renderBoundaryScatter,
  renderCutoffMse,
  renderPhotonBars,
  renderTrajectory,
  renderWignerHeatmap,
} from "./panels.js";
import { encodePng } from "./png.js";
import type { Raster } from "./raster.js";

export function renderPanel(panel: PanelSpec): Raster {
  const xl = panel.xlabel ?? "";
  const yl = panel.ylabel ?? "";
  switch (panel.kind) {
    case "wigner_heatmap":
      return renderWignerHeatmap(parseWignerCsv(panel.input), xl, yl, panel.title);
    case "trajectory":
      return renderTrajectory(parseTableCsv(panel.input), xl, yl, panel.columns, panel.title);
    case "photon_bars":
      return renderPhotonBars(parseTableCsv(panel.input), xl, yl, panel.title);
    case "accuracy_bars":
      return renderAccuracyBars(parseReportJson(panel.input), yl, panel.title);
    case "boundary_scatter":
      return renderBoundaryScatter(
        parseTableCsv(panel.input),
        parseTableCsv(panel.dataset as string),
        xl,
        yl,
        panel.title,
      );
    case "cutoff_mse":
      return renderCutoffMse(parseTableCsv(panel.input), xl, yl, panel.title);
  }
}

export interface RenderResult {
  rendered: string[];
  failures: { output: string; error: string }[];
}

export function renderManifest(manifest: Manifest): RenderResult {
  const result: RenderResult = { rendered: [], failures: [] };
  for (const panel of manifest.panels) {
    try {
      const raster = renderPanel(panel);
      mkdirSync(dirname(panel.output), { recursive: true });
      writeFileSync(panel.output, encodePng(raster.width, raster.height, raster.pixels));
      result.rendered.push(panel.output);
      console.log(`rendered ${panel.kind} -> ${panel.output}`);
    } catch (err) {
      result.failures.push({ output: panel.output, error: (err as Error).message });
      console.error(`panel ${panel.output} failed: ${(err as Error).message}`);
    }
  }
  return result;
}

export function renderManifestFile(path: string): RenderResult {
  return renderManifest(parseManifest(path));
}
