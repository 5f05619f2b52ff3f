import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { diverging, divergingSigned } from "../src/colormap.js";
import { parseManifest } from "../src/manifest.js";
import { renderManifest, renderManifestFile, renderPanel } from "../src/render.js";

const FIXTURES = join(__dirname, "fixtures");

function fullManifest(outDir: string) {
  return {
    panels: [
      {
        kind: "wigner_heatmap" as const,
        input: join(FIXTURES, "wigner.csv"),
        output: join(outDir, "wigner.png"),
        xlabel: "RE",
        ylabel: "IM",
        title: "output mode 2",
      },
      {
        kind: "trajectory" as const,
        input: join(FIXTURES, "trajectory.csv"),
        output: join(outDir, "trajectory.png"),
        xlabel: "z (um)",
        ylabel: "value",
      },
      {
        kind: "photon_bars" as const,
        input: join(FIXTURES, "photon.csv"),
        output: join(outDir, "photon.png"),
        xlabel: "n",
        ylabel: "P(n)",
      },
      {
        kind: "accuracy_bars" as const,
        input: join(FIXTURES, "report.json"),
        output: join(outDir, "accuracy.png"),
        ylabel: "accuracy",
      },
      {
        kind: "boundary_scatter" as const,
        input: join(FIXTURES, "boundary.csv"),
        dataset: join(FIXTURES, "dataset.csv"),
        output: join(outDir, "boundary.png"),
        xlabel: "x",
        ylabel: "y",
      },
      {
        kind: "cutoff_mse" as const,
        input: join(FIXTURES, "cutoff_study.csv"),
        output: join(outDir, "mse.png"),
        xlabel: "cutoff",
        ylabel: "mse",
      },
    ],
  };
}

describe("colormap", () => {
  it("diverging map is neutral at the center and saturated at the ends", () => {
    const mid = diverging(0.5);
    expect(mid[0]).toBeGreaterThan(230);
    expect(mid[1]).toBeGreaterThan(230);
    expect(mid[2]).toBeGreaterThan(230);
    const lo = diverging(0);
    const hi = diverging(1);
    expect(lo[2]).toBeGreaterThan(lo[0]); // blue side
    expect(hi[0]).toBeGreaterThan(hi[2]); // red side
  });

  it("signed mapping is symmetric about zero", () => {
    expect(divergingSigned(0, 1)).toEqual(diverging(0.5));
    expect(divergingSigned(1, 1)).toEqual(diverging(1));
    expect(divergingSigned(-1, 1)).toEqual(diverging(0));
  });
});

describe("panels", () => {
  it("every panel kind renders one PNG per manifest entry", () => {
    const outDir = mkdtempSync(join(tmpdir(), "figs-"));
    const manifest = fullManifest(outDir);
    const result = renderManifest(manifest);
    expect(result.failures).toEqual([]);
    expect(result.rendered.length).toBe(manifest.panels.length);
    for (const p of manifest.panels) {
      expect(existsSync(p.output)).toBe(true);
      const bytes = readFileSync(p.output);
      expect([...bytes.subarray(0, 4)]).toEqual([0x89, 0x50, 0x4e, 0x47]);
      expect(bytes.length).toBeGreaterThan(500);
    }
  });

  it("renders are deterministic", () => {
    const outDir = mkdtempSync(join(tmpdir(), "figs-"));
    const panel = fullManifest(outDir).panels[0];
    const a = renderPanel(panel);
    const b = renderPanel(panel);
    expect(Buffer.from(a.pixels).equals(Buffer.from(b.pixels))).toBe(true);
  });

  it("boundary scatter colors both classes over the probability field", () => {
    const outDir = mkdtempSync(join(tmpdir(), "figs-"));
    const panel = fullManifest(outDir).panels[4];
    const raster = renderPanel(panel);
    // count pixels on the blue and red sides of the field
    let blue = 0;
    let red = 0;
    for (let i = 0; i < raster.pixels.length; i += 3) {
      const [r, , b] = [raster.pixels[i], raster.pixels[i + 1], raster.pixels[i + 2]];
      if (b > r + 40) blue++;
      if (r > b + 40) red++;
    }
    expect(blue).toBeGreaterThan(1000);
    expect(red).toBeGreaterThan(1000);
  });

  it("trajectory respects a column subset and rejects unknown columns", () => {
    const outDir = mkdtempSync(join(tmpdir(), "figs-"));
    const base = fullManifest(outDir).panels[1];
    expect(() => renderPanel({ ...base, columns: ["g2_12"] })).not.toThrow();
    expect(() => renderPanel({ ...base, columns: ["bogus"] })).toThrow(/no column/);
  });
});

describe("manifest validation", () => {
  it("rejects unknown kinds and missing fields", () => {
    const dir = mkdtempSync(join(tmpdir(), "man-"));
    const p = join(dir, "bad.json");
    writeFileSync(p, JSON.stringify({ panels: [{ kind: "pie", input: "x", output: "y" }] }));
    expect(() => parseManifest(p)).toThrow(/unknown kind/);
    writeFileSync(p, JSON.stringify({ panels: [{ kind: "trajectory", input: "x" }] }));
    expect(() => parseManifest(p)).toThrow(/output/);
  });

  it("checks that all inputs exist before rendering anything", () => {
    const dir = mkdtempSync(join(tmpdir(), "man-"));
    const p = join(dir, "missing.json");
    writeFileSync(
      p,
      JSON.stringify({
        panels: [
          {
            kind: "trajectory",
            input: join(FIXTURES, "trajectory.csv"),
            output: join(dir, "ok.png"),
          },
          { kind: "photon_bars", input: join(dir, "nope.csv"), output: join(dir, "no.png") },
        ],
      }),
    );
    expect(() => renderManifestFile(p)).toThrow(/not found/);
    expect(existsSync(join(dir, "ok.png"))).toBe(false);
  });

  it("continues past a malformed input and reports the failure", () => {
    const dir = mkdtempSync(join(tmpdir(), "man-"));
    const badCsv = join(dir, "bad.csv");
    writeFileSync(badCsv, "not,a,valid\nfile\n");
    const result = renderManifest({
      panels: [
        { kind: "photon_bars", input: badCsv, output: join(dir, "bad.png") },
        {
          kind: "photon_bars",
          input: join(FIXTURES, "photon.csv"),
          output: join(dir, "good.png"),
        },
      ],
    });
    expect(result.failures.length).toBe(1);
    expect(result.rendered).toEqual([join(dir, "good.png")]);
    expect(existsSync(join(dir, "good.png"))).toBe(true);
  });
});
