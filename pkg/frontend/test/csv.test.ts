import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import {
  checksumOf,
  parseReportJson,
  parseTableCsv,
  parseWignerCsv,
} from "../src/csv.js";

const FIXTURES = join(__dirname, "fixtures");

describe("wigner parser", () => {
  it("reads the four-line header and the value matrix", () => {
    const w = parseWignerCsv(join(FIXTURES, "wigner.csv"));
    expect(w.resolution).toBe(21);
    expect(w.reMin).toBe(-4);
    expect(w.reMax).toBe(4);
    expect(w.values.length).toBe(21 * 21);
    expect(w.checksum).toHaveLength(16);
  });

  it("checksum is stable across reads", () => {
    const a = parseWignerCsv(join(FIXTURES, "wigner.csv"));
    const b = parseWignerCsv(join(FIXTURES, "wigner.csv"));
    expect(a.checksum).toBe(b.checksum);
  });

  it("rejects truncated grids", () => {
    const dir = mkdtempSync(join(tmpdir(), "wig-"));
    const p = join(dir, "bad.csv");
    writeFileSync(
      p,
      "# tool\n# re_min=-1 re_max=1\n# im_min=-1 im_max=1\n# resolution=3\n1,2,3\n4,5,6\n",
    );
    expect(() => parseWignerCsv(p)).toThrow(/expected 3 rows/);
  });
});

describe("table parser", () => {
  it("reads trajectory columns", () => {
    const t = parseTableCsv(join(FIXTURES, "trajectory.csv"));
    expect(t.columns).toEqual(["z_um", "n_1", "n_2", "g2_12"]);
    expect(t.rows).toBe(9);
    expect(t.data[0][0]).toBe(0);
    expect(t.data[0][t.rows - 1]).toBe(400);
  });

  it("reads boundary and dataset files", () => {
    const b = parseTableCsv(join(FIXTURES, "boundary.csv"));
    expect(b.columns).toEqual(["x", "y", "p"]);
    expect(b.rows).toBe(21 * 21);
    const d = parseTableCsv(join(FIXTURES, "dataset.csv"));
    expect(d.columns).toEqual(["x", "y", "label"]);
    expect(d.rows).toBe(60);
  });

  it("accepts nan cells", () => {
    const dir = mkdtempSync(join(tmpdir(), "tab-"));
    const p = join(dir, "nan.csv");
    writeFileSync(p, "# tool\na,b\n1,nan\n");
    const t = parseTableCsv(p);
    expect(Number.isNaN(t.data[1][0])).toBe(true);
  });

  it("rejects ragged rows and junk", () => {
    const dir = mkdtempSync(join(tmpdir(), "tab-"));
    const ragged = join(dir, "ragged.csv");
    writeFileSync(ragged, "# tool\na,b\n1\n");
    expect(() => parseTableCsv(ragged)).toThrow(/row 0/);
    const junk = join(dir, "junk.csv");
    writeFileSync(junk, "# tool\na,b\n1,zap\n");
    expect(() => parseTableCsv(junk)).toThrow(/not a number/);
    const noHeader = join(dir, "nohdr.csv");
    writeFileSync(noHeader, "a,b\n1,2\n");
    expect(() => parseTableCsv(noHeader)).toThrow(/provenance/);
  });
});

describe("report parser", () => {
  it("reads the three variants", () => {
    const r = parseReportJson(join(FIXTURES, "report.json"));
    expect(r.variants.map((v) => v.name).sort()).toEqual([
      "classical_occupations",
      "quantum_correlations",
      "quantum_occupations",
    ]);
    for (const v of r.variants) {
      expect(v.accuracies.length).toBe(3);
      expect(v.mean).toBeGreaterThanOrEqual(0);
      expect(v.mean).toBeLessThanOrEqual(1);
    }
  });

  it("rejects wrong shapes", () => {
    const dir = mkdtempSync(join(tmpdir(), "rep-"));
    const p = join(dir, "bad.json");
    writeFileSync(p, JSON.stringify({ nothing: true }));
    expect(() => parseReportJson(p)).toThrow(/variants/);
  });
});

describe("checksum", () => {
  it("is order- and value-sensitive", () => {
    const a = checksumOf([Float64Array.from([1, 2, 3])]);
    const b = checksumOf([Float64Array.from([1, 2, 3.0000001])]);
    const c = checksumOf([Float64Array.from([3, 2, 1])]);
    expect(a).not.toBe(b);
    expect(a).not.toBe(c);
    expect(checksumOf([Float64Array.from([1, 2, 3])])).toBe(a);
  });
});
