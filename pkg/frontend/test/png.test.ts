import { inflateSync } from "node:zlib";
import { describe, expect, it } from "vitest";

import { crc32, encodePng } from "../src/png.js";
import { Raster } from "../src/raster.js";

function readChunks(buf: Buffer) {
  const chunks: { type: string; body: Buffer }[] = [];
  let off = 8;
  while (off < buf.length) {
    const len = buf.readUInt32BE(off);
    const type = buf.subarray(off + 4, off + 8).toString("ascii");
    const body = buf.subarray(off + 8, off + 8 + len);
    const crc = buf.readUInt32BE(off + 8 + len);
    expect(crc).toBe(crc32(buf.subarray(off + 4, off + 8 + len)));
    chunks.push({ type, body });
    off += 12 + len;
  }
  return chunks;
}

describe("png encoder", () => {
  it("produces a decodable image with correct dimensions and pixels", () => {
    const w = 5;
    const h = 3;
    const rgb = new Uint8Array(w * h * 3);
    rgb[0] = 255; // top-left red
    rgb[(w * h - 1) * 3 + 2] = 200; // bottom-right blue
    const png = encodePng(w, h, rgb);
    expect([...png.subarray(0, 4)]).toEqual([0x89, 0x50, 0x4e, 0x47]);

    const chunks = readChunks(png);
    expect(chunks.map((c) => c.type)).toEqual(["IHDR", "IDAT", "IEND"]);
    const ihdr = chunks[0].body;
    expect(ihdr.readUInt32BE(0)).toBe(w);
    expect(ihdr.readUInt32BE(4)).toBe(h);
    expect(ihdr[8]).toBe(8);
    expect(ihdr[9]).toBe(2);

    const raw = inflateSync(chunks[1].body);
    expect(raw.length).toBe((w * 3 + 1) * h);
    expect(raw[0]).toBe(0); // filter byte
    expect(raw[1]).toBe(255);
    expect(raw[raw.length - 1]).toBe(200);
  });

  it("is deterministic", () => {
    const r = new Raster(16, 16);
    r.line(0, 0, 15, 15, [10, 20, 30]);
    const a = encodePng(16, 16, r.pixels);
    const b = encodePng(16, 16, r.pixels);
    expect(a.equals(b)).toBe(true);
  });

  it("rejects wrong buffer sizes", () => {
    expect(() => encodePng(4, 4, new Uint8Array(5))).toThrow(/expected/);
  });
});

describe("raster", () => {
  it("draws text and shapes inside bounds", () => {
    const r = new Raster(100, 40);
    const width = r.text(2, 2, "G2 = 1.0", [0, 0, 0]);
    expect(width).toBe(8 * 6);
    r.disc(-5, -5, 3, [1, 2, 3]); // clipped, no throw
    r.frame(0, 0, 100, 40, [0, 0, 0]);
    expect(r.pixels[0]).toBe(0);
  });
});
