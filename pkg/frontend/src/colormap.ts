/** Color maps as [r, g, b] in 0..255. */

export type Rgb = readonly [number, number, number];

const clamp01 = (t: number) => Math.max(0, Math.min(1, Number.isFinite(t) ? t : 0));

function lerp(a: Rgb, b: Rgb, t: number): Rgb {
  return [
    Math.round(a[0] + (b[0] - a[0]) * t),
    Math.round(a[1] + (b[1] - a[1]) * t),
    Math.round(a[2] + (b[2] - a[2]) * t),
  ];
}

function piecewise(stops: Rgb[], t: number): Rgb {
  const x = clamp01(t) * (stops.length - 1);
  const i = Math.min(Math.floor(x), stops.length - 2);
  return lerp(stops[i], stops[i + 1], x - i);
}

const DIVERGING_STOPS: Rgb[] = [
  [5, 48, 97],
  [33, 102, 172],
  [146, 197, 222],
  [247, 247, 247],
  [244, 165, 130],
  [178, 24, 43],
  [103, 0, 31],
];

/** Blue-white-red, t in [0, 1] with the neutral color exactly at t = 0.5. */
export function diverging(t: number): Rgb {
  return piecewise(DIVERGING_STOPS, t);
}

/** Map a signed value to the diverging scale symmetric about zero. */
export function divergingSigned(value: number, absMax: number): Rgb {
  if (absMax <= 0) return diverging(0.5);
  return diverging(0.5 + 0.5 * Math.max(-1, Math.min(1, value / absMax)));
}

const SEQUENTIAL_STOPS: Rgb[] = [
  [68, 1, 84],
  [59, 82, 139],
  [33, 145, 140],
  [94, 201, 98],
  [253, 231, 37],
];

/** Perceptually ordered sequential map, t in [0, 1]. */
export function sequential(t: number): Rgb {
  return piecewise(SEQUENTIAL_STOPS, t);
}

export const CLASS_COLORS: Rgb[] = [
  [31, 119, 180],
  [214, 39, 40],
];

export const SERIES_COLORS: Rgb[] = [
  [31, 119, 180],
  [255, 127, 14],
  [44, 160, 44],
  [214, 39, 40],
  [148, 103, 189],
  [140, 86, 75],
  [227, 119, 194],
  [127, 127, 127],
  [188, 189, 34],
  [23, 190, 207],
];
