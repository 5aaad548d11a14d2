// Stem-plot view of a barcode: a bar (s, e) becomes a vertical stem at
// (s, e - s); equal births get an index so overlapping stems stay visible.

import { BarcodeJson, asNumber } from "./types.js";

export interface Stem {
  s: number;
  length: number; // Infinity for immortal bars
  index: number;
}

export function barsToStems(barcode: BarcodeJson): Stem[] {
  const sorted = [...barcode.bars].sort((a, b) => a[0] - b[0] || asNumber(a[1]) - asNumber(b[1]));
  const seen = new Map<number, number>();
  return sorted.map(([s, e]) => {
    const index = seen.get(s) ?? 0;
    seen.set(s, index + 1);
    return { s, length: asNumber(e) - s, index };
  });
}

export function stemExtent(stems: Stem[]): { sMax: number; lengthMax: number } {
  let sMax = 0;
  let lengthMax = 0;
  for (const st of stems) {
    sMax = Math.max(sMax, st.s);
    if (Number.isFinite(st.length)) lengthMax = Math.max(lengthMax, st.length);
  }
  return { sMax, lengthMax };
}

export function nearestStem(stems: Stem[], s: number, tolerance: number): Stem | null {
  let best: Stem | null = null;
  let bestDist = tolerance;
  for (const st of stems) {
    const d = Math.abs(st.s - s);
    if (d <= bestDist) {
      best = st;
      bestDist = d;
    }
  }
  return best;
}
