// Linear data-to-pixel scales. This is the only arithmetic the client
// performs on plotted numbers; every value itself comes from the service.

export interface Scale {
  (x: number): number;
  invert(px: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((x: number) => r0 + ((x - d0) / span) * (r1 - r0)) as Scale;
  scale.invert = (px: number) => d0 + ((px - r0) / (r1 - r0 || 1)) * span;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

export function niceTicks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo;
  if (span <= 0) return [lo];
  const rawStep = span / Math.max(1, count);
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const norm = rawStep / mag;
  const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + 1e-12; v += step) ticks.push(Number(v.toPrecision(12)));
  return ticks;
}

/**
 * Polyline for a right-continuous step function: horizontal runs with
 * vertical drops at the breakpoints, extended to xMax.
 */
export function stepPath(
  breakpoints: number[],
  values: number[],
  xMax: number,
): [number, number][] {
  const pts: [number, number][] = [];
  let x = 0;
  for (let i = 0; i < breakpoints.length; i++) {
    const bp = Math.min(breakpoints[i], xMax);
    pts.push([x, values[i]], [bp, values[i]]);
    x = bp;
    if (breakpoints[i] >= xMax) {
      return pts;
    }
  }
  pts.push([x, values[values.length - 1]], [xMax, values[values.length - 1]]);
  return pts;
}
