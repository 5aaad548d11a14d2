// Pure data assembly for the chart panels, kept canvas-free so the
// service-parity tests can drive the exact pipeline the UI renders.

import { StepFunctionJson } from "./types.js";

export interface NamedCurve {
  name: string;
  fn: StepFunctionJson;
}

/** Means payload -> ordered curve list for one homology degree. */
export function curvesFromMeans(
  means: Record<string, Record<string, StepFunctionJson>>,
  degree: number,
): NamedCurve[] {
  return Object.entries(means).map(([name, perDegree]) => ({
    name,
    fn: perDegree[String(degree)],
  }));
}

/** Plot window derived from the curves (padding only, no new numbers). */
export function curveWindow(curves: NamedCurve[]): { xMax: number; yMax: number } {
  const xMax =
    Math.max(0.2, ...curves.flatMap((c) => c.fn.breakpoints.slice(-1))) * 1.15;
  const yMax = Math.max(1, ...curves.map((c) => c.fn.values[0])) * 1.1;
  return { xMax, yMax };
}
