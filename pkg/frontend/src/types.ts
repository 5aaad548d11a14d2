// Wire types mirroring the backend JSON schemas. Infinity travels as the
// string token "inf" everywhere.

export type ExtendedReal = number | "inf";

export interface StepFunctionJson {
  breakpoints: number[];
  values: number[];
}

export interface DensityJson {
  breakpoints: number[];
  values: number[];
}

export type ContourKind = "standard" | "exponential" | "superlinear" | "distance" | "shift";

export interface ContourJson {
  kind: ContourKind;
  param: number | null;
  density: DensityJson | null;
  alpha: ExtendedReal;
}

export interface BarcodeJson {
  degree: number;
  bars: [number, ExtendedReal][];
}

export interface ContourLineJson {
  t: number;
  samples: [number, ExtendedReal][];
}

export interface DatasetInfo {
  label: string;
  degrees: Record<string, number>;
}

export function isInf(x: ExtendedReal): x is "inf" {
  return x === "inf";
}

export function asNumber(x: ExtendedReal): number {
  return isInf(x) ? Infinity : x;
}
