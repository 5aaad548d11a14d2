// The editable density draft behind distance/shift contours.
//
// The draft is a list of control points (x, value): value i holds on
// [x_i, x_{i+1}) and the last value on the tail, so serializing drops the
// leading x = 0. Values are clamped strictly positive and x coordinates
// stay strictly ordered, which keeps every draft a valid backend density.

import { ContourJson, ContourKind, DensityJson, ExtendedReal } from "./types.js";

export const MIN_VALUE = 0.05;
export const MAX_VALUE = 5.0;

export interface ControlPoint {
  x: number;
  value: number;
}

const X_GAP = 1e-3;

export class DensityDraft {
  points: ControlPoint[];
  kind: "distance" | "shift";
  alpha: ExtendedReal;

  constructor(points?: ControlPoint[], kind: "distance" | "shift" = "shift", alpha: ExtendedReal = "inf") {
    this.points = points && points.length ? points.map((p) => ({ ...p })) : [{ x: 0, value: 1 }];
    this.points.sort((a, b) => a.x - b.x);
    this.points[0].x = 0;
    for (const p of this.points) p.value = clampValue(p.value);
    this.kind = kind;
    this.alpha = alpha;
  }

  clone(): DensityDraft {
    return new DensityDraft(this.points, this.kind, this.alpha);
  }

  valueAt(x: number): number {
    let v = this.points[0].value;
    for (const p of this.points) {
      if (p.x <= x) v = p.value;
      else break;
    }
    return v;
  }

  /** Move a control point, keeping x strictly between its neighbors. */
  movePoint(index: number, x: number, value: number): void {
    const pts = this.points;
    if (index < 0 || index >= pts.length) return;
    if (index === 0) {
      x = 0; // the origin point only moves vertically
    } else {
      const lo = pts[index - 1].x + X_GAP;
      const hi = index + 1 < pts.length ? pts[index + 1].x - X_GAP : Infinity;
      x = Math.min(Math.max(x, lo), hi);
    }
    pts[index] = { x, value: clampValue(value) };
  }

  addPoint(x: number, value: number): number {
    if (x <= 0) return 0;
    const pts = this.points;
    for (const p of pts) {
      if (Math.abs(p.x - x) < X_GAP) return pts.indexOf(p);
    }
    pts.push({ x, value: clampValue(value) });
    pts.sort((a, b) => a.x - b.x);
    return pts.findIndex((p) => p.x === x);
  }

  removePoint(index: number): void {
    if (index <= 0 || this.points.length <= 1) return; // origin is permanent
    this.points.splice(index, 1);
  }

  isConstantOne(): boolean {
    return this.points.every((p) => p.value === 1);
  }

  toDensityJson(): DensityJson {
    return {
      breakpoints: this.points.slice(1).map((p) => p.x),
      values: this.points.map((p) => p.value),
    };
  }

  toContourJson(): ContourJson {
    return {
      kind: this.kind as ContourKind,
      param: null,
      density: this.toDensityJson(),
      alpha: this.alpha,
    };
  }

  static fromContourJson(obj: ContourJson): DensityDraft {
    if (obj.kind !== "distance" && obj.kind !== "shift") {
      throw new Error(`draft only covers distance/shift contours, got ${obj.kind}`);
    }
    if (!obj.density) throw new Error("contour has no density");
    const points: ControlPoint[] = [{ x: 0, value: obj.density.values[0] }];
    obj.density.breakpoints.forEach((x, i) => points.push({ x, value: obj.density!.values[i + 1] }));
    return new DensityDraft(points, obj.kind, obj.alpha ?? "inf");
  }
}

export function clampValue(v: number): number {
  if (!Number.isFinite(v)) return MIN_VALUE;
  return Math.min(Math.max(v, MIN_VALUE), MAX_VALUE);
}

/** Serialize for download; the backend parses this verbatim. */
export function exportContour(draft: DensityDraft): string {
  return JSON.stringify(draft.toContourJson(), null, 2) + "\n";
}
