import { describe, expect, it } from "vitest";

import { DensityDraft, MAX_VALUE, MIN_VALUE, clampValue, exportContour } from "../src/density.js";
import { ContourJson } from "../src/types.js";

describe("DensityDraft", () => {
  it("starts as the constant-one density", () => {
    const draft = new DensityDraft();
    expect(draft.toDensityJson()).toEqual({ breakpoints: [], values: [1] });
    expect(draft.isConstantOne()).toBe(true);
  });

  it("serializes control points into the backend density schema", () => {
    const draft = new DensityDraft([
      { x: 0, value: 2 },
      { x: 0.3, value: 0.5 },
      { x: 1.1, value: 1.5 },
    ]);
    expect(draft.toDensityJson()).toEqual({
      breakpoints: [0.3, 1.1],
      values: [2, 0.5, 1.5],
    });
  });

  it("clamps values strictly positive", () => {
    expect(clampValue(-3)).toBe(MIN_VALUE);
    expect(clampValue(0)).toBe(MIN_VALUE);
    expect(clampValue(99)).toBe(MAX_VALUE);
    const draft = new DensityDraft([{ x: 0, value: 0 }]);
    expect(draft.points[0].value).toBe(MIN_VALUE);
  });

  it("keeps x coordinates strictly ordered when dragging", () => {
    const draft = new DensityDraft([
      { x: 0, value: 1 },
      { x: 0.5, value: 1 },
      { x: 1.0, value: 1 },
    ]);
    draft.movePoint(1, 2.0, 1); // cannot pass its right neighbor
    expect(draft.points[1].x).toBeLessThan(1.0);
    draft.movePoint(1, -1.0, 1); // nor its left neighbor
    expect(draft.points[1].x).toBeGreaterThan(0);
    draft.movePoint(0, 0.7, 2.5); // origin only moves vertically
    expect(draft.points[0]).toEqual({ x: 0, value: 2.5 });
  });

  it("evaluates as a right-continuous step function", () => {
    const draft = new DensityDraft([
      { x: 0, value: 2 },
      { x: 1, value: 0.5 },
    ]);
    expect(draft.valueAt(0.99)).toBe(2);
    expect(draft.valueAt(1)).toBe(0.5);
    expect(draft.valueAt(5)).toBe(0.5);
  });

  it("add and remove keep the origin point", () => {
    const draft = new DensityDraft();
    const idx = draft.addPoint(0.4, 2);
    expect(idx).toBe(1);
    draft.removePoint(0);
    expect(draft.points.length).toBe(2);
    draft.removePoint(1);
    expect(draft.points.length).toBe(1);
    expect(draft.points[0].x).toBe(0);
  });

  it("round-trips through the contour schema", () => {
    const draft = new DensityDraft(
      [
        { x: 0, value: 2 },
        { x: 0.3, value: 0.5 },
      ],
      "distance",
      0.75,
    );
    const json = draft.toContourJson();
    expect(json).toEqual({
      kind: "distance",
      param: null,
      density: { breakpoints: [0.3], values: [2, 0.5] },
      alpha: 0.75,
    });
    const back = DensityDraft.fromContourJson(json);
    expect(back.toContourJson()).toEqual(json);
  });

  it("export produces parseable JSON matching the schema", () => {
    const text = exportContour(new DensityDraft());
    const parsed = JSON.parse(text) as ContourJson;
    expect(parsed.kind).toBe("shift");
    expect(parsed.alpha).toBe("inf");
    expect(parsed.density).toEqual({ breakpoints: [], values: [1] });
  });

  it("rejects foreign contour kinds on import", () => {
    const bad = { kind: "standard", param: null, density: null, alpha: "inf" } as ContourJson;
    expect(() => DensityDraft.fromContourJson(bad)).toThrow(/distance\/shift/);
  });
});
