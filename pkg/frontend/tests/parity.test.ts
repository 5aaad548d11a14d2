// End-to-end parity: every curve the UI would render equals the service
// response, the service response equals the CLI output byte for byte, and
// exported contours drive the CLI classifier unchanged.

import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { Api } from "../src/api.js";
import { DensityDraft, exportContour } from "../src/density.js";
import { curveWindow, curvesFromMeans } from "../src/panels.js";
import { stepPath } from "../src/scales.js";
import { Fixture, canonicalSub, startService } from "./service_fixture.js";

// 20 scripted drafts sweeping kind, shape and truncation
function scriptedDrafts(): DensityDraft[] {
  const drafts: DensityDraft[] = [];
  for (let i = 0; i < 10; i++) {
    const kind = i % 2 === 0 ? "shift" : "distance";
    const low = 0.2 + 0.15 * i;
    const breakNear = 0.05 + 0.02 * i;
    drafts.push(
      new DensityDraft(
        [
          { x: 0, value: low },
          { x: breakNear, value: 2.0 },
        ],
        kind,
      ),
    );
    drafts.push(
      new DensityDraft(
        [
          { x: 0, value: 1.5 },
          { x: 0.1 + 0.05 * i, value: low },
          { x: 0.8, value: 1.0 },
        ],
        kind,
        i % 3 === 0 ? 0.5 + 0.1 * i : "inf",
      ),
    );
  }
  return drafts;
}

let fixture: Fixture;
let api: Api;

beforeAll(async () => {
  fixture = await startService();
  api = new Api(fixture.base);
}, 120_000);

afterAll(() => fixture?.stop());

describe("UI parity with service and CLI", () => {
  it("renders exactly the service's numbers for 20 scripted drafts", async () => {
    const drafts = scriptedDrafts();
    expect(drafts.length).toBe(20);
    for (const draft of drafts) {
      const means = await api.means(draft.toContourJson(), ["poisson", "matern"], 1);
      const curves = curvesFromMeans(means, 1);
      // the rendered polyline may only use fetched breakpoints/values
      const { xMax } = curveWindow(curves);
      for (const curve of curves) {
        const raw = means[curve.name]["1"];
        expect(curve.fn).toBe(raw);
        const path = stepPath(curve.fn.breakpoints, curve.fn.values, xMax);
        for (const [x, y] of path) {
          expect(curve.fn.values).toContain(y);
          if (x !== 0 && x !== xMax) expect(curve.fn.breakpoints).toContain(x);
        }
      }
    }
  }, 120_000);

  it("service stable ranks equal CLI outputs byte for byte", async () => {
    const tmp = mkdtempSync(join(tmpdir(), "parity-"));
    const ids = ["poisson-0000-h1", "matern-0000-h1"];
    for (const [i, draft] of scriptedDrafts().entries()) {
      const contourPath = join(tmp, `contour-${i}.json`);
      writeFileSync(contourPath, exportContour(draft));
      const resp = await fetch(`${fixture.base}/stablerank`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ contour: draft.toContourJson(), ids }),
      });
      const rawBody = await resp.text(); // untouched service bytes
      for (const id of ids) {
        const outPath = join(tmp, `cli-${i}-${id}.json`);
        fixture.cli(
          "stablerank",
          "--barcode", join(fixture.workspace, "barcodes", `${id}.json`),
          "--contour", contourPath,
          "--out", outPath,
        );
        expect(canonicalSub(rawBody, ["results", id])).toBe(readFileSync(outPath, "utf-8"));
      }
    }
  }, 240_000);

  it("exported contour JSON round-trips through classify", async () => {
    const tmp = mkdtempSync(join(tmpdir(), "classify-"));
    const draft = scriptedDrafts()[3];
    const contourPath = join(tmp, "contour.json");
    writeFileSync(contourPath, exportContour(draft));
    const output = fixture.cli(
      "classify",
      "--workspace", fixture.workspace,
      "--contour", contourPath,
      "--train-size", "4",
      "--folds", "2",
      "--out", join(tmp, "cls"),
    );
    expect(output).toMatch(/mean accuracy/);
    const confusion = JSON.parse(readFileSync(join(tmp, "cls", "confusion.json"), "utf-8"));
    expect(confusion.labels).toEqual(["matern", "poisson"]);
  }, 120_000);

  it("default draft means equal the standard contour's", async () => {
    const draft = new DensityDraft(); // density identically one
    expect(draft.isConstantOne()).toBe(true);
    const viaDraft = await api.means(draft.toContourJson(), ["poisson"], 1);
    const standard = await api.means(
      { kind: "standard", param: null, density: null, alpha: "inf" },
      ["poisson"],
      1,
    );
    expect(viaDraft).toEqual(standard);
  }, 60_000);
});
