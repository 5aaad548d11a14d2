// Explorer wiring: a density editor drives contour lines over stem plots
// and the per-class mean stable ranks, live.

import { Api, Recomputer } from "./api.js";
import { DensityDraft, MAX_VALUE, exportContour } from "./density.js";
import { NamedCurve, curveWindow, curvesFromMeans } from "./panels.js";
import { drawAxes, drawContourLines, drawCurves, drawStems, makeFrame } from "./render.js";
import { Stem, barsToStems, nearestStem, stemExtent } from "./stems.js";
import { BarcodeJson, ContourLineJson, DatasetInfo } from "./types.js";

const DENSITY_X_MAX = 2.0;
const ALPHA_MAX = 2.0; // slider's right end means "no truncation"

class DensityEditor {
  draft = new DensityDraft();
  onChange: () => void = () => {};
  private canvas: HTMLCanvasElement;
  private dragging = -1;

  constructor(canvas: HTMLCanvasElement) {
    this.canvas = canvas;
    canvas.addEventListener("mousedown", (e) => this.down(e));
    canvas.addEventListener("mousemove", (e) => this.move(e));
    window.addEventListener("mouseup", () => (this.dragging = -1));
    canvas.addEventListener("dblclick", (e) => this.add(e));
    this.draw();
  }

  private frame() {
    return makeFrame(this.canvas.width, this.canvas.height, [0, DENSITY_X_MAX], [0, MAX_VALUE]);
  }

  private locate(e: MouseEvent): [number, number] {
    const rect = this.canvas.getBoundingClientRect();
    const f = this.frame();
    return [f.x.invert(e.clientX - rect.left), f.y.invert(e.clientY - rect.top)];
  }

  private hit(e: MouseEvent): number {
    const rect = this.canvas.getBoundingClientRect();
    const f = this.frame();
    return this.draft.points.findIndex(
      (p) =>
        Math.abs(f.x(p.x) - (e.clientX - rect.left)) < 8 &&
        Math.abs(f.y(p.value) - (e.clientY - rect.top)) < 8,
    );
  }

  private down(e: MouseEvent) {
    const idx = this.hit(e);
    if (e.altKey && idx > 0) {
      this.draft.removePoint(idx);
      this.changed();
      return;
    }
    this.dragging = idx;
  }

  private move(e: MouseEvent) {
    if (this.dragging < 0) return;
    const [x, v] = this.locate(e);
    this.draft.movePoint(this.dragging, x, v);
    this.changed();
  }

  private add(e: MouseEvent) {
    const [x, v] = this.locate(e);
    this.dragging = this.draft.addPoint(x, v);
    this.changed();
  }

  setDraft(draft: DensityDraft) {
    this.draft = draft;
    this.changed();
  }

  private changed() {
    this.draw();
    this.onChange();
  }

  draw() {
    const ctx = this.canvas.getContext("2d")!;
    const f = this.frame();
    drawAxes(ctx, f, this.canvas.width, this.canvas.height, { x: "x", y: "density" });
    ctx.strokeStyle = "#3ca951";
    ctx.lineWidth = 2;
    ctx.beginPath();
    const pts = this.draft.points;
    for (let i = 0; i < pts.length; i++) {
      const xEnd = i + 1 < pts.length ? pts[i + 1].x : DENSITY_X_MAX;
      ctx.moveTo(f.x(pts[i].x), f.y(pts[i].value));
      ctx.lineTo(f.x(xEnd), f.y(pts[i].value));
    }
    ctx.stroke();
    for (const p of pts) {
      ctx.beginPath();
      ctx.arc(f.x(p.x), f.y(p.value), 5, 0, 2 * Math.PI);
      ctx.fillStyle = "#3ca951";
      ctx.fill();
    }
  }
}

class StemPanel {
  ts: number[] = [0.05, 0.1, 0.2];
  private canvas: HTMLCanvasElement;
  private tooltip: HTMLElement;
  private api: Api;
  private recomputer = new Recomputer();
  private stems: Stem[] = [];
  private lines: ContourLineJson[] = [];
  private highlighted: Stem | null = null;

  constructor(canvas: HTMLCanvasElement, tooltip: HTMLElement, api: Api) {
    this.canvas = canvas;
    this.tooltip = tooltip;
    this.api = api;
    canvas.addEventListener("mousemove", (e) => this.hover(e));
    canvas.addEventListener("mouseleave", () => {
      this.highlighted = null;
      this.tooltip.textContent = "";
      this.draw();
    });
  }

  update(barcode: BarcodeJson | null, draft: DensityDraft) {
    this.stems = barcode ? barsToStems(barcode) : [];
    const { sMax } = stemExtent(this.stems);
    this.recomputer.schedule(
      (signal) =>
        this.api.contourLines(draft.toContourJson(), this.ts, [0, Math.max(sMax * 1.15, 0.5)], 120, signal),
      (lines) => {
        this.lines = lines;
        this.draw();
      },
    );
    this.draw();
  }

  private frame() {
    const { sMax, lengthMax } = stemExtent(this.stems);
    return makeFrame(
      this.canvas.width,
      this.canvas.height,
      [0, Math.max(sMax * 1.15, 0.5)],
      [0, Math.max(lengthMax * 1.3, 0.3)],
    );
  }

  private hover(e: MouseEvent) {
    const rect = this.canvas.getBoundingClientRect();
    const f = this.frame();
    const s = f.x.invert(e.clientX - rect.left);
    const tol = (f.x.domain[1] - f.x.domain[0]) * 0.01;
    this.highlighted = nearestStem(this.stems, s, tol);
    this.tooltip.textContent = this.highlighted
      ? `birth=${this.highlighted.s}  length=${this.highlighted.length}`
      : "";
    this.draw();
  }

  draw() {
    const ctx = this.canvas.getContext("2d")!;
    const f = this.frame();
    drawAxes(ctx, f, this.canvas.width, this.canvas.height, { x: "birth s", y: "length" });
    drawContourLines(ctx, f, this.lines);
    drawStems(ctx, f, this.stems, this.highlighted);
  }
}

class MeansPanel {
  degree = 1;
  labels: string[] = [];
  private canvas: HTMLCanvasElement;
  private api: Api;
  private recomputer = new Recomputer();
  private curves: NamedCurve[] = [];

  constructor(canvas: HTMLCanvasElement, api: Api) {
    this.canvas = canvas;
    this.api = api;
  }

  update(draft: DensityDraft) {
    if (!this.labels.length) return;
    this.recomputer.schedule(
      (signal) => this.api.means(draft.toContourJson(), this.labels, this.degree, signal),
      (means) => {
        this.curves = curvesFromMeans(means, this.degree);
        this.draw();
      },
    );
  }

  draw() {
    const { xMax, yMax } = curveWindow(this.curves);
    const ctx = this.canvas.getContext("2d")!;
    const f = makeFrame(this.canvas.width, this.canvas.height, [0, xMax], [0, yMax]);
    drawAxes(ctx, f, this.canvas.width, this.canvas.height, { x: "t", y: "mean stable rank" });
    drawCurves(ctx, f, this.curves, xMax);
  }
}

function download(name: string, text: string) {
  const a = document.createElement("a");
  a.href = URL.createObjectURL(new Blob([text], { type: "application/json" }));
  a.download = name;
  a.click();
  URL.revokeObjectURL(a.href);
}

export async function startApp(root: Document = document) {
  const api = new Api("");
  const el = <T extends HTMLElement>(id: string) => root.getElementById(id) as T;

  const editor = new DensityEditor(el<HTMLCanvasElement>("density-canvas"));
  const stems = new StemPanel(el<HTMLCanvasElement>("stem-canvas"), el("stem-tooltip"), api);
  const means = new MeansPanel(el<HTMLCanvasElement>("means-canvas"), api);

  let currentBarcode: BarcodeJson | null = null;
  const refresh = () => {
    stems.update(currentBarcode, editor.draft);
    means.update(editor.draft);
  };
  editor.onChange = refresh;

  const kindSelect = el<HTMLSelectElement>("kind-select");
  kindSelect.addEventListener("change", () => {
    editor.draft.kind = kindSelect.value as "distance" | "shift";
    refresh();
  });

  const alphaSlider = el<HTMLInputElement>("alpha-slider");
  const alphaLabel = el("alpha-label");
  alphaSlider.addEventListener("input", () => {
    const frac = Number(alphaSlider.value) / Number(alphaSlider.max);
    editor.draft.alpha = frac >= 1 ? "inf" : Number((frac * ALPHA_MAX).toFixed(3));
    alphaLabel.textContent = `alpha = ${editor.draft.alpha}`;
    refresh();
  });

  const tsInput = el<HTMLInputElement>("ts-input");
  tsInput.value = stems.ts.join(",");
  tsInput.addEventListener("change", () => {
    const parsed = tsInput.value
      .split(",")
      .map((x) => Number(x.trim()))
      .filter((x) => Number.isFinite(x) && x >= 0);
    if (parsed.length) {
      stems.ts = parsed;
      refresh();
    }
  });

  const degreeSelect = el<HTMLSelectElement>("degree-select");
  degreeSelect.addEventListener("change", () => {
    means.degree = Number(degreeSelect.value);
    refresh();
  });

  el<HTMLButtonElement>("export-button").addEventListener("click", () => {
    download("contour.json", exportContour(editor.draft));
  });

  el<HTMLInputElement>("import-input").addEventListener("change", async (e) => {
    const file = (e.target as HTMLInputElement).files?.[0];
    if (!file) return;
    editor.setDraft(DensityDraft.fromContourJson(JSON.parse(await file.text())));
    kindSelect.value = editor.draft.kind;
  });

  const status = el("status");
  let datasets: DatasetInfo[] = [];
  try {
    datasets = await api.datasets();
  } catch (err) {
    status.textContent = `service unreachable: ${err}`;
    return;
  }
  status.textContent = datasets.length ? "" : "workspace is empty";

  const labelBoxes = el("label-boxes");
  means.labels = datasets.map((d) => d.label);
  for (const ds of datasets) {
    const box = root.createElement("label");
    const input = root.createElement("input");
    input.type = "checkbox";
    input.checked = true;
    input.addEventListener("change", () => {
      means.labels = Array.from(labelBoxes.querySelectorAll("input"))
        .filter((i) => (i as HTMLInputElement).checked)
        .map((i) => i.parentElement!.textContent!.trim());
      refresh();
    });
    box.append(input, ` ${ds.label}`);
    labelBoxes.append(box);
  }

  const barcodeSelect = el<HTMLSelectElement>("barcode-select");
  const ids: string[] = [];
  for (const ds of datasets) {
    for (const degree of Object.keys(ds.degrees)) {
      ids.push(`${ds.label}-0000-h${degree}`);
    }
  }
  for (const id of ids) {
    const opt = root.createElement("option");
    opt.value = id;
    opt.textContent = id;
    barcodeSelect.append(opt);
  }
  const pickBarcode = async () => {
    if (!barcodeSelect.value) return;
    currentBarcode = await api.barcode(barcodeSelect.value);
    refresh();
  };
  barcodeSelect.addEventListener("change", pickBarcode);
  const h1Default = ids.find((i) => i.endsWith("h1"));
  if (h1Default) barcodeSelect.value = h1Default;
  await pickBarcode();
  refresh();
}

if (typeof document !== "undefined" && document.getElementById("density-canvas")) {
  startApp();
}
