// Canvas renderers. Pure scaling only: the numbers drawn are exactly the
// numbers fetched.

import { linearScale, niceTicks, stepPath, Scale } from "./scales.js";
import { Stem } from "./stems.js";
import { ContourLineJson, StepFunctionJson, asNumber, isInf } from "./types.js";

export const CLASS_COLORS = [
  "#4269d0", "#efb118", "#ff725c", "#6cc5b0", "#3ca951", "#9c6b4e",
  "#97bbf5", "#a463f2", "#ff8ab7", "#9498a0",
];

interface Frame {
  x: Scale;
  y: Scale;
}

export function drawAxes(
  ctx: CanvasRenderingContext2D,
  frame: Frame,
  width: number,
  height: number,
  labels: { x: string; y: string },
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.save();
  ctx.strokeStyle = "#ccc";
  ctx.fillStyle = "#666";
  ctx.font = "11px sans-serif";
  ctx.beginPath();
  for (const t of niceTicks(frame.x.domain[0], frame.x.domain[1])) {
    const px = frame.x(t);
    ctx.moveTo(px, frame.y(frame.y.domain[0]));
    ctx.lineTo(px, frame.y(frame.y.domain[1]));
    ctx.fillText(t.toPrecision(3).replace(/\.?0+$/, ""), px + 2, height - 4);
  }
  for (const t of niceTicks(frame.y.domain[0], frame.y.domain[1])) {
    const py = frame.y(t);
    ctx.moveTo(frame.x(frame.x.domain[0]), py);
    ctx.lineTo(frame.x(frame.x.domain[1]), py);
    ctx.fillText(t.toPrecision(3).replace(/\.?0+$/, ""), 4, py - 2);
  }
  ctx.stroke();
  ctx.fillStyle = "#333";
  ctx.fillText(labels.x, width - 8 - ctx.measureText(labels.x).width, height - 16);
  ctx.fillText(labels.y, 8, 12);
  ctx.restore();
}

export function makeFrame(
  width: number,
  height: number,
  xDomain: [number, number],
  yDomain: [number, number],
): Frame {
  const pad = { left: 34, right: 10, top: 10, bottom: 22 };
  return {
    x: linearScale(xDomain, [pad.left, width - pad.right]),
    y: linearScale(yDomain, [height - pad.bottom, pad.top]),
  };
}

export function drawStems(
  ctx: CanvasRenderingContext2D,
  frame: Frame,
  stems: Stem[],
  highlight: Stem | null,
): void {
  const indexNudge = 2; // px offset separating equal births
  for (const st of stems) {
    const px = frame.x(st.s) + st.index * indexNudge;
    const top = Number.isFinite(st.length) ? frame.y(st.length) : frame.y.range[1];
    ctx.strokeStyle = st === highlight ? "#d62728" : "#4269d0";
    ctx.lineWidth = st === highlight ? 2 : 1;
    ctx.beginPath();
    ctx.moveTo(px, frame.y(0));
    ctx.lineTo(px, top);
    ctx.stroke();
    ctx.beginPath();
    ctx.arc(px, top, 2, 0, 2 * Math.PI);
    ctx.fillStyle = ctx.strokeStyle;
    ctx.fill();
  }
}

export function drawContourLines(
  ctx: CanvasRenderingContext2D,
  frame: Frame,
  lines: ContourLineJson[],
): void {
  ctx.save();
  ctx.setLineDash([5, 3]);
  lines.forEach((line, i) => {
    ctx.strokeStyle = CLASS_COLORS[(i + 2) % CLASS_COLORS.length];
    ctx.beginPath();
    let pen = false;
    for (const [s, h] of line.samples) {
      if (isInf(h) || asNumber(h) > frame.y.domain[1] * 1.5) {
        pen = false; // truncated to infinity: break the curve
        continue;
      }
      const px = frame.x(s);
      const py = frame.y(asNumber(h));
      if (pen) ctx.lineTo(px, py);
      else ctx.moveTo(px, py);
      pen = true;
    }
    ctx.stroke();
    const lastFinite = line.samples.filter(([, h]) => !isInf(h)).pop();
    if (lastFinite) {
      ctx.fillStyle = ctx.strokeStyle;
      ctx.fillText(`t=${line.t}`, frame.x(lastFinite[0]) - 28, frame.y(asNumber(lastFinite[1])) - 4);
    }
  });
  ctx.restore();
}

export function drawCurves(
  ctx: CanvasRenderingContext2D,
  frame: Frame,
  curves: { name: string; fn: StepFunctionJson }[],
  xMax: number,
): void {
  curves.forEach((curve, i) => {
    const pts = stepPath(curve.fn.breakpoints, curve.fn.values, xMax);
    ctx.strokeStyle = CLASS_COLORS[i % CLASS_COLORS.length];
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    pts.forEach(([x, y], j) => {
      if (j === 0) ctx.moveTo(frame.x(x), frame.y(y));
      else ctx.lineTo(frame.x(x), frame.y(y));
    });
    ctx.stroke();
    ctx.fillStyle = ctx.strokeStyle;
    ctx.fillText(curve.name, frame.x.range[1] - 90, 14 + 13 * i);
  });
}
