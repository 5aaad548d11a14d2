"""File and wire formats: JSON schemas, CSV layouts, external ingestion.

One grammar everywhere: infinity is the string token ``"inf"`` in JSON
and the bare token ``inf`` in CSV. Floats are written with ``repr``
(shortest round-trip), so identical values serialize to identical bytes
no matter which surface produced them.
"""
from __future__ import annotations

import json
import math
import re
from pathlib import Path

import numpy as np

from .barcodes import Bar, Barcode
from .contours import Contour, ContourLine, Density
from .stepfun import INF, Grid2DFunction, StepFunction

__all__ = [
    "canonical_json",
    "format_extended",
    "parse_extended",
    "step_function_to_json",
    "step_function_from_json",
    "grid2d_to_json",
    "grid2d_from_json",
    "density_to_json",
    "density_from_json",
    "contour_to_json",
    "contour_from_json",
    "barcode_to_json",
    "barcode_from_json",
    "parse_barcode_file",
    "write_barcode_csv",
    "write_barcode_json",
    "emit_stem_plot",
    "write_contour_lines_csv",
    "write_point_cloud_csv",
    "read_point_cloud_csv",
    "confusion_to_json",
    "write_confusion_csv",
]

INF_TOKEN = "inf"


def canonical_json(obj) -> str:
    """The one JSON rendering used by files and service responses alike."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def format_extended(x: float):
    return INF_TOKEN if x == INF else float(x)


def parse_extended(v) -> float:
    if isinstance(v, str):
        s = v.strip().lower()
        if s == INF_TOKEN:
            return INF
        try:
            v = float(s)
        except ValueError:
            raise ValueError(f"expected a number or {INF_TOKEN!r}, got {v!r}") from None
    x = float(v)
    if math.isnan(x):
        raise ValueError("NaN is not a valid extended real")
    return x


# ---------------------------------------------------------------- functions

def step_function_to_json(f: StepFunction) -> dict:
    return {"breakpoints": f.breakpoints.tolist(), "values": f.values.tolist()}


def step_function_from_json(obj: dict) -> StepFunction:
    return StepFunction(obj["breakpoints"], obj["values"])


def grid2d_to_json(g: Grid2DFunction) -> dict:
    return {
        "alphas": [format_extended(a) for a in g.alphas],
        "slices": [step_function_to_json(s) for s in g.slices],
    }


def grid2d_from_json(obj: dict) -> Grid2DFunction:
    return Grid2DFunction(
        [parse_extended(a) for a in obj["alphas"]],
        [step_function_from_json(s) for s in obj["slices"]],
    )


# ----------------------------------------------------------------- contours

def density_to_json(d: Density) -> dict:
    return {"breakpoints": list(d.breakpoints), "values": list(d.values)}


def density_from_json(obj: dict) -> Density:
    return Density(tuple(obj["breakpoints"]), tuple(obj["values"]))


def contour_to_json(c: Contour) -> dict:
    return {
        "kind": c.kind,
        "param": c.param,
        "density": density_to_json(c.density) if c.density is not None else None,
        "alpha": format_extended(c.alpha),
    }


def contour_from_json(obj: dict) -> Contour:
    if "kind" not in obj:
        raise ValueError("contour spec needs a 'kind'")
    density = obj.get("density")
    return Contour(
        kind=obj["kind"],
        param=None if obj.get("param") is None else float(obj["param"]),
        density=density_from_json(density) if density is not None else None,
        alpha=parse_extended(obj.get("alpha", INF_TOKEN)),
    )


# ----------------------------------------------------------------- barcodes

def barcode_to_json(b: Barcode) -> dict:
    return {
        "degree": b.degree,
        "bars": [[bar.birth, format_extended(bar.death)] for bar in b.bars],
    }


def barcode_from_json(obj: dict) -> Barcode:
    return Barcode(
        int(obj["degree"]),
        [Bar(float(s), parse_extended(e)) for s, e in obj["bars"]],
    )


def write_barcode_json(b: Barcode, path) -> None:
    Path(path).write_text(canonical_json(barcode_to_json(b)))


def write_barcode_csv(b: Barcode, path) -> None:
    lines = ["birth,death"]
    lines += [f"{bar.birth!r},{INF_TOKEN if not bar.finite else repr(bar.death)}" for bar in b.bars]
    Path(path).write_text("\n".join(lines) + "\n")


def _parse_barcode_csv(text: str, degree: int) -> Barcode:
    bars = []
    lines = text.splitlines()
    if not lines or lines[0].strip().lower() != "birth,death":
        raise ValueError("barcode CSV must start with a 'birth,death' header")
    for ln, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"line {ln}: expected 'birth,death', got {line!r}")
        try:
            birth = float(parts[0])
            death = parse_extended(parts[1].strip())
            bars.append(Bar(birth, death))
        except ValueError as err:
            raise ValueError(f"line {ln}: {err}") from err
    return Barcode(degree, bars)


_RIPSER_HEADER = re.compile(r"persistence intervals in dim (\d+):")
_RIPSER_INTERVAL = re.compile(r"^\s*\[\s*([0-9.eE+-]+)\s*,\s*([0-9.eE+-]*)\s*\)\s*$")


def parse_ripser_text(text: str) -> dict:
    """All dimension sections of a ripser-style text dump."""
    sections = {}
    current = None
    for ln, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        header = _RIPSER_HEADER.search(stripped)
        if header:
            current = int(header.group(1))
            sections.setdefault(current, [])
            continue
        match = _RIPSER_INTERVAL.match(stripped)
        if match:
            if current is None:
                raise ValueError(f"line {ln}: interval before any dimension header")
            try:
                birth = float(match.group(1))
                death = INF if match.group(2) == "" else float(match.group(2))
                sections[current].append(Bar(birth, death))
            except ValueError as err:
                raise ValueError(f"line {ln}: {err}") from err
            continue
        if current is None:
            continue  # preamble chatter (value ranges etc.)
        raise ValueError(f"line {ln}: unrecognized interval line {stripped!r}")
    return {deg: Barcode(deg, bars) for deg, bars in sections.items()}


def load_bundled_contour(name: str = "h1-shift") -> Contour:
    """A contour shipped with the package (currently only ``h1-shift``,
    the hand-tuned density that separates the benchmark point processes
    better than the standard contour in degree 1)."""
    from importlib.resources import files

    filename = {"h1-shift": "h1_shift_contour.json"}.get(name)
    if filename is None:
        raise ValueError(f"unknown bundled contour {name!r}")
    return contour_from_json(json.loads(files("stablerank.data").joinpath(filename).read_text()))


def parse_barcode_file(path, format: str = "json", degree: int | None = None) -> Barcode:
    """Read a barcode from ``csv``, ``ripser-text`` or ``json``.

    ``degree`` labels CSV input (default 0) and selects the section of a
    multi-dimension ripser dump; a single-section dump needs no selector.
    """
    text = Path(path).read_text()
    if format == "json":
        return barcode_from_json(json.loads(text))
    if format == "csv":
        return _parse_barcode_csv(text, 0 if degree is None else degree)
    if format == "ripser-text":
        sections = parse_ripser_text(text)
        if degree is None:
            if len(sections) == 1:
                return next(iter(sections.values()))
            raise ValueError(
                f"file has sections for dims {sorted(sections)}; pass degree to pick one"
            )
        if degree not in sections:
            raise ValueError(f"no 'persistence intervals in dim {degree}' section found")
        return sections[degree]
    raise ValueError(f"unknown barcode format {format!r}")


# ------------------------------------------------------------------- plots

def emit_stem_plot(b: Barcode, path) -> None:
    """CSV of stems (birth, length) with an index splitting equal births."""
    lines = ["s,length,multiplicity_index"]
    seen = {}
    for bar in b.bars:  # bars are sorted, so equal births are consecutive
        idx = seen.get(bar.birth, 0)
        seen[bar.birth] = idx + 1
        length = INF_TOKEN if not bar.finite else repr(bar.death - bar.birth)
        lines.append(f"{bar.birth!r},{length},{idx}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_contour_lines_csv(lines, path) -> None:
    rows = ["t,s,height"]
    for line in lines:
        for s, h in line.samples:
            rows.append(f"{line.t!r},{s!r},{INF_TOKEN if h == INF else repr(h)}")
    Path(path).write_text("\n".join(rows) + "\n")


def contour_lines_to_json(lines) -> list:
    return [
        {
            "t": line.t,
            "samples": [[s, INF_TOKEN if h == INF else h] for s, h in line.samples],
        }
        for line in lines
    ]


# ------------------------------------------------------------- point clouds

def write_point_cloud_csv(points, path) -> None:
    pts = np.asarray(points, dtype=np.float64)
    rows = [",".join(repr(float(x)) for x in row) for row in pts]
    Path(path).write_text("\n".join(rows) + "\n")


def read_point_cloud_csv(path) -> np.ndarray:
    rows = []
    for ln, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rows.append([float(x) for x in line.split(",")])
        except ValueError as err:
            raise ValueError(f"line {ln}: {err}") from err
    if not rows:
        raise ValueError("point cloud file is empty")
    width = {len(r) for r in rows}
    if len(width) != 1:
        raise ValueError("rows have inconsistent dimension")
    return np.array(rows)


# ---------------------------------------------------------------- confusion

def confusion_to_json(cm) -> dict:
    return {
        "labels": list(cm.labels),
        "rates": [[float(x) for x in row] for row in cm.counts],
        "fold_accuracies": list(cm.fold_accuracies),
        "ties": cm.ties,
        "all_infinite": cm.all_infinite,
    }


def write_confusion_csv(cm, path) -> None:
    lines = ["true\\predicted," + ",".join(cm.labels)]
    for label, row in zip(cm.labels, cm.counts):
        lines.append(label + "," + ",".join(repr(float(x)) for x in row))
    Path(path).write_text("\n".join(lines) + "\n")
