"""Read-only JSON service over a loaded workspace, backing the explorer UI.

Every endpoint is a pure computation over the immutable dataset loaded at
startup, rendered through the same canonical JSON writer the CLI uses, so
a service response and the matching CLI output are byte-identical.
"""
from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .barcodes import default_alpha_grid, stable_rank, stable_rank_2d
from .contours import contour_lines
from .pipeline import Workspace, load_workspace
from .serialize import (
    barcode_to_json,
    canonical_json,
    contour_from_json,
    contour_lines_to_json,
    grid2d_to_json,
    parse_extended,
    step_function_to_json,
)
from .stepfun import pointwise_mean

__all__ = ["create_app"]


def _json(payload) -> Response:
    return Response(content=canonical_json(payload), media_type="application/json")


def _bad_request(message: str) -> JSONResponse:
    return JSONResponse(status_code=400, content={"error": message})


def _not_found(message: str) -> JSONResponse:
    return JSONResponse(status_code=404, content={"error": message})


def create_app(workspace_dir, static_dir=None) -> FastAPI:
    ws: Workspace = load_workspace(workspace_dir)
    app = FastAPI(title="stablerank", version="0.1.0")

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return _bad_request(str(exc))

    @app.get("/datasets")
    async def datasets():
        payload = [
            {
                "label": label,
                "degrees": {str(d): len(ids) for d, ids in sorted(groups.items())},
            }
            for label, groups in sorted(ws.labels.items())
        ]
        return _json(payload)

    @app.get("/barcodes/{barcode_id}")
    async def get_barcode(barcode_id: str):
        if barcode_id not in ws.barcodes:
            return _not_found(f"unknown barcode {barcode_id!r}")
        return _json(barcode_to_json(ws.barcodes[barcode_id]))

    @app.post("/contour/lines")
    async def post_contour_lines(body: dict):
        contour = contour_from_json(body.get("contour") or {})
        ts = [float(t) for t in body.get("ts") or []]
        if not ts:
            raise ValueError("need a non-empty 'ts' list")
        s_range = tuple(body.get("s_range", (0.0, 1.0)))
        n_samples = int(body.get("n_samples", 100))
        lines = contour_lines(contour, ts, s_range, n_samples)
        return _json({"lines": contour_lines_to_json(lines)})

    def _resolve_ids(body: dict):
        ids = body.get("ids")
        if not ids:
            raise ValueError("need a non-empty 'ids' list")
        missing = [i for i in ids if i not in ws.barcodes]
        if missing:
            raise KeyError(", ".join(missing))
        return ids

    @app.post("/stablerank")
    async def post_stablerank(body: dict):
        contour = contour_from_json(body.get("contour") or {})
        try:
            ids = _resolve_ids(body)
        except KeyError as err:
            return _not_found(f"unknown barcode(s): {err.args[0]}")
        results = {
            i: step_function_to_json(stable_rank(contour, ws.barcodes[i])) for i in ids
        }
        return _json({"results": results})

    @app.post("/stablerank2d")
    async def post_stablerank2d(body: dict):
        contour = contour_from_json(body.get("contour") or {})
        try:
            ids = _resolve_ids(body)
        except KeyError as err:
            return _not_found(f"unknown barcode(s): {err.args[0]}")
        alphas = body.get("alphas")
        results = {}
        for i in ids:
            bc = ws.barcodes[i]
            grid = (
                [parse_extended(a) for a in alphas]
                if alphas is not None
                else default_alpha_grid(bc)
            )
            results[i] = grid2d_to_json(stable_rank_2d(contour, bc, grid))
        return _json({"results": results})

    @app.post("/means")
    async def post_means(body: dict):
        contour = contour_from_json(body.get("contour") or {})
        labels = body.get("labels") or sorted(ws.labels)
        degree = body.get("degree")
        unknown = [l for l in labels if l not in ws.labels]
        if unknown:
            return _not_found(f"unknown label(s): {', '.join(unknown)}")
        means = {}
        for label in labels:
            groups = ws.labels[label]
            degrees = sorted(groups) if degree is None else [int(degree)]
            means[label] = {}
            for d in degrees:
                if d not in groups:
                    return _not_found(f"label {label!r} has no degree {d}")
                curves = [stable_rank(contour, ws.barcodes[i]) for i in groups[d]]
                means[label][str(d)] = step_function_to_json(pointwise_mean(curves))
        return _json({"means": means})

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
