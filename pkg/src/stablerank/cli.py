"""Command-line interface: one verb per pipeline stage plus the service."""
from __future__ import annotations

import json
from pathlib import Path

import click

from .barcodes import default_alpha_grid, stable_rank, stable_rank_2d
from .contours import contour_lines, standard_contour
from .pipeline import (
    config_from_json,
    default_workspace,
    load_workspace,
    run_pipeline,
    stable_ranks_for_workspace,
)
from .persistence import vr_persistence
from .processes import ProcessSpec, simulate_batch
from .serialize import (
    barcode_to_json,
    canonical_json,
    confusion_to_json,
    contour_from_json,
    emit_stem_plot,
    grid2d_to_json,
    parse_barcode_file,
    parse_extended,
    read_point_cloud_csv,
    step_function_to_json,
    write_confusion_csv,
    write_point_cloud_csv,
)
from .classify import cross_validate


@click.group()
def main():
    """Stable-rank invariants of persistence barcodes."""


def _load_contour(path):
    if path is None:
        return standard_contour()
    return contour_from_json(json.loads(Path(path).read_text()))


def _parse_params(params):
    out = {}
    for item in params:
        key, _, value = item.partition("=")
        if not _:
            raise click.BadParameter(f"expected key=value, got {item!r}")
        out[key] = float(value)
    return out


@main.command()
@click.option("--process", "kind", required=True, help="poisson|normal|matern|thomas|baddeley-silverman|ifs")
@click.option("--count", default=1, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--param", "params", multiple=True, help="override, e.g. --param lam=100")
@click.option("--out", "out_dir", required=True, type=click.Path())
def simulate(kind, count, seed, params, out_dir):
    """Sample a point process into numbered CSV files."""
    spec = ProcessSpec(kind, _parse_params(params), seed=seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, cloud in enumerate(simulate_batch(spec, count)):
        write_point_cloud_csv(cloud, out / f"{i:04d}.csv")
    click.echo(f"wrote {count} cloud(s) to {out}")


@main.command()
@click.option("--clouds", "clouds_dir", required=True, type=click.Path(exists=True))
@click.option("--degrees", default="0,1", show_default=True)
@click.option("--max-filtration", type=float, default=None, help="default: full filtration")
@click.option("--out", "out_dir", required=True, type=click.Path())
def persist(clouds_dir, degrees, max_filtration, out_dir):
    """Vietoris-Rips persistence of every cloud CSV in a directory."""
    degs = tuple(int(d) for d in degrees.split(","))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = sorted(Path(clouds_dir).glob("*.csv"))
    if not files:
        raise click.ClickException(f"no .csv point clouds under {clouds_dir}")
    for file in files:
        cloud = read_point_cloud_csv(file)
        for degree, bc in vr_persistence(cloud, degs, max_filtration).items():
            target = out / f"{file.stem}-h{degree}.json"
            target.write_text(canonical_json(barcode_to_json(bc)))
    click.echo(f"wrote barcodes for {len(files)} cloud(s) to {out}")


@main.command("stablerank")
@click.option("--barcode", "barcode_path", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", default="json", show_default=True,
              type=click.Choice(["json", "csv", "ripser-text"]))
@click.option("--degree", type=int, default=None)
@click.option("--contour", "contour_path", type=click.Path(exists=True), default=None)
@click.option("--alphas", default=None, help="comma list (inf allowed) for the 2D invariant")
@click.option("--out", "out_path", type=click.Path(), default=None, help="default: stdout")
def stablerank_cmd(barcode_path, fmt, degree, contour_path, alphas, out_path):
    """Stable rank of a barcode under a contour (2D when --alphas given)."""
    bc = parse_barcode_file(barcode_path, fmt, degree)
    contour = _load_contour(contour_path)
    if alphas is None:
        payload = step_function_to_json(stable_rank(contour, bc))
    else:
        if alphas == "default":
            grid = default_alpha_grid(bc)
        else:
            grid = [parse_extended(a.strip()) for a in alphas.split(",")]
        payload = grid2d_to_json(stable_rank_2d(contour, bc, grid))
    text = canonical_json(payload)
    if out_path is None:
        click.echo(text, nl=False)
    else:
        Path(out_path).write_text(text)


@main.command("classify")
@click.option("--workspace", type=click.Path(exists=True), default=default_workspace)
@click.option("--contour", "contour_path", type=click.Path(exists=True), default=None,
              help="contour for every degree")
@click.option("--degree-contour", "degree_contours", multiple=True,
              help="per-degree override, e.g. --degree-contour 1=shift.json")
@click.option("--train-size", default=200, show_default=True)
@click.option("--folds", default=20, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--p", default=1.0, show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
def classify_cmd(workspace, contour_path, degree_contours, train_size, folds, seed, p, out_dir):
    """Cross-validate the mean-invariant classifier over a workspace."""
    if workspace is None:
        raise click.ClickException("pass --workspace or set STABLERANK_WORKSPACE")
    ws = load_workspace(workspace)
    if not ws.labels:
        raise click.ClickException(f"workspace {workspace} has no labels.json")
    shared = _load_contour(contour_path)
    contours = {d: shared for d in ws.degrees()}
    for item in degree_contours:
        key, _, path = item.partition("=")
        contours[int(key)] = _load_contour(path)
    data = stable_ranks_for_workspace(ws, contours)
    cm = cross_validate(data, train_size=train_size, folds=folds, seed=seed, p=p)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "confusion.json").write_text(canonical_json(confusion_to_json(cm)))
    write_confusion_csv(cm, out / "confusion.csv")
    from .classify import mean_accuracy

    click.echo(f"mean accuracy: {mean_accuracy(cm):.4f}")


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
def pipeline(config_path, out_dir):
    """Run the full pipeline from a JSON config."""
    config = config_from_json(json.loads(Path(config_path).read_text()))
    cm = run_pipeline(config, out_dir)
    from .classify import mean_accuracy

    click.echo(f"mean accuracy: {mean_accuracy(cm):.4f}")


@main.command()
@click.option("--workspace", type=click.Path(exists=True), default=default_workspace)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8080, show_default=True)
@click.option("--static", "static_dir", type=click.Path(), default=None,
              help="directory of UI assets to serve at /")
def serve(workspace, host, port, static_dir):
    """Serve the JSON API (and optionally the UI) over a workspace."""
    if workspace is None:
        raise click.ClickException("pass --workspace or set STABLERANK_WORKSPACE")
    import uvicorn

    from .service import create_app

    uvicorn.run(
        create_app(workspace, static_dir),
        host=host,
        port=port,
        log_level="warning",
        timeout_keep_alive=300,  # clients may idle between recomputes
    )


@main.command()
@click.option("--barcode", "barcode_path", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", default="json", show_default=True,
              type=click.Choice(["json", "csv", "ripser-text"]))
@click.option("--degree", type=int, default=None)
@click.option("--out", "out_path", required=True, type=click.Path())
def stemplot(barcode_path, fmt, degree, out_path):
    """Export the stem-plot CSV of a barcode."""
    bc = parse_barcode_file(barcode_path, fmt, degree)
    emit_stem_plot(bc, out_path)
    click.echo(f"wrote {out_path}")


@main.command()
@click.option("--contour", "contour_path", type=click.Path(exists=True), default=None)
@click.option("--ts", required=True, help="comma list of t values")
@click.option("--s-range", default="0,1", show_default=True)
@click.option("--n", "n_samples", default=101, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
def contourlines(contour_path, ts, s_range, n_samples, out_path):
    """Export contour-line samples as CSV."""
    from .serialize import write_contour_lines_csv

    contour = _load_contour(contour_path)
    t_list = [float(t) for t in ts.split(",")]
    lo, hi = (float(x) for x in s_range.split(","))
    lines = contour_lines(contour, t_list, (lo, hi), n_samples)
    write_contour_lines_csv(lines, out_path)
    click.echo(f"wrote {out_path}")


if __name__ == "__main__":
    main()
