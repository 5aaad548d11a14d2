"""End-to-end pipeline: simulate, persist, stable-rank, classify.

A pipeline run is driven by a declarative JSON config and writes a
self-contained artifact directory: point clouds, barcodes, stable ranks,
confusion matrices, stem plots, contour lines and a manifest that pins
the config, seeds and package version. Re-running from the manifest
reproduces every file byte for byte.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from joblib import Parallel, delayed

from . import __version__
from .barcodes import Barcode, stable_rank
from .classify import ConfusionMatrix, LabeledInvariantSet, cross_validate
from .contours import Contour, contour_lines, standard_contour
from .persistence import vr_persistence
from .processes import PROCESS_DEFAULTS, ProcessSpec, simulate_batch
from .serialize import (
    barcode_from_json,
    barcode_to_json,
    canonical_json,
    confusion_to_json,
    contour_from_json,
    contour_to_json,
    emit_stem_plot,
    step_function_to_json,
    write_confusion_csv,
    write_contour_lines_csv,
    write_point_cloud_csv,
)

__all__ = [
    "ClassSpec",
    "PipelineConfig",
    "Workspace",
    "load_workspace",
    "stable_ranks_for_workspace",
    "run_pipeline",
    "run_pipeline_from_manifest",
    "default_workspace",
]

WORKSPACE_ENV = "STABLERANK_WORKSPACE"


def default_workspace() -> str | None:
    return os.environ.get(WORKSPACE_ENV)


@dataclass(frozen=True)
class ClassSpec:
    label: str
    process: ProcessSpec
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be positive")


@dataclass(frozen=True)
class PipelineConfig:
    classes: tuple
    seed: int = 0
    degrees: tuple = (0, 1)
    max_filtration: float | None = None
    contours: dict = field(default_factory=dict)  # degree -> Contour
    train_size: int = 200
    folds: int = 20
    p: float = 1.0
    contour_line_ts: tuple = (0.05, 0.1, 0.2)
    input_barcodes: str | None = None
    n_jobs: int = 1

    def contour_for(self, degree: int) -> Contour:
        return self.contours.get(degree, standard_contour())

    def class_seed(self, index: int) -> int:
        # wide spacing keeps per-sample derived seeds from overlapping
        return self.seed + 1_000_000 * (index + 1)


def config_to_json(config: PipelineConfig) -> dict:
    return {
        "classes": [
            {
                "label": c.label,
                "process": {"kind": c.process.kind, "params": c.process.params},
                "count": c.count,
            }
            for c in config.classes
        ],
        "seed": config.seed,
        "degrees": list(config.degrees),
        "max_filtration": config.max_filtration,
        "contours": {str(d): contour_to_json(c) for d, c in config.contours.items()},
        "train_size": config.train_size,
        "folds": config.folds,
        "p": config.p,
        "contour_line_ts": list(config.contour_line_ts),
        "input_barcodes": config.input_barcodes,
        "n_jobs": config.n_jobs,
    }


def config_from_json(obj: dict) -> PipelineConfig:
    classes = []
    for entry in obj.get("classes", []):
        proc = entry.get("process", {})
        classes.append(
            ClassSpec(
                label=entry["label"],
                process=ProcessSpec(proc["kind"], proc.get("params", {})),
                count=int(entry.get("count", 500)),
            )
        )
    contours = {}
    if obj.get("contour") is not None:
        shared = contour_from_json(obj["contour"])
        for d in obj.get("degrees", [0, 1]):
            contours[int(d)] = shared
    for key, spec in (obj.get("contours") or {}).items():
        contours[int(key)] = contour_from_json(spec)
    return PipelineConfig(
        classes=tuple(classes),
        seed=int(obj.get("seed", 0)),
        degrees=tuple(int(d) for d in obj.get("degrees", [0, 1])),
        max_filtration=obj.get("max_filtration"),
        contours=contours,
        train_size=int(obj.get("train_size", 200)),
        folds=int(obj.get("folds", 20)),
        p=float(obj.get("p", 1.0)),
        contour_line_ts=tuple(obj.get("contour_line_ts", [0.05, 0.1, 0.2])),
        input_barcodes=obj.get("input_barcodes"),
        n_jobs=int(obj.get("n_jobs", 1)),
    )


def six_process_classes(count: int = 500) -> tuple:
    """The default benchmark: one class per built-in process."""
    return tuple(
        ClassSpec(label=kind, process=ProcessSpec(kind), count=count)
        for kind in PROCESS_DEFAULTS
    )


# ---------------------------------------------------------------- workspace

@dataclass
class Workspace:
    """Immutable on-disk dataset: barcodes by id plus the label index."""

    barcodes: dict  # id -> Barcode
    labels: dict  # label -> {degree: [ids]}

    def degrees(self) -> tuple:
        return tuple(sorted({b.degree for b in self.barcodes.values()}))


def load_workspace(path) -> Workspace:
    root = Path(path)
    barcodes = {}
    bdir = root / "barcodes"
    if bdir.is_dir():
        for file in sorted(bdir.glob("*.json")):
            barcodes[file.stem] = barcode_from_json(json.loads(file.read_text()))
    labels = {}
    labels_file = root / "labels.json"
    if labels_file.exists():
        raw = json.loads(labels_file.read_text())
        labels = {
            label: {int(d): list(ids) for d, ids in groups.items()}
            for label, groups in raw.items()
        }
        for groups in labels.values():
            for ids in groups.values():
                missing = [i for i in ids if i not in barcodes]
                if missing:
                    raise ValueError(f"labels.json references unknown barcodes {missing}")
    return Workspace(barcodes=barcodes, labels=labels)


def stable_ranks_for_workspace(ws: Workspace, contours: dict) -> list:
    """One LabeledInvariantSet per label under the per-degree contours."""
    out = []
    for label in sorted(ws.labels):
        groups = ws.labels[label]
        degree_map = {}
        for degree in sorted(groups):
            contour = contours.get(degree, standard_contour())
            degree_map[degree] = [
                stable_rank(contour, ws.barcodes[i]) for i in groups[degree]
            ]
        out.append(LabeledInvariantSet(label, degree_map))
    return out


# ------------------------------------------------------------------- stages

def _persist_one(points, degrees, max_filtration):
    return vr_persistence(points, degrees, max_filtration)


def run_pipeline(config: PipelineConfig, out_dir) -> ConfusionMatrix:
    """Execute every stage and write the artifact directory."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "barcodes").mkdir(exist_ok=True)

    manifest = {
        "version": __version__,
        "config": config_to_json(config),
        "class_seeds": {
            c.label: config.class_seed(i) for i, c in enumerate(config.classes)
        },
    }
    (out / "manifest.json").write_text(canonical_json(manifest))

    labels: dict = {}
    if config.input_barcodes:
        # ingestion mode: barcodes were computed elsewhere
        src = load_workspace(config.input_barcodes)
        if not src.barcodes or not src.labels:
            raise ValueError(
                f"input workspace {config.input_barcodes} has no barcodes/labels"
            )
        for bc_id, bc in src.barcodes.items():
            (out / "barcodes" / f"{bc_id}.json").write_text(
                canonical_json(barcode_to_json(bc))
            )
        labels = {
            label: {str(d): ids for d, ids in groups.items()}
            for label, groups in src.labels.items()
        }
    else:
        if not config.classes:
            raise ValueError("config has no classes and no input barcodes")
        clouds_dir = out / "clouds"
        for i, cls in enumerate(config.classes):
            cdir = clouds_dir / cls.label
            cdir.mkdir(parents=True, exist_ok=True)
            clouds = simulate_batch(cls.process, cls.count, config.class_seed(i))
            for j, cloud in enumerate(clouds):
                write_point_cloud_csv(cloud, cdir / f"{j:04d}.csv")
            results = Parallel(n_jobs=config.n_jobs)(
                delayed(_persist_one)(cloud, config.degrees, config.max_filtration)
                for cloud in clouds
            )
            groups = {str(d): [] for d in config.degrees}
            for j, barcodes in enumerate(results):
                for degree, bc in barcodes.items():
                    bc_id = f"{cls.label}-{j:04d}-h{degree}"
                    (out / "barcodes" / f"{bc_id}.json").write_text(
                        canonical_json(barcode_to_json(bc))
                    )
                    groups[str(degree)].append(bc_id)
            labels[cls.label] = groups
    (out / "labels.json").write_text(canonical_json(labels))

    ws = load_workspace(out)
    ranks_dir = out / "stableranks"
    ranks_dir.mkdir(exist_ok=True)
    data = stable_ranks_for_workspace(ws, config.contours)
    for cls_set in data:
        for degree, seq in cls_set.degree_map.items():
            for bc_id, fn in zip(ws.labels[cls_set.label][degree], seq):
                (ranks_dir / f"{bc_id}.json").write_text(
                    canonical_json(step_function_to_json(fn))
                )

    # illustrative exports: stems of each class's first sample, contour lines
    stems_dir = out / "stemplots"
    stems_dir.mkdir(exist_ok=True)
    for label in sorted(ws.labels):
        for degree, ids in sorted(ws.labels[label].items()):
            if ids:
                emit_stem_plot(ws.barcodes[ids[0]], stems_dir / f"{label}-h{degree}.csv")
    lines_dir = out / "contour_lines"
    lines_dir.mkdir(exist_ok=True)
    for degree in config.degrees:
        lines = contour_lines(
            config.contour_for(degree), config.contour_line_ts, (0.0, 1.0), 101
        )
        write_contour_lines_csv(lines, lines_dir / f"h{degree}.csv")

    def validate(subset, stem):
        cm = cross_validate(
            subset,
            train_size=config.train_size,
            folds=config.folds,
            seed=config.seed,
            p=config.p,
        )
        (out / f"{stem}.json").write_text(canonical_json(confusion_to_json(cm)))
        write_confusion_csv(cm, out / f"{stem}.csv")
        fold_lines = ["fold,accuracy"] + [
            f"{i},{acc!r}" for i, acc in enumerate(cm.fold_accuracies)
        ]
        (out / f"{stem}-folds.csv").write_text("\n".join(fold_lines) + "\n")
        return cm

    # combined score over all degrees, plus each degree on its own
    cm = validate(data, "confusion")
    degrees = sorted({d for cls in data for d in cls.degree_map})
    if len(degrees) > 1:
        for degree in degrees:
            single = [
                LabeledInvariantSet(cls.label, {degree: cls.degree_map[degree]})
                for cls in data
                if degree in cls.degree_map
            ]
            validate(single, f"confusion-h{degree}")
    return cm


def run_pipeline_from_manifest(manifest_path, out_dir) -> ConfusionMatrix:
    manifest = json.loads(Path(manifest_path).read_text())
    return run_pipeline(config_from_json(manifest["config"]), out_dir)
