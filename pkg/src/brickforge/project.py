"""Named project workspaces: a directory holding a manifest plus artifacts.

The manifest is the saved truth; canvas edits and parameter changes live in
memory until save_all writes everything back. Two dirty flags drive the UI
guards: draw_dirty for unsaved strokes, brick_dirty for dimension, seed or
constraint changes that invalidate previously exported sequences.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .canvas import DEFAULT_COLS, DEFAULT_ROWS, CanvasState, CanvasType
from .errors import (
    AlreadyExistsError,
    CorruptManifestError,
    InvalidNameError,
    IoFailureError,
    NotFoundError,
)
from .export import (
    detailed_filename,
    dnadata_filename,
    pdf_filename,
    render_shape_svg,
    write_detailed,
    write_dnadata,
    write_pdf,
)
from .lattice import BrickDimensions, adjust_dimensions, default_dimensions
from .seqdesign import ConstraintParams, DesignOutput, build_design

_NAME_RE = re.compile(r"^[A-Za-z0-9_-]+$")
DEFAULT_SEED = 1
MANIFEST_NAME = "project.json"


@dataclass
class Project:
    name: str
    root: Path
    canvas: CanvasState
    dims: BrickDimensions
    seed: int = DEFAULT_SEED
    params: ConstraintParams = field(default_factory=ConstraintParams)
    brick_dirty: bool = False

    @property
    def draw_dirty(self) -> bool:
        return self.canvas.dirty

    @property
    def manifest_path(self) -> Path:
        return self.root / MANIFEST_NAME


def pending_unsaved(project: Project) -> bool:
    return project.draw_dirty or project.brick_dirty


def _selection_payload(project: Project) -> list[list[int]]:
    if project.canvas.canvas_type is CanvasType.FREE:
        return [[r, c] for r, c in sorted(project.canvas.selection)]
    return [
        [x1, y1, x2, y2]
        for (x1, y1), (x2, y2) in sorted(project.canvas.selection)
    ]


def manifest_dict(project: Project) -> dict:
    return {
        "name": project.name,
        "canvas_type": project.canvas.canvas_type.value,
        "rows": project.canvas.rows,
        "cols": project.canvas.cols,
        "height_nm": project.dims.height,
        "width_nm": project.dims.width,
        "seed": project.seed,
        "params": project.params.as_dict(),
        "selection": _selection_payload(project),
    }


def write_manifest(project: Project) -> Path:
    payload = json.dumps(manifest_dict(project), indent=2, sort_keys=True) + "\n"
    try:
        project.manifest_path.write_text(payload, encoding="ascii")
    except OSError as exc:
        raise IoFailureError(f"cannot write manifest: {exc}") from exc
    return project.manifest_path


def create_project(
    data_dir: Path | str,
    name: str,
    canvas_type: CanvasType | str = CanvasType.FREE,
    rows: int = DEFAULT_ROWS,
    cols: int = DEFAULT_COLS,
) -> Project:
    if not _NAME_RE.match(name):
        raise InvalidNameError(
            f"project name {name!r} must match [A-Za-z0-9_-]+"
        )
    root = Path(data_dir) / name
    if root.exists():
        raise AlreadyExistsError(f"project {name!r} already exists")
    try:
        root.mkdir(parents=True)
    except OSError as exc:
        raise IoFailureError(f"cannot create project directory: {exc}") from exc
    project = Project(
        name=name,
        root=root,
        canvas=CanvasState(CanvasType(canvas_type), rows, cols),
        dims=default_dimensions(),
    )
    write_manifest(project)
    return project


def load_project(data_dir: Path | str, name: str) -> Project:
    root = Path(data_dir) / name
    path = root / MANIFEST_NAME
    if not path.is_file():
        raise NotFoundError(f"no project named {name!r}")
    try:
        raw = json.loads(path.read_text(encoding="ascii"))
    except (OSError, ValueError) as exc:
        raise CorruptManifestError(f"unreadable manifest for {name!r}: {exc}") from exc
    try:
        canvas_type = CanvasType(raw["canvas_type"])
        canvas = CanvasState(canvas_type, int(raw["rows"]), int(raw["cols"]))
        for item in raw["selection"]:
            if canvas_type is CanvasType.FREE:
                r, c = item
                canvas.selection.add((int(r), int(c)))
            else:
                x1, y1, x2, y2 = item
                canvas.selection.add(((int(x1), int(y1)), (int(x2), int(y2))))
        dims, _ = adjust_dimensions(float(raw["height_nm"]), float(raw["width_nm"]))
        project = Project(
            name=raw["name"],
            root=root,
            canvas=canvas,
            dims=dims,
            seed=int(raw["seed"]),
            params=ConstraintParams.from_dict(raw["params"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptManifestError(f"malformed manifest for {name!r}: {exc}") from exc
    return project


def list_projects(data_dir: Path | str) -> list[str]:
    base = Path(data_dir)
    if not base.is_dir():
        return []
    return sorted(p.name for p in base.iterdir() if (p / MANIFEST_NAME).is_file())


def set_dims(project: Project, height: float, width: float) -> tuple[BrickDimensions, bool]:
    dims, adjusted = adjust_dimensions(height, width)
    if dims != project.dims:
        project.dims = dims
        project.brick_dirty = True
    return dims, adjusted


def set_seed(project: Project, seed: int) -> None:
    if seed != project.seed:
        project.seed = seed
        project.brick_dirty = True


def set_params(project: Project, params: ConstraintParams) -> None:
    if params != project.params:
        project.params = params
        project.brick_dirty = True


def set_canvas(
    project: Project,
    canvas_type: CanvasType | str,
    rows: int | None = None,
    cols: int | None = None,
) -> CanvasState:
    """Replace the canvas, discarding any selection. Callers are expected to
    have resolved unsaved work first (the UI prompts; the CLI re-saves)."""
    new_type = CanvasType(canvas_type)
    old = project.canvas
    rows = rows if rows is not None else old.rows
    cols = cols if cols is not None else old.cols
    changed = new_type is not old.canvas_type or rows != old.rows or cols != old.cols or bool(old.selection)
    project.canvas = CanvasState(new_type, rows, cols, dirty=changed)
    return project.canvas


def design_output(project: Project) -> DesignOutput:
    return build_design(
        project.canvas.canvas_type,
        project.canvas.selection,
        project.dims,
        project.seed,
        project.params,
    )


def export_bytes(project: Project, kind: str) -> tuple[bytes, str, str]:
    """Render one artifact in memory; returns (payload, filename, media type)."""
    if kind == "svg":
        payload = render_shape_svg(
            project.canvas.selection,
            project.dims,
            project.canvas.rows,
            project.canvas.cols,
        )
        return payload, f"{project.name}.svg", "image/svg+xml"
    design = design_output(project)
    if kind == "dnadata":
        return write_dnadata(design), dnadata_filename(project.name), "text/csv"
    if kind == "detailed":
        return write_detailed(design), detailed_filename(project.name), "text/csv"
    if kind == "pdf":
        payload = write_pdf(design, project.canvas.selection, project.name)
        name = pdf_filename(project.name, project.canvas.canvas_type.value)
        return payload, name, "application/pdf"
    raise NotFoundError(f"unknown export kind {kind!r}")


def save_all(project: Project, design: DesignOutput | None = None) -> dict[str, Path]:
    """Write the three artifacts plus the manifest, then clear both dirty
    flags. Unless a precomputed design is passed in, the design is rebuilt
    from the current selection so artifacts always agree."""
    if design is None:
        design = design_output(project)
    paths = {
        "dnadata": project.root / dnadata_filename(project.name),
        "detailed": project.root / detailed_filename(project.name),
        "pdf": project.root / pdf_filename(project.name, project.canvas.canvas_type.value),
    }
    try:
        paths["dnadata"].write_bytes(write_dnadata(design))
        paths["detailed"].write_bytes(write_detailed(design))
        paths["pdf"].write_bytes(
            write_pdf(design, project.canvas.selection, project.name)
        )
    except OSError as exc:
        raise IoFailureError(f"cannot write artifacts: {exc}") from exc
    paths["manifest"] = write_manifest(project)
    project.canvas.mark_saved()
    project.brick_dirty = False
    return paths
