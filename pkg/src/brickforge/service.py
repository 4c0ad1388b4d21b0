"""HTTP facade over project workspaces.

One in-memory Project per name, guarded by a per-project lock so concurrent
strokes serialize instead of corrupting the selection set. All domain errors
surface as JSON {error: {code, message}} with the mapped status code.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Literal, Optional

from fastapi import FastAPI
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, Field

from . import project as proj
from .canvas import DEFAULT_COLS, DEFAULT_ROWS, CanvasType
from .errors import BrickforgeError, WrongCanvasTypeError


class CreateProjectBody(BaseModel):
    name: str
    canvas_type: Literal["free", "digitized"] = "free"
    rows: int = Field(default=DEFAULT_ROWS, ge=1)
    cols: int = Field(default=DEFAULT_COLS, ge=1)


class DimsBody(BaseModel):
    height: float
    width: float


class CanvasBody(BaseModel):
    type: Literal["free", "digitized"]
    rows: Optional[int] = Field(default=None, ge=1)
    cols: Optional[int] = Field(default=None, ge=1)


class StrokeBody(BaseModel):
    p0: tuple[int, int]
    p1: tuple[int, int]
    mode: Literal["select", "deselect"] = "select"


class ToggleBody(BaseModel):
    cell: Optional[tuple[int, int]] = None
    segment: Optional[tuple[int, int, int, int]] = None


class DesignBody(BaseModel):
    seed: Optional[int] = None


class _Registry:
    """Loaded projects plus their locks, keyed by name."""

    def __init__(self, data_dir: Path) -> None:
        self.data_dir = data_dir
        self._projects: dict[str, proj.Project] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def lock(self, name: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(name, threading.Lock())

    def get(self, name: str) -> proj.Project:
        with self._guard:
            cached = self._projects.get(name)
        if cached is not None:
            return cached
        loaded = proj.load_project(self.data_dir, name)
        with self._guard:
            return self._projects.setdefault(name, loaded)

    def put(self, project: proj.Project) -> None:
        with self._guard:
            self._projects[project.name] = project


def _state_payload(project: proj.Project) -> dict:
    payload = proj.manifest_dict(project)
    payload["draw_dirty"] = project.draw_dirty
    payload["brick_dirty"] = project.brick_dirty
    return payload


def _mutation_payload(project: proj.Project) -> dict:
    return {
        "selection": proj._selection_payload(project),
        "draw_dirty": project.draw_dirty,
        "brick_dirty": project.brick_dirty,
    }


def create_app(data_dir: Path | str, ui_dir: Path | str | None = None) -> FastAPI:
    data_dir = Path(data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    registry = _Registry(data_dir)
    app = FastAPI(title="brickforge", docs_url=None, redoc_url=None)

    @app.exception_handler(BrickforgeError)
    async def _domain_error(_, exc: BrickforgeError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.http_status,
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    @app.get("/projects")
    def list_all() -> dict:
        return {"projects": proj.list_projects(data_dir)}

    @app.post("/projects", status_code=201)
    def create(body: CreateProjectBody) -> dict:
        with registry.lock(body.name):
            created = proj.create_project(
                data_dir, body.name, body.canvas_type, body.rows, body.cols
            )
            registry.put(created)
            return _state_payload(created)

    @app.get("/projects/{name}")
    def get_state(name: str) -> dict:
        with registry.lock(name):
            return _state_payload(registry.get(name))

    @app.put("/projects/{name}/dims")
    def put_dims(name: str, body: DimsBody) -> dict:
        with registry.lock(name):
            project = registry.get(name)
            dims, adjusted = proj.set_dims(project, body.height, body.width)
            return {
                "height": dims.height,
                "width": dims.width,
                "adjusted": adjusted,
                "total_nt": dims.total_nt,
                "brick_dirty": project.brick_dirty,
            }

    @app.put("/projects/{name}/canvas")
    def put_canvas(name: str, body: CanvasBody) -> dict:
        with registry.lock(name):
            project = registry.get(name)
            proj.set_canvas(project, body.type, body.rows, body.cols)
            return _state_payload(project)

    @app.post("/projects/{name}/strokes")
    def post_stroke(name: str, body: StrokeBody) -> dict:
        with registry.lock(name):
            project = registry.get(name)
            if project.canvas.canvas_type is CanvasType.FREE:
                project.canvas.apply_stroke_free(body.p0, body.p1, body.mode)
            else:
                project.canvas.apply_stroke_digitized(body.p0, body.p1, body.mode)
            return _mutation_payload(project)

    @app.post("/projects/{name}/toggle")
    def post_toggle(name: str, body: ToggleBody) -> dict:
        with registry.lock(name):
            project = registry.get(name)
            if (body.cell is None) == (body.segment is None):
                raise WrongCanvasTypeError(
                    "provide exactly one of 'cell' or 'segment'"
                )
            if body.cell is not None:
                project.canvas.toggle_brick(tuple(body.cell))
            else:
                x1, y1, x2, y2 = body.segment
                project.canvas.toggle_segment(((x1, y1), (x2, y2)))
            return _mutation_payload(project)

    @app.post("/projects/{name}/clear")
    def post_clear(name: str) -> dict:
        with registry.lock(name):
            project = registry.get(name)
            project.canvas.clear()
            return _mutation_payload(project)

    @app.post("/projects/{name}/design")
    def post_design(name: str, body: DesignBody | None = None) -> dict:
        with registry.lock(name):
            project = registry.get(name)
            if body is not None and body.seed is not None:
                proj.set_seed(project, body.seed)
            output = proj.design_output(project)
            summary = output.summary()
            summary["draw_dirty"] = project.draw_dirty
            summary["brick_dirty"] = project.brick_dirty
            return summary

    @app.post("/projects/{name}/save")
    def post_save(name: str) -> dict:
        with registry.lock(name):
            project = registry.get(name)
            paths = proj.save_all(project)
            return {
                "paths": {k: str(v) for k, v in paths.items()},
                "draw_dirty": project.draw_dirty,
                "brick_dirty": project.brick_dirty,
            }

    @app.get("/projects/{name}/dirty")
    def get_dirty(name: str) -> dict:
        with registry.lock(name):
            project = registry.get(name)
            return {
                "draw_dirty": project.draw_dirty,
                "brick_dirty": project.brick_dirty,
                "any": proj.pending_unsaved(project),
            }

    @app.get("/projects/{name}/export/{kind}")
    def get_export(name: str, kind: str) -> Response:
        with registry.lock(name):
            project = registry.get(name)
            payload, filename, media_type = proj.export_bytes(project, kind)
        return Response(
            content=payload,
            media_type=media_type,
            headers={"Content-Disposition": f'attachment; filename="{filename}"'},
        )

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
