"""Command line entry points.

`validate` deliberately re-implements every sequence check from scratch so a
bug in the design-time checker cannot hide in the audit path. Keep the two
implementations independent.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from pathlib import Path

from . import project as proj
from .canvas import CanvasType
from .errors import (
    BrickforgeError,
    DimensionMismatchError,
    DuplicateEntryError,
    MalformedHeaderError,
    WrongCanvasTypeError,
)

DEFAULT_DATA_DIR = "projects"


def parse_shape_file(text: str):
    """Parse a shape file into (canvas_type, items).

    Format: a header line "rows cols", then either a grid of '#'/'.'
    characters (one line per row) or one "SEG x1 y1 x2 y2" line per unit
    segment. Blank lines and lines starting with ';' are ignored.
    """
    lines = [
        ln.rstrip("\n")
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith(";")
    ]
    if not lines:
        raise MalformedHeaderError("shape file is empty")
    header = lines[0].split()
    if len(header) != 2:
        raise MalformedHeaderError(f"expected 'rows cols' header, got {lines[0]!r}")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError as exc:
        raise MalformedHeaderError(f"non-integer header {lines[0]!r}") from exc
    if rows < 1 or cols < 1:
        raise MalformedHeaderError(f"header dimensions must be positive, got {rows}x{cols}")
    body = lines[1:]
    if body and body[0].split() and body[0].split()[0] == "SEG":
        segments: list[tuple[tuple[int, int], tuple[int, int]]] = []
        seen = set()
        for ln in body:
            tokens = ln.split()
            if tokens[0] != "SEG" or len(tokens) != 5:
                raise MalformedHeaderError(f"bad segment line {ln!r}")
            try:
                x1, y1, x2, y2 = (int(t) for t in tokens[1:])
            except ValueError as exc:
                raise MalformedHeaderError(f"non-integer segment line {ln!r}") from exc
            key = tuple(sorted(((x1, y1), (x2, y2))))
            if key in seen:
                raise DuplicateEntryError(f"segment {ln!r} appears twice")
            seen.add(key)
            segments.append(((x1, y1), (x2, y2)))
        return CanvasType.DIGITIZED, rows, cols, segments
    if len(body) != rows:
        raise DimensionMismatchError(f"expected {rows} grid rows, got {len(body)}")
    cells: list[tuple[int, int]] = []
    for r, ln in enumerate(body):
        if len(ln) != cols:
            raise DimensionMismatchError(
                f"grid row {r} has {len(ln)} columns, expected {cols}"
            )
        for c, ch in enumerate(ln):
            if ch == "#":
                cells.append((r, c))
            elif ch != ".":
                raise MalformedHeaderError(f"unexpected character {ch!r} in grid row {r}")
    return CanvasType.FREE, rows, cols, cells


# --- independent sequence audit -------------------------------------------

_COMPLEMENT = {"A": "T", "C": "G", "G": "C", "T": "A"}


def _audit_revcomp(seq: str) -> str:
    return "".join(_COMPLEMENT[b] for b in reversed(seq))


def _audit_gc(seq: str) -> float:
    return sum(1 for b in seq if b in "GC") / len(seq)


def _audit_longest_run(seq: str) -> int:
    best, run = 1, 1
    for prev, cur in zip(seq, seq[1:]):
        run = run + 1 if cur == prev else 1
        best = max(best, run)
    return best


def _audit_hamming(a: str, b: str) -> int:
    return sum(1 for x, y in zip(a, b) if x != y)


def audit_sequences(
    seqs: list[tuple[str, str]],
    d_min: int = 4,
    gc_min: float = 0.4,
    gc_max: float = 0.6,
    max_run: int = 3,
    kmer_ban: int | None = 7,
) -> list[str]:
    """Re-check the constraint family over labelled sequences; returns
    human-readable violations (empty list means the table passes).

    Bonded partners are exact reverse complements of each other, so each
    sequence is first canonicalized to min(seq, revcomp(seq)) and the
    canonical set deduplicated; poly-T protector domains are skipped.
    """
    canon: dict[str, str] = {}
    for label, seq in seqs:
        if not seq or set(seq) == {"T"}:
            continue
        if any(b not in _COMPLEMENT for b in seq):
            return [f"{label}: non-ACGT base in {seq!r}"]
        c = min(seq, _audit_revcomp(seq))
        canon.setdefault(c, label)
    problems: list[str] = []
    entries = sorted(canon.items())
    for seq, label in entries:
        gc = _audit_gc(seq)
        if not gc_min <= gc <= gc_max:
            problems.append(f"{label}: GC fraction {gc:.3f} outside [{gc_min}, {gc_max}]")
        run = _audit_longest_run(seq)
        if run > max_run:
            problems.append(f"{label}: homopolymer run of {run} exceeds {max_run}")
        d_self = _audit_hamming(seq, _audit_revcomp(seq))
        if d_self < d_min:
            problems.append(f"{label}: distance {d_self} to own reverse complement below {d_min}")
    for i, (a, la) in enumerate(entries):
        for b, lb in entries[i + 1 :]:
            if len(a) != len(b):
                continue
            d = _audit_hamming(a, b)
            if d < d_min:
                problems.append(f"{la} vs {lb}: distance {d} below {d_min}")
            drc = _audit_hamming(a, _audit_revcomp(b))
            if drc < d_min:
                problems.append(
                    f"{la} vs {lb}: reverse-complement distance {drc} below {d_min}"
                )
    if kmer_ban is not None:
        kmer_sets = []
        for seq, label in entries:
            ks = set()
            for s in (seq, _audit_revcomp(seq)):
                for j in range(len(s) - kmer_ban + 1):
                    ks.add(s[j : j + kmer_ban])
            kmer_sets.append((label, ks))
        for i, (la, ka) in enumerate(kmer_sets):
            for lb, kb in kmer_sets[i + 1 :]:
                shared = ka & kb
                if shared:
                    problems.append(
                        f"{la} vs {lb}: shared {kmer_ban}-mer {sorted(shared)[0]}"
                    )
    return problems


def read_sequence_table(payload: str) -> list[tuple[str, str]]:
    """Extract (label, domain sequence) pairs from a sequence table CSV."""
    reader = csv.reader(io.StringIO(payload))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedHeaderError("empty sequence table") from None
    expected = ["strand_id", "tile_type", "row", "col", "d1", "d2", "d3", "d4", "full_sequence"]
    if header != expected:
        raise MalformedHeaderError(f"unexpected sequence table header {header!r}")
    out: list[tuple[str, str]] = []
    for row in reader:
        if not row:
            break  # summary block follows
        strand_id = row[0]
        for k, seq in enumerate(row[4:8], start=1):
            if seq:
                out.append((f"{strand_id}.d{k}", seq))
    return out


# --- subcommands ------------------------------------------------------------


def _cmd_new(args) -> int:
    project = proj.create_project(
        args.path, args.name, args.canvas, args.rows, args.cols
    )
    print(f"created {project.name} ({project.canvas.canvas_type.value}, "
          f"{project.canvas.rows}x{project.canvas.cols}) in {project.root}")
    return 0


def _cmd_draw(args) -> int:
    project = proj.load_project(args.path, args.name)
    text = Path(args.shape).read_text(encoding="utf-8")
    canvas_type, _, _, items = parse_shape_file(text)
    if canvas_type is not project.canvas.canvas_type:
        raise WrongCanvasTypeError(
            f"shape file is {canvas_type.value}, project canvas is "
            f"{project.canvas.canvas_type.value}"
        )
    if args.replace:
        project.canvas.clear()
    for item in items:
        if canvas_type is CanvasType.FREE:
            if item not in project.canvas.selection:
                project.canvas.toggle_brick(item)
        else:
            from .lattice import canonical_segment

            if canonical_segment(*item) not in project.canvas.selection:
                project.canvas.toggle_segment(item)
    proj.write_manifest(project)
    print(f"{len(project.canvas.selection)} items selected")
    return 0


def _cmd_dims(args) -> int:
    project = proj.load_project(args.path, args.name)
    dims, adjusted = proj.set_dims(project, args.height, args.width)
    proj.write_manifest(project)
    note = " (adjusted to the lattice quantum)" if adjusted else ""
    print(f"brick {dims.height} x {dims.width} nm, {dims.total_nt} nt{note}")
    return 0


def _cmd_design(args) -> int:
    project = proj.load_project(args.path, args.name)
    if args.seed is not None:
        proj.set_seed(project, args.seed)
        proj.write_manifest(project)
    output = proj.design_output(project)
    for key, value in output.summary().items():
        print(f"{key}: {value}")
    return 0


def _cmd_export(args) -> int:
    project = proj.load_project(args.path, args.name)
    if args.seed is not None:
        proj.set_seed(project, args.seed)
        proj.write_manifest(project)
    if args.format == "all" and args.out is None:
        for path in proj.save_all(project).values():
            print(path)
        return 0
    out = Path(args.out) if args.out is not None else project.root
    out.mkdir(parents=True, exist_ok=True)
    kinds = ("dnadata", "detailed", "pdf") if args.format == "all" else (args.format,)
    for kind in kinds:
        payload, filename, _ = proj.export_bytes(project, kind)
        target = out / filename
        target.write_bytes(payload)
        print(target)
    return 0


def _cmd_validate(args) -> int:
    payload = Path(args.csv).read_text(encoding="utf-8")
    seqs = read_sequence_table(payload)
    problems = audit_sequences(
        seqs,
        d_min=args.d_min,
        gc_min=args.gc_min,
        gc_max=args.gc_max,
        max_run=args.max_run,
        kmer_ban=None if args.no_kmer else args.kmer_ban,
    )
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        print(f"FAIL: {len(problems)} violations", file=sys.stderr)
        return 1
    print(f"OK: {len(seqs)} domain sequences satisfy the constraints")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    port = int(os.environ.get("BRICKFORGE_PORT", args.port))
    app = create_app(args.path, args.ui)
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brickforge",
        description="Design DNA brick strand sets from drawn shapes.",
    )
    parser.add_argument(
        "--path", default=DEFAULT_DATA_DIR, help="projects directory"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("new", help="create a project")
    p.add_argument("name")
    p.add_argument("--canvas", choices=["free", "digitized"], default="free")
    p.add_argument("--rows", type=int, default=64)
    p.add_argument("--cols", type=int, default=64)
    p.set_defaults(func=_cmd_new)

    p = sub.add_parser("draw", help="apply a shape file to the canvas")
    p.add_argument("name")
    p.add_argument("--shape", required=True, help="shape file to rasterize")
    p.add_argument(
        "--replace",
        action="store_true",
        help="clear the canvas before applying the shape",
    )
    p.set_defaults(func=_cmd_draw)

    p = sub.add_parser("dims", help="set brick dimensions (nm)")
    p.add_argument("name")
    p.add_argument("--height", type=float, required=True)
    p.add_argument("--width", type=float, required=True)
    p.set_defaults(func=_cmd_dims)

    p = sub.add_parser("design", help="generate sequences and print a summary")
    p.add_argument("name")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_design)

    p = sub.add_parser("export", help="write design artifacts")
    p.add_argument("name")
    p.add_argument(
        "--format",
        choices=["all", "dnadata", "detailed", "pdf", "svg"],
        default="all",
    )
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="write artifacts here instead of the project directory")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("validate", help="independently audit a sequence table CSV")
    p.add_argument("--file", required=True, dest="csv", help="sequence table CSV to audit")
    p.add_argument("--d-min", type=int, default=4)
    p.add_argument("--gc-min", type=float, default=0.4)
    p.add_argument("--gc-max", type=float, default=0.6)
    p.add_argument("--max-run", type=int, default=3)
    p.add_argument("--kmer-ban", type=int, default=7)
    p.add_argument("--no-kmer", action="store_true", help="skip the shared k-mer check")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument(
        "--port",
        type=int,
        default=8000,
        help="listen port (BRICKFORGE_PORT overrides)",
    )
    p.add_argument("--ui", default=None, help="directory of static UI files to serve at /")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrickforgeError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error [NotFound]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
