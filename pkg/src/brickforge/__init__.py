"""Draw a shape, get an error-checked DNA brick strand set.

Shapes drawn on a molecular canvas (free brick grid or digitized line grid)
are compiled into single-stranded tiles whose bond sequences pass a family of
orthogonality constraints, then exported as a sequence table, a per-base
coordinate table and a barcoded PDF report.
"""

from .canvas import CanvasState, CanvasType, bresenham_line, l_path_segments
from .errors import BrickforgeError
from .export import (
    Barcode128,
    BaseCoordinate,
    base_coordinates,
    encode_code128,
    render_shape_svg,
    write_detailed,
    write_dnadata,
    write_pdf,
)
from .lattice import (
    BondGraph,
    BrickCoord,
    BrickDimensions,
    TileClass,
    adjust_dimensions,
    bond_graph_digitized,
    bond_graph_free,
    classify_tiles,
    default_dimensions,
    neighbor,
    shape_hash,
)
from .project import (
    Project,
    create_project,
    load_project,
    pending_unsaved,
    save_all,
)
from .seqdesign import (
    ConstraintParams,
    DesignOutput,
    SplitMix64,
    StrandRecord,
    assemble,
    build_design,
    check_candidate,
    design_bonds,
    gc_fraction,
    hamming,
    longest_run,
    revcomp,
)
from .service import create_app

__version__ = "0.1.0"

__all__ = [
    "Barcode128",
    "BaseCoordinate",
    "BondGraph",
    "BrickCoord",
    "BrickDimensions",
    "BrickforgeError",
    "CanvasState",
    "CanvasType",
    "ConstraintParams",
    "DesignOutput",
    "Project",
    "SplitMix64",
    "StrandRecord",
    "TileClass",
    "adjust_dimensions",
    "assemble",
    "base_coordinates",
    "bond_graph_digitized",
    "bond_graph_free",
    "bresenham_line",
    "build_design",
    "check_candidate",
    "classify_tiles",
    "create_app",
    "create_project",
    "default_dimensions",
    "design_bonds",
    "encode_code128",
    "gc_fraction",
    "hamming",
    "l_path_segments",
    "load_project",
    "longest_run",
    "neighbor",
    "pending_unsaved",
    "render_shape_svg",
    "revcomp",
    "save_all",
    "shape_hash",
    "write_detailed",
    "write_dnadata",
    "write_pdf",
]
