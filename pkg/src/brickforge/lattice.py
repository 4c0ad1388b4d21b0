"""Geometry and topology of the staggered DNA-brick lattice.

Bricks sit in a brick-wall pattern: row pitch is half a brick height (each
brick spans two helix lanes and shares one lane with the row below), odd rows
are shifted east by half a brick width. Every brick therefore touches four
diagonal neighbours (NW, NE, SW, SE) and binds them through its four domains
d1..d4. Digitized canvases instead place one four-domain strand on every unit
grid segment and join strand ends where segments meet.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .errors import EmptySelectionError, NonPositiveDimensionError

HEIGHT_QUANTUM_NM = 0.6
WIDTH_QUANTUM_NM = 1.75
NT_PER_WIDTH_UNIT = 5.25
DEFAULT_HEIGHT_NM = 3.0
DEFAULT_WIDTH_NM = 7.0
DIM_TOLERANCE = 1e-9


class BrickCoord(NamedTuple):
    row: int
    col: int


Node = tuple[int, int]  # digitized grid node (x, y), y increasing north
Segment = tuple[Node, Node]  # unit axis-aligned, smaller endpoint first


class NeighborDirection(Enum):
    NW = "NW"
    NE = "NE"
    SW = "SW"
    SE = "SE"

    @property
    def opposite(self) -> "NeighborDirection":
        return _OPPOSITE[self]


_OPPOSITE = {
    NeighborDirection.NW: NeighborDirection.SE,
    NeighborDirection.NE: NeighborDirection.SW,
    NeighborDirection.SW: NeighborDirection.NE,
    NeighborDirection.SE: NeighborDirection.NW,
}


class TileClass(str, Enum):
    FULL = "full"
    HALF_TOP = "half_top"
    HALF_BOTTOM = "half_bottom"


class Slot(NamedTuple):
    """One domain position on one strand; domain index is 1-based (d1..d4)."""

    strand_id: str
    domain: int


@dataclass(frozen=True)
class BrickDimensions:
    """Validated brick size plus the derived per-domain nucleotide lengths.

    total_nt is forced even so the two bond families (d1/d4 and d2/d3) pair
    domains of equal length; domain_lengths is (a, b, b, a) with a + b equal
    to half the strand.
    """

    height: float
    width: float
    height_units: int
    width_units: int
    total_nt: int
    domain_lengths: tuple[int, int, int, int]

    @property
    def digitized_domain_nt(self) -> int:
        """Uniform domain length used on the digitized canvas."""
        return _round_half_up(self.total_nt / 4)


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def _dims_from_units(height_units: int, width_units: int) -> BrickDimensions:
    total_nt = 2 * _round_half_up(NT_PER_WIDTH_UNIT * width_units)
    a = total_nt // 4
    b = total_nt // 2 - a
    return BrickDimensions(
        height=HEIGHT_QUANTUM_NM * height_units,
        width=WIDTH_QUANTUM_NM * width_units,
        height_units=height_units,
        width_units=width_units,
        total_nt=total_nt,
        domain_lengths=(a, b, b, a),
    )


def adjust_dimensions(height: float, width: float) -> tuple[BrickDimensions, bool]:
    """Snap a requested brick size to the nearest valid multiples.

    Height snaps to multiples of 0.6 nm, width to multiples of 1.75 nm
    (half-up rounding, minimum one unit). Returns the quantized dimensions
    and whether either value changed by more than 1e-9.
    """
    if height <= 0 or width <= 0:
        raise NonPositiveDimensionError(
            f"brick dimensions must be positive, got {height} x {width}"
        )
    height_units = max(1, _round_half_up(height / HEIGHT_QUANTUM_NM))
    width_units = max(1, _round_half_up(width / WIDTH_QUANTUM_NM))
    dims = _dims_from_units(height_units, width_units)
    adjusted = (
        abs(dims.height - height) > DIM_TOLERANCE
        or abs(dims.width - width) > DIM_TOLERANCE
    )
    return dims, adjusted


def default_dimensions() -> BrickDimensions:
    dims, _ = adjust_dimensions(DEFAULT_HEIGHT_NM, DEFAULT_WIDTH_NM)
    return dims


def domain_lengths(dims: BrickDimensions) -> tuple[int, int, int, int]:
    return dims.domain_lengths


def _shifted(c: BrickCoord, d: NeighborDirection) -> BrickCoord:
    """Neighbour coordinate ignoring canvas bounds.

    Even rows align with the origin; odd rows are shifted east by half a
    brick, which is what makes NW/NE of an odd row land on col and col+1.
    """
    row, col = c
    east = row % 2  # 1 on shifted rows
    if d is NeighborDirection.NW:
        return BrickCoord(row - 1, col - 1 + east)
    if d is NeighborDirection.NE:
        return BrickCoord(row - 1, col + east)
    if d is NeighborDirection.SW:
        return BrickCoord(row + 1, col - 1 + east)
    return BrickCoord(row + 1, col + east)


def neighbor(
    c: BrickCoord | tuple[int, int],
    d: NeighborDirection,
    rows: int,
    cols: int,
) -> BrickCoord | None:
    """Neighbour of c in direction d, or None when it falls off the canvas."""
    n = _shifted(BrickCoord(*c), d)
    if 0 <= n.row < rows and 0 <= n.col < cols:
        return n
    return None


# Domain i of a brick binds domain j of the neighbour in the given direction.
DOMAIN_PARTNERS: dict[int, tuple[NeighborDirection, int]] = {
    1: (NeighborDirection.NW, 4),
    2: (NeighborDirection.NE, 3),
    3: (NeighborDirection.SW, 2),
    4: (NeighborDirection.SE, 1),
}

KEPT_DOMAINS: dict[TileClass, tuple[int, ...]] = {
    TileClass.FULL: (1, 2, 3, 4),
    TileClass.HALF_TOP: (3, 4),
    TileClass.HALF_BOTTOM: (1, 2),
}


def classify_tiles(
    sel: Iterable[tuple[int, int]],
) -> dict[BrickCoord, TileClass]:
    """Classify each selected brick as a full or half tile.

    A brick missing both upper neighbours but keeping at least one lower one
    is a top half-tile (keeps d3/d4); the mirrored case is a bottom half-tile
    (keeps d1/d2). A brick with no neighbours at all stays full, because
    dropping both sides would leave an empty strand.
    """
    selected = {BrickCoord(*c) for c in sel}
    out: dict[BrickCoord, TileClass] = {}
    for c in selected:
        up = any(
            _shifted(c, d) in selected
            for d in (NeighborDirection.NW, NeighborDirection.NE)
        )
        down = any(
            _shifted(c, d) in selected
            for d in (NeighborDirection.SW, NeighborDirection.SE)
        )
        if not up and down:
            out[c] = TileClass.HALF_TOP
        elif not down and up:
            out[c] = TileClass.HALF_BOTTOM
        else:
            out[c] = TileClass.FULL
    return out


@dataclass
class BondGraph:
    """Pairing of domain slots across neighbouring strands.

    Every kept slot appears in exactly one bond or exactly once in
    ``exposed``; exposed slots are the design's sticky ends. Bonds are stored
    with the lexicographically smaller slot first and the lists sorted, so
    equal selections produce identical graphs.
    """

    bonds: list[tuple[Slot, Slot]] = field(default_factory=list)
    exposed: list[Slot] = field(default_factory=list)
    slot_length: dict[Slot, int] = field(default_factory=dict)

    def bond_id(self, bond: tuple[Slot, Slot]) -> str:
        a, b = bond
        return f"{a.strand_id}:d{a.domain}~{b.strand_id}:d{b.domain}"

    def bond_lengths(self) -> dict[str, int]:
        """Bond id -> nucleotide length, for the sequence generator."""
        return {self.bond_id(bond): self.slot_length[bond[0]] for bond in self.bonds}

    def check_partition(self) -> None:
        """Assert the slot partition invariant; used by tests and assemble."""
        seen: set[Slot] = set()
        for a, b in self.bonds:
            for s in (a, b):
                assert s not in seen, f"slot {s} bonded twice"
                seen.add(s)
            assert self.slot_length[a] == self.slot_length[b], (a, b)
        for s in self.exposed:
            assert s not in seen, f"slot {s} both bonded and exposed"
            seen.add(s)
        assert seen == set(self.slot_length)


def brick_strand_id(c: tuple[int, int]) -> str:
    row, col = c
    return f"r{row:04d}c{col:04d}"


def segment_strand_id(seg: Segment) -> str:
    (x1, y1), (x2, y2) = seg
    return f"s{x1:04d}-{y1:04d}-{x2:04d}-{y2:04d}"


def _normalized_bond(a: Slot, b: Slot) -> tuple[Slot, Slot]:
    return (a, b) if a <= b else (b, a)


def bond_graph_free(
    sel: Iterable[tuple[int, int]], dims: BrickDimensions
) -> BondGraph:
    """Build the bond graph for a free-hand brick selection.

    Pairing rule: d1 binds the NW neighbour's d4, d2 binds NE's d3, d3 binds
    SW's d2, d4 binds SE's d1. Slots whose partner brick is unselected, or
    whose partner slot was dropped by a half tile, are exposed.
    """
    selected = {BrickCoord(*c) for c in sel}
    if not selected:
        raise EmptySelectionError("no bricks selected")
    tiles = classify_tiles(selected)
    a, b, _, _ = dims.domain_lengths
    length_of = {1: a, 2: b, 3: b, 4: a}

    graph = BondGraph()
    bonds: set[tuple[Slot, Slot]] = set()
    for c in selected:
        sid = brick_strand_id(c)
        for idx in KEPT_DOMAINS[tiles[c]]:
            slot = Slot(sid, idx)
            graph.slot_length[slot] = length_of[idx]
            direction, partner_idx = DOMAIN_PARTNERS[idx]
            n = _shifted(c, direction)
            if n in selected and partner_idx in KEPT_DOMAINS[tiles[n]]:
                partner = Slot(brick_strand_id(n), partner_idx)
                bonds.add(_normalized_bond(slot, partner))
            else:
                graph.exposed.append(slot)
    graph.bonds = sorted(bonds)
    graph.exposed.sort()
    return graph


@dataclass(frozen=True)
class StrandSkeleton:
    """Placement and shape of one strand before sequences are assigned."""

    strand_id: str
    tile_class: str  # TileClass value or "digitized"
    position: Union[BrickCoord, Segment]
    domains: tuple[tuple[int, int], ...]  # (domain index, nt length), kept only


DIGITIZED_TILE = "digitized"

# Clockwise sweep starting east, with y pointing north: E, S, W, N.
_CLOCKWISE_RANK: dict[tuple[int, int], int] = {
    (1, 0): 0,
    (0, -1): 1,
    (-1, 0): 2,
    (0, 1): 3,
}


def canonical_segment(a: Node, b: Node) -> Segment:
    return (a, b) if a <= b else (b, a)


def is_unit_segment(seg: Segment) -> bool:
    (x1, y1), (x2, y2) = seg
    return abs(x1 - x2) + abs(y1 - y2) == 1


def bond_graph_digitized(
    segments: Iterable[Segment], dims: BrickDimensions
) -> tuple[BondGraph, list[StrandSkeleton]]:
    """Build the bond graph for a digitized line selection.

    Each unit segment carries one strand with four uniform-length domains;
    the end at the lexicographically smaller node owns (d1, d2), the other
    end owns (d3, d4). Where k >= 2 strand ends meet at a grid node they are
    swept clockwise from east and joined cyclically: the second slot of each
    end bonds the first slot of the next, giving k bonds. A lone end leaves
    both of its slots exposed.
    """
    segs = sorted(canonical_segment(*s) for s in segments)
    if not segs:
        raise EmptySelectionError("no segments selected")
    nt = dims.digitized_domain_nt

    graph = BondGraph()
    skeletons: list[StrandSkeleton] = []
    # node -> list of (clockwise rank, first slot, second slot)
    ends: dict[Node, list[tuple[int, Slot, Slot]]] = {}
    for seg in segs:
        p, q = seg
        sid = segment_strand_id(seg)
        skeletons.append(
            StrandSkeleton(
                strand_id=sid,
                tile_class=DIGITIZED_TILE,
                position=seg,
                domains=tuple((i, nt) for i in (1, 2, 3, 4)),
            )
        )
        for idx in (1, 2, 3, 4):
            graph.slot_length[Slot(sid, idx)] = nt
        for node, other, first, second in ((p, q, 1, 2), (q, p, 3, 4)):
            direction = (other[0] - node[0], other[1] - node[1])
            rank = _CLOCKWISE_RANK[direction]
            ends.setdefault(node, []).append(
                (rank, Slot(sid, first), Slot(sid, second))
            )

    bonds: set[tuple[Slot, Slot]] = set()
    for node, incident in ends.items():
        incident.sort()
        k = len(incident)
        if k == 1:
            _, first, second = incident[0]
            graph.exposed.extend([first, second])
            continue
        for i in range(k):
            _, _, second = incident[i]
            _, nxt_first, _ = incident[(i + 1) % k]
            bonds.add(_normalized_bond(second, nxt_first))
    graph.bonds = sorted(bonds)
    graph.exposed.sort()
    return graph, skeletons


def brick_skeletons(
    tiles: Mapping[BrickCoord, TileClass], dims: BrickDimensions
) -> list[StrandSkeleton]:
    """Strand skeletons for a classified free-hand selection."""
    a, b, _, _ = dims.domain_lengths
    length_of = {1: a, 2: b, 3: b, 4: a}
    out = []
    for c in sorted(tiles):
        cls = tiles[c]
        out.append(
            StrandSkeleton(
                strand_id=brick_strand_id(c),
                tile_class=cls.value,
                position=BrickCoord(*c),
                domains=tuple((i, length_of[i]) for i in KEPT_DOMAINS[cls]),
            )
        )
    return out


def brick_west_x(c: tuple[int, int], dims: BrickDimensions) -> float:
    """West edge of a brick in nm; odd rows are staggered east by W/2."""
    row, col = c
    return col * dims.width + (dims.width / 2 if row % 2 else 0.0)


def brick_north_y(c: tuple[int, int], dims: BrickDimensions) -> float:
    """North edge of a brick in nm; rows advance by half a brick height."""
    row, _ = c
    return row * (dims.height / 2)


def shape_hash(
    canvas_type: str,
    dims: BrickDimensions,
    selection: Iterable[tuple[int, int]] | Iterable[Segment],
) -> str:
    """Canonical 12-hex-char fingerprint of a shape.

    Serializes "T;H;W;items" with T in {F, D}, dimensions at two decimals and
    items rendered and sorted as strings, then takes the first 12 hex chars
    of the SHA-256. Independent of drawing order by construction.
    """
    items = []
    for entry in selection:
        first = entry[0]
        if isinstance(first, tuple):  # segment ((x1,y1),(x2,y2))
            (x1, y1), (x2, y2) = entry
            items.append(f"{x1},{y1},{x2},{y2}")
        else:  # brick cell (row, col)
            r, c = entry
            items.append(f"{r},{c}")
    if not items:
        raise EmptySelectionError("cannot hash an empty selection")
    tag = {"free": "F", "digitized": "D"}[getattr(canvas_type, "value", canvas_type)]
    payload = ";".join(
        [tag, f"{dims.height:.2f}", f"{dims.width:.2f}", *sorted(items)]
    )
    return hashlib.sha256(payload.encode("ascii")).hexdigest()[:12]
