"""Lattice geometry and bond topology, checked against an independent
brute-force enumerator that derives adjacency from physical half-width
overlap instead of index arithmetic."""

from __future__ import annotations

import hashlib
import itertools
import random
import re
import time

import pytest

from brickforge.errors import EmptySelectionError, NonPositiveDimensionError
from brickforge.lattice import (
    BrickCoord,
    NeighborDirection,
    TileClass,
    adjust_dimensions,
    bond_graph_digitized,
    bond_graph_free,
    brick_north_y,
    brick_west_x,
    classify_tiles,
    default_dimensions,
    domain_lengths,
    neighbor,
    shape_hash,
)

DIMS = default_dimensions()


# --- independent oracle -----------------------------------------------------
# A brick (r, c) spans half-width columns [2c + r%2, 2c + r%2 + 2). Bricks in
# adjacent rows overlap by exactly one half-width, which identifies the
# diagonal neighbors without reusing the package's index formulas.


def oracle_upper_neighbors(cell, sel):
    r, c = cell
    west = 2 * c + (r % 2)
    out = {}
    for cc in range(-2, max(cc2 for _, cc2 in sel) + 3):
        w2 = 2 * cc + ((r - 1) % 2)
        if w2 == west - 1 and (r - 1, cc) in sel:
            out["NW"] = (r - 1, cc)
        if w2 == west + 1 and (r - 1, cc) in sel:
            out["NE"] = (r - 1, cc)
    return out


def oracle_lower_neighbors(cell, sel):
    r, c = cell
    west = 2 * c + (r % 2)
    out = {}
    for cc in range(-2, max(cc2 for _, cc2 in sel) + 3):
        w2 = 2 * cc + ((r + 1) % 2)
        if w2 == west - 1 and (r + 1, cc) in sel:
            out["SW"] = (r + 1, cc)
        if w2 == west + 1 and (r + 1, cc) in sel:
            out["SE"] = (r + 1, cc)
    return out


def oracle_classify(sel):
    classes = {}
    for cell in sel:
        upper = oracle_upper_neighbors(cell, sel)
        lower = oracle_lower_neighbors(cell, sel)
        if not upper and lower:
            classes[cell] = "half_top"
        elif not lower and upper:
            classes[cell] = "half_bottom"
        else:
            classes[cell] = "full"
    return classes


def oracle_bond_graph(sel, total_nt):
    """Bonds and exposed slots as ((r, c), domain) pairs."""
    kept_for = {"full": (1, 2, 3, 4), "half_top": (3, 4), "half_bottom": (1, 2)}
    classes = oracle_classify(sel)
    kept = {cell: set(kept_for[classes[cell]]) for cell in sel}
    bonds = set()
    for cell in sel:
        upper = oracle_upper_neighbors(cell, sel)
        if "NW" in upper and 1 in kept[cell] and 4 in kept[upper["NW"]]:
            bonds.add(frozenset({(cell, 1), (upper["NW"], 4)}))
        if "NE" in upper and 2 in kept[cell] and 3 in kept[upper["NE"]]:
            bonds.add(frozenset({(cell, 2), (upper["NE"], 3)}))
    bonded = set().union(*bonds) if bonds else set()
    exposed = {
        (cell, d) for cell in sel for d in kept[cell] if (cell, d) not in bonded
    }
    a = total_nt // 4
    b = total_nt // 2 - a
    lengths = {1: a, 2: b, 3: b, 4: a}
    slot_length = {(cell, d): lengths[d] for cell in sel for d in kept[cell]}
    return bonds, exposed, classes, slot_length


_ID = re.compile(r"^r(\d{4})c(\d{4})$")


def slot_to_coords(slot):
    m = _ID.match(slot.strand_id)
    assert m, f"unexpected strand id {slot.strand_id}"
    return ((int(m.group(1)), int(m.group(2))), slot.domain)


# --- dimension quantization --------------------------------------------------


def test_default_dimensions_unchanged():
    dims, adjusted = adjust_dimensions(3.0, 7.0)
    assert not adjusted
    assert (dims.height, dims.width) == (3.0, 7.0)
    assert dims.total_nt == 42
    assert dims.domain_lengths == (10, 11, 11, 10)


def test_minimal_multiples_unchanged():
    dims, adjusted = adjust_dimensions(0.6, 1.75)
    assert not adjusted
    assert (dims.height_units, dims.width_units) == (1, 1)


def test_quantization_snaps_off_grid_input():
    dims, adjusted = adjust_dimensions(1.0, 2.0)
    assert adjusted
    assert dims.height == pytest.approx(1.2, abs=1e-9)
    assert dims.width == pytest.approx(1.75, abs=1e-9)


def test_quantization_rounds_half_up():
    # 0.9/0.6 = 1.5 rounds up to 2 units; 2.625/1.75 = 1.5 rounds up too
    dims, _ = adjust_dimensions(0.9, 2.625)
    assert dims.height_units == 2
    assert dims.width_units == 2
    assert dims.total_nt == 22
    assert dims.domain_lengths == (5, 6, 6, 5)


def test_tiny_positive_inputs_clamp_to_one_unit():
    dims, adjusted = adjust_dimensions(1e-6, 1e-6)
    assert adjusted
    assert (dims.height_units, dims.width_units) == (1, 1)


def test_nonpositive_dimensions_rejected():
    for h, w in [(0, 7), (3, 0), (-1, 7), (3, -2)]:
        with pytest.raises(NonPositiveDimensionError):
            adjust_dimensions(h, w)


def test_quantization_idempotent_over_random_inputs():
    rng = random.Random(20240817)
    for _ in range(1000):
        h = rng.uniform(1e-3, 40.0)
        w = rng.uniform(1e-3, 40.0)
        dims1, _ = adjust_dimensions(h, w)
        dims2, adjusted2 = adjust_dimensions(dims1.height, dims1.width)
        assert not adjusted2
        assert dims2 == dims1
        assert abs(dims1.height - 0.6 * dims1.height_units) <= 1e-9
        assert abs(dims1.width - 1.75 * dims1.width_units) <= 1e-9
        # the half-quantum delta bound only applies when the 1-unit minimum
        # clamp is not in play
        if h >= 0.3:
            assert abs(dims1.height - h) <= 0.3 + 1e-9
        if w >= 0.875:
            assert abs(dims1.width - w) <= 0.875 + 1e-9


def test_domain_length_table():
    cases = {2: (22, (5, 6, 6, 5)), 4: (42, (10, 11, 11, 10)), 6: (64, (16, 16, 16, 16))}
    for units, (total, lengths) in cases.items():
        dims, _ = adjust_dimensions(0.6, 1.75 * units)
        assert dims.total_nt == total
        assert domain_lengths(dims) == lengths
        a, b = lengths[0], lengths[1]
        assert a + b == total // 2
        assert total % 2 == 0


# --- neighbors ---------------------------------------------------------------


def test_neighbor_golden_cases():
    assert neighbor(BrickCoord(0, 0), NeighborDirection.NW, 8, 8) is None
    assert neighbor(BrickCoord(0, 1), NeighborDirection.SW, 8, 8) == (1, 0)
    assert neighbor(BrickCoord(1, 0), NeighborDirection.NE, 8, 8) == (0, 1)


def test_neighbor_symmetry_random():
    rng = random.Random(7)
    for _ in range(500):
        c = BrickCoord(rng.randrange(12), rng.randrange(12))
        for d in NeighborDirection:
            n = neighbor(c, d, 12, 12)
            if n is not None:
                assert neighbor(n, d.opposite, 12, 12) == c


def test_neighbor_matches_overlap_oracle():
    sel = {(r, c) for r in range(6) for c in range(6)}
    for cell in sel:
        upper = oracle_upper_neighbors(cell, sel)
        assert neighbor(BrickCoord(*cell), NeighborDirection.NW, 6, 6) == upper.get("NW")
        assert neighbor(BrickCoord(*cell), NeighborDirection.NE, 6, 6) == upper.get("NE")
        lower = oracle_lower_neighbors(cell, sel)
        assert neighbor(BrickCoord(*cell), NeighborDirection.SW, 6, 6) == lower.get("SW")
        assert neighbor(BrickCoord(*cell), NeighborDirection.SE, 6, 6) == lower.get("SE")


# --- classification and free bond graph ---------------------------------------


def test_isolated_brick_is_full():
    assert classify_tiles({(0, 0)}) == {BrickCoord(0, 0): TileClass.FULL}
    g = bond_graph_free({(0, 0)}, DIMS)
    assert g.bonds == []
    assert len(g.exposed) == 4


def test_two_by_two_block_golden():
    sel = {(0, 0), (0, 1), (1, 0), (1, 1)}
    classes = classify_tiles(sel)
    assert sorted(t.value for t in classes.values()) == [
        "half_bottom", "half_bottom", "half_top", "half_top",
    ]
    g = bond_graph_free(sel, DIMS)
    assert len(g.bonds) == 3
    exposed = {slot_to_coords(s) for s in g.exposed}
    assert exposed == {((0, 0), 3), ((1, 1), 2)}


def test_middle_row_of_block_is_full():
    sel = {(r, c) for r in range(3) for c in range(5)}
    classes = classify_tiles(sel)
    assert classes[BrickCoord(1, 2)] is TileClass.FULL
    assert classes[BrickCoord(0, 2)] is TileClass.HALF_TOP
    assert classes[BrickCoord(2, 2)] is TileClass.HALF_BOTTOM


def test_empty_selection_rejected():
    with pytest.raises(EmptySelectionError):
        bond_graph_free(set(), DIMS)
    with pytest.raises(EmptySelectionError):
        bond_graph_digitized(set(), DIMS)
    with pytest.raises(EmptySelectionError):
        shape_hash("free", DIMS, set())


def test_all_3x3_selections_match_bruteforce_oracle():
    cells = [(r, c) for r in range(3) for c in range(3)]
    start = time.time()
    for mask in range(1, 512):
        sel = {cells[i] for i in range(9) if mask >> i & 1}
        g = bond_graph_free(sel, DIMS)
        bonds, exposed, classes, slot_length = oracle_bond_graph(sel, DIMS.total_nt)
        got_bonds = {frozenset(map(slot_to_coords, b)) for b in g.bonds}
        assert got_bonds == bonds, f"bond mismatch for {sorted(sel)}"
        assert {slot_to_coords(s) for s in g.exposed} == exposed
        got_classes = {tuple(c): t.value for c, t in classify_tiles(sel).items()}
        assert got_classes == classes
        assert {slot_to_coords(s): n for s, n in g.slot_length.items()} == slot_length
        g.check_partition()
    assert time.time() - start < 5.0


def test_partition_property_on_random_blobs():
    rng = random.Random(99)
    for _ in range(50):
        sel = {(rng.randrange(10), rng.randrange(10)) for _ in range(rng.randrange(1, 40))}
        g = bond_graph_free(sel, DIMS)
        g.check_partition()
        kept = 2 * len(g.bonds) + len(g.exposed)
        assert kept == len(g.slot_length)
        for a, b in g.bonds:
            assert g.slot_length[a] == g.slot_length[b]


# --- digitized bond graph ------------------------------------------------------


def test_single_segment_exposes_all_slots():
    g, skeletons = bond_graph_digitized({((0, 0), (1, 0))}, DIMS)
    assert g.bonds == []
    assert len(g.exposed) == 4
    assert len(skeletons) == 1
    # uniform digitized domain length: round-half-up(42/4) = 11
    assert all(n == 11 for n in g.slot_length.values())


def test_l_shape_has_two_corner_bonds():
    segs = {((0, 0), (1, 0)), ((1, 0), (1, 1))}
    g, _ = bond_graph_digitized(segs, DIMS)
    assert len(g.bonds) == 2
    assert len(g.exposed) == 4
    g.check_partition()


def test_cross_has_four_center_bonds():
    center = (2, 2)
    segs = {
        ((1, 2), (2, 2)),
        ((2, 2), (3, 2)),
        ((2, 1), (2, 2)),
        ((2, 2), (2, 3)),
    }
    g, _ = bond_graph_digitized(segs, DIMS)
    assert len(g.bonds) == 4
    assert len(g.exposed) == 8
    g.check_partition()


def test_digitized_partition_on_random_paths():
    rng = random.Random(4242)
    for _ in range(30):
        segs = set()
        x, y = 5, 5
        for _ in range(rng.randrange(1, 25)):
            if rng.random() < 0.5:
                nx, ny = x + rng.choice([-1, 1]), y
            else:
                nx, ny = x, y + rng.choice([-1, 1])
            if 0 <= nx < 12 and 0 <= ny < 12:
                segs.add(tuple(sorted([(x, y), (nx, ny)])))
                x, y = nx, ny
        g, skeletons = bond_graph_digitized(segs, DIMS)
        g.check_partition()
        assert len(skeletons) == len(segs)
        assert 2 * len(g.bonds) + len(g.exposed) == 4 * len(segs)


# --- geometry helpers ----------------------------------------------------------


def test_brick_positions_follow_stagger():
    assert brick_west_x(BrickCoord(0, 0), DIMS) == 0.0
    assert brick_west_x(BrickCoord(1, 0), DIMS) == pytest.approx(3.5)
    assert brick_west_x(BrickCoord(2, 3), DIMS) == pytest.approx(21.0)
    assert brick_north_y(BrickCoord(0, 0), DIMS) == 0.0
    assert brick_north_y(BrickCoord(3, 0), DIMS) == pytest.approx(4.5)


# --- shape hash ------------------------------------------------------------------


def test_shape_hash_matches_sha256_oracle():
    got = shape_hash("free", DIMS, {(0, 0)})
    want = hashlib.sha256(b"F;3.00;7.00;0,0").hexdigest()[:12]
    assert got == want == "1915ca56a314"


def test_shape_hash_order_invariant():
    cells = [(0, 0), (1, 2), (2, 1), (3, 3)]
    hashes = {
        shape_hash("free", DIMS, list(perm))
        for perm in itertools.permutations(cells)
    }
    assert len(hashes) == 1


def test_shape_hash_sensitive_to_content():
    base = shape_hash("free", DIMS, {(0, 0), (1, 1)})
    assert shape_hash("free", DIMS, {(0, 0)}) != base
    assert shape_hash("free", DIMS, {(0, 0), (1, 2)}) != base
    other_dims, _ = adjust_dimensions(3.6, 7.0)
    assert shape_hash("free", other_dims, {(0, 0), (1, 1)}) != base


def test_shape_hash_digitized_uses_segment_serialization():
    seg = {((0, 0), (1, 0))}
    got = shape_hash("digitized", DIMS, seg)
    want = hashlib.sha256(b"D;3.00;7.00;0,0,1,0").hexdigest()[:12]
    assert got == want
    assert len(got) == 12 and got == got.lower()
