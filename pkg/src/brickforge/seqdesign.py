"""Seeded generation of error-checked domain sequences.

Bond sequences are drawn by rejection sampling: random candidates from a
splitmix64 stream are tested against composition and distance constraints
and discarded until one passes. Bonded partner domains then receive exact
reverse complements and every exposed domain is passivated with poly-T, so
a finished design can only hybridize the way the lattice says it should.

The PRNG step and the base mapping (top two bits of each 64-bit draw,
0/1/2/3 -> A/C/G/T) are normative: any implementation with the same seed
must emit the same sequences.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from itertools import groupby
from typing import Union

from . import lattice
from .errors import (
    EmptySequenceError,
    InvalidBaseError,
    LengthMismatchError,
    MissingBondSequenceError,
    SequenceSpaceExhaustedError,
)
from .lattice import (
    BondGraph,
    BrickCoord,
    BrickDimensions,
    Segment,
    Slot,
    StrandSkeleton,
    TileClass,
)

BASES = "ACGT"
_MASK64 = (1 << 64) - 1
_COMPLEMENT = str.maketrans("ACGT", "TGCA")
_VALID_BASES = frozenset(BASES)


class SplitMix64:
    """splitmix64 with the reference constants; state is a single u64."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_base(self) -> str:
        return BASES[self.next_u64() >> 62]

    def next_sequence(self, length: int) -> str:
        return "".join(BASES[self.next_u64() >> 62] for _ in range(length))


def revcomp(s: str) -> str:
    """Reverse complement (A<->T, C<->G)."""
    if not _VALID_BASES.issuperset(s):
        bad = sorted(set(s) - _VALID_BASES)
        raise InvalidBaseError(f"sequence contains non-ACGT characters: {bad}")
    return s.translate(_COMPLEMENT)[::-1]


def hamming(x: str, y: str) -> int:
    if len(x) != len(y):
        raise LengthMismatchError(
            f"hamming distance undefined for lengths {len(x)} and {len(y)}"
        )
    return sum(a != b for a, b in zip(x, y))


def gc_fraction(s: str) -> float:
    if not s:
        raise EmptySequenceError("GC fraction of an empty sequence")
    return (s.count("G") + s.count("C")) / len(s)


def longest_run(s: str) -> int:
    return max((len(list(g)) for _, g in groupby(s)), default=0)


@dataclass(frozen=True)
class ConstraintParams:
    """Knobs of the rejection test; defaults follow the DNA word-design
    constraint family (minimum Hamming distance to every accepted sequence
    and its reverse complement, GC window, homopolymer limit, and an
    optional ban on shared k-mers)."""

    d_min: int = 4
    gc_min: float = 0.4
    gc_max: float = 0.6
    max_run: int = 3
    kmer_ban: int | None = 7
    max_attempts: int = 10000

    def __post_init__(self):
        if not (0.0 <= self.gc_min <= self.gc_max <= 1.0):
            raise ValueError(f"need 0 <= gc_min <= gc_max <= 1, got {self}")
        if self.d_min < 0 or self.max_run < 1 or self.max_attempts < 1:
            raise ValueError(f"invalid constraint params: {self}")
        if self.kmer_ban is not None and self.kmer_ban < 1:
            raise ValueError("kmer_ban must be positive or None")

    def as_dict(self) -> dict:
        return {
            "d_min": self.d_min,
            "gc_min": self.gc_min,
            "gc_max": self.gc_max,
            "max_run": self.max_run,
            "kmer_ban": self.kmer_ban,
            "max_attempts": self.max_attempts,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "ConstraintParams":
        return cls(**{k: d[k] for k in cls().as_dict()})


class _AcceptedPool:
    """Accepted sequences indexed for fast candidate checking.

    Holds per-length lists (a sequence is only Hamming-compared against
    accepted sequences of its own length) and the pooled k-mer ban set over
    accepted sequences and their reverse complements.
    """

    def __init__(self, params: ConstraintParams):
        self.params = params
        self.by_length: dict[int, list[tuple[str, str]]] = {}
        self.kmers: set[str] = set()

    def add(self, seq: str) -> None:
        rc = revcomp(seq)
        self.by_length.setdefault(len(seq), []).append((seq, rc))
        k = self.params.kmer_ban
        if k is not None:
            for s in (seq, rc):
                for i in range(len(s) - k + 1):
                    self.kmers.add(s[i : i + k])

    def violation(self, c: str) -> str | None:
        """First violated rule for candidate c, or None if it passes."""
        p = self.params
        run = longest_run(c)
        if run > p.max_run:
            return f"run: homopolymer of {run} > {p.max_run}"
        gc = gc_fraction(c)
        if not (p.gc_min <= gc <= p.gc_max):
            return f"gc: {gc:.3f} outside [{p.gc_min}, {p.gc_max}]"
        for other, other_rc in self.by_length.get(len(c), ()):
            d = hamming(c, other)
            if d < p.d_min:
                return f"hamming: distance {d} to an accepted sequence < {p.d_min}"
            d = hamming(c, other_rc)
            if d < p.d_min:
                return f"revcomp-hamming: distance {d} < {p.d_min}"
        d = hamming(c, revcomp(c))
        if d < p.d_min:
            return f"self-revcomp: distance {d} < {p.d_min}"
        k = p.kmer_ban
        if k is not None and self.kmers:
            for i in range(len(c) - k + 1):
                if c[i : i + k] in self.kmers:
                    return f"kmer: {c[i:i + k]} occurs in an accepted sequence"
        return None


def check_candidate(
    c: str, accepted: Iterable[str], params: ConstraintParams | None = None
) -> str | None:
    """Test one candidate against the accepted set.

    Returns None when the candidate passes every rule, otherwise the first
    violated rule (homopolymer run, gc window, Hamming distance to each
    accepted sequence and its reverse complement, distance to the
    candidate's own reverse complement, shared banned k-mers).
    """
    pool = _AcceptedPool(params or ConstraintParams())
    for seq in accepted:
        pool.add(seq)
    return pool.violation(c)


def design_bonds(
    bond_lengths: Mapping[str, int],
    seed: int,
    params: ConstraintParams | None = None,
) -> dict[str, str]:
    """Draw one constraint-satisfying sequence per bond, deterministically.

    Bonds are processed in sorted id order from a single splitmix64 stream,
    so equal (bond set, seed, params) always yields byte-identical output.
    Candidate search is strictly sequential for the same reason.
    """
    params = params or ConstraintParams()
    if bond_lengths:
        shortest = min(bond_lengths.values())
        if params.d_min > shortest:
            # No length-L word can be d_min-far from its own reverse
            # complement when d_min > L, so sampling cannot terminate.
            raise SequenceSpaceExhaustedError(
                f"d_min={params.d_min} exceeds shortest bond length {shortest}"
            )
    rng = SplitMix64(seed)
    pool = _AcceptedPool(params)
    out: dict[str, str] = {}
    for bond_id in sorted(bond_lengths):
        length = bond_lengths[bond_id]
        for _ in range(params.max_attempts):
            candidate = rng.next_sequence(length)
            if pool.violation(candidate) is None:
                pool.add(candidate)
                out[bond_id] = candidate
                break
        else:
            raise SequenceSpaceExhaustedError(
                f"no sequence for bond {bond_id} after {params.max_attempts} attempts"
            )
    return out


@dataclass
class StrandRecord:
    """One physical strand: per-domain sequences and the 5'->3' concatenation."""

    strand_id: str
    tile_class: str
    position: Union[BrickCoord, Segment]
    domain_seqs: dict[int, str]
    full_seq: str
    protector_flags: dict[int, bool]

    @property
    def length(self) -> int:
        return len(self.full_seq)


@dataclass
class DesignCounts:
    full_tiles: int = 0
    half_tiles: int = 0
    sticky_ends: int = 0

    def as_dict(self) -> dict:
        return {
            "full_tiles": self.full_tiles,
            "half_tiles": self.half_tiles,
            "sticky_ends": self.sticky_ends,
        }


@dataclass
class DesignOutput:
    """A complete design: strands, bond sequences, tallies and provenance."""

    strands: list[StrandRecord]
    bond_sequences: dict[str, str]
    counts: DesignCounts
    seed: int
    params: ConstraintParams
    dims: BrickDimensions
    shape_hash: str
    canvas_type: str = "free"

    def summary(self) -> dict:
        return {
            "shape_hash": self.shape_hash,
            "canvas_type": self.canvas_type,
            "seed": self.seed,
            "strands": len(self.strands),
            "bonds": len(self.bond_sequences),
            "total_nt": sum(s.length for s in self.strands),
            **self.counts.as_dict(),
        }


def assemble(
    graph: BondGraph,
    tiles: Union[Mapping[BrickCoord, TileClass], Sequence[StrandSkeleton]],
    bond_seqs: Mapping[str, str],
    dims: BrickDimensions,
    *,
    seed: int = 0,
    params: ConstraintParams | None = None,
    shape_hash: str = "",
    canvas_type: str = "free",
) -> DesignOutput:
    """Assign sequences to every slot and build the strand records.

    For each bond the lexicographically smaller slot receives the bond
    sequence and its partner the reverse complement; exposed slots become
    poly-T protectors and count as sticky ends. ``tiles`` is either the
    classify_tiles mapping (free canvas) or the skeleton list returned by
    bond_graph_digitized.
    """
    if isinstance(tiles, Mapping):
        skeletons = lattice.brick_skeletons(tiles, dims)
    else:
        skeletons = list(tiles)
    graph.check_partition()

    slot_seq: dict[Slot, str] = {}
    protected: set[Slot] = set()
    for bond in graph.bonds:
        bond_id = graph.bond_id(bond)
        if bond_id not in bond_seqs:
            raise MissingBondSequenceError(f"no sequence for bond {bond_id}")
        a, b = bond
        seq = bond_seqs[bond_id]
        slot_seq[a] = seq
        slot_seq[b] = revcomp(seq)
        assert slot_seq[a] == revcomp(slot_seq[b])
    for slot in graph.exposed:
        slot_seq[slot] = "T" * graph.slot_length[slot]
        protected.add(slot)

    counts = DesignCounts(sticky_ends=len(graph.exposed))
    strands = []
    for sk in sorted(skeletons, key=lambda s: s.strand_id):
        domain_seqs = {}
        flags = {}
        for idx, length in sk.domains:
            slot = Slot(sk.strand_id, idx)
            seq = slot_seq[slot]
            assert len(seq) == length, (slot, seq)
            domain_seqs[idx] = seq
            flags[idx] = slot in protected
        strands.append(
            StrandRecord(
                strand_id=sk.strand_id,
                tile_class=sk.tile_class,
                position=sk.position,
                domain_seqs=domain_seqs,
                full_seq="".join(domain_seqs[i] for i in sorted(domain_seqs)),
                protector_flags=flags,
            )
        )
        if sk.tile_class == TileClass.FULL.value:
            counts.full_tiles += 1
        elif sk.tile_class in (TileClass.HALF_TOP.value, TileClass.HALF_BOTTOM.value):
            counts.half_tiles += 1

    return DesignOutput(
        strands=strands,
        bond_sequences=dict(sorted(bond_seqs.items())),
        counts=counts,
        seed=seed,
        params=params or ConstraintParams(),
        dims=dims,
        shape_hash=shape_hash,
        canvas_type=canvas_type,
    )


def build_design(
    canvas_type: str,
    selection: Iterable,
    dims: BrickDimensions,
    seed: int,
    params: ConstraintParams | None = None,
) -> DesignOutput:
    """Full pipeline from a selection to a DesignOutput."""
    params = params or ConstraintParams()
    kind = getattr(canvas_type, "value", canvas_type)
    selection = sorted(selection)
    if kind == "free":
        graph = lattice.bond_graph_free(selection, dims)
        tiles: Union[Mapping, Sequence[StrandSkeleton]] = lattice.classify_tiles(
            selection
        )
    elif kind == "digitized":
        graph, tiles = lattice.bond_graph_digitized(selection, dims)
    else:
        raise ValueError(f"unknown canvas type {canvas_type!r}")
    bond_seqs = design_bonds(graph.bond_lengths(), seed, params)
    digest = lattice.shape_hash(kind, dims, selection)
    return assemble(
        graph,
        tiles,
        bond_seqs,
        dims,
        seed=seed,
        params=params,
        shape_hash=digest,
        canvas_type=kind,
    )
