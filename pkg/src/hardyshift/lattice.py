"""Enumeration and certification of channel-union reducing subspaces.

Each of the 2^r channel masks selects a union of channels; its coordinate
projection is checked to commute with the truncated power operator, which
certifies the span as reducing.  Single channels are certified minimal by
computing the self-adjoint commutant of the operator restricted to them: a
restricted dimension of 1 means the only projections commuting there are 0
and 1, so the channel admits no proper reducing subspace of its own.

The report also carries the self-adjoint commutant dimension of the full
operator.  At truncation this can exceed the count explained by the r
diagonal channel generators, and the report keeps that visible instead of
asserting the diagonal family is everything.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .commutant import restrict, selfadjoint_commutant_dim
from .decomposition import Channel, all_channel_bases, channel_basis, channels
from .errors import CapError, ShapeError
from .matrices import DenseMatrix, matrices_close
from .operators import power_symbol
from .scalars import Mode
from .space import TruncationParams

DEFAULT_CAP_BITS = 20


@dataclass(frozen=True)
class ChannelMask:
    """Subset of channels, bit c for the channel of ordinal c."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("mask bits must be 0 or 1")

    @classmethod
    def from_int(cls, value: int, width: int) -> "ChannelMask":
        if value < 0 or value >= (1 << width):
            raise ValueError(f"mask value {value} out of range for {width} bits")
        return cls(tuple((value >> c) & 1 for c in range(width)))

    @property
    def value(self) -> int:
        return sum(b << c for c, b in enumerate(self.bits))

    @property
    def popcount(self) -> int:
        return sum(self.bits)

    @property
    def bitstring(self) -> str:
        """Bit of channel ordinal 0 first."""
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class MaskEntry:
    mask: ChannelMask
    subspace_dim: int
    is_reducing: bool


@dataclass(frozen=True)
class ChannelMinimality:
    channel: Channel
    is_minimal: bool
    restricted_selfadjoint_commutant_dim: int


@dataclass(frozen=True)
class LatticeCounts:
    total_masks: int
    checked_masks: int
    reducing_count: int


@dataclass(frozen=True)
class LatticeReport:
    params: TruncationParams
    entries: tuple[MaskEntry, ...]
    minimal_channels: tuple[ChannelMinimality, ...]
    full_selfadjoint_commutant_dim: int
    counts: LatticeCounts
    exhaustive: bool


def mask_projection(
    mask: ChannelMask, params: TruncationParams, mode: Mode = "exact"
) -> DenseMatrix:
    """Diagonal 0/1 projection onto the union of the selected channels."""
    if len(mask.bits) != params.r:
        raise ShapeError(
            f"mask has {len(mask.bits)} bits but the model has {params.r} channels"
        )
    diag = [0] * params.d
    for cb, bit in zip(all_channel_bases(params), mask.bits):
        if bit:
            for f in cb.flat_indices:
                diag[f] = 1
    return DenseMatrix.diagonal(diag, mode)


def check_minimal(
    ch: Channel,
    params: TruncationParams,
    mode: Mode = "exact",
    tol: float | None = None,
) -> ChannelMinimality:
    """Certify one channel minimal: restrict the power operator to it and
    show the restricted self-adjoint commutant is one-dimensional."""
    basis = channel_basis(ch.i, ch.j, params)
    restricted = restrict(power_symbol(params, mode), basis, tol)
    dim = selfadjoint_commutant_dim(restricted, tol)
    return ChannelMinimality(
        channel=ch,
        is_minimal=(dim == 1),
        restricted_selfadjoint_commutant_dim=dim,
    )


def enumerate_lattice(
    params: TruncationParams,
    mode: Mode = "exact",
    tol: float | None = None,
    cap_bits: int = DEFAULT_CAP_BITS,
    sample: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> LatticeReport:
    """Verify the channel-union lattice of the truncated power operator.

    Checks every mask when 2^r fits under the cap; with ``sample`` set, a
    deterministic uniform sample of masks instead (the report then says
    exhaustive=False).  Each mask is verified by an honest commutation of
    its projection with the operator matrix.
    """
    r = params.r
    total = 1 << r
    if sample is not None and sample < 0:
        raise ValueError("sample must be nonnegative")
    exhaustive = sample is None or sample >= total
    if exhaustive and r > cap_bits:
        raise CapError(
            f"enumerating 2^{r} masks exceeds the cap of 2^{cap_bits}; "
            "raise cap_bits or pass a sample size"
        )
    if exhaustive:
        values = range(total)
    else:
        rng = random.Random(seed)
        values = sorted(rng.sample(range(total), sample))

    T = power_symbol(params, mode)

    def verify(value: int) -> MaskEntry:
        mask = ChannelMask.from_int(value, r)
        P = mask_projection(mask, params, mode)
        reducing = matrices_close(P @ T, T @ P, tol)
        return MaskEntry(
            mask=mask,
            subspace_dim=mask.popcount * params.K,
            is_reducing=reducing,
        )

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            entries = tuple(pool.map(verify, values))
    else:
        entries = tuple(verify(v) for v in values)

    minimal = tuple(
        check_minimal(ch, params, mode, tol) for ch in channels(params)
    )
    full_dim = selfadjoint_commutant_dim(T, tol)
    counts = LatticeCounts(
        total_masks=total,
        checked_masks=len(entries),
        reducing_count=sum(1 for e in entries if e.is_reducing),
    )
    return LatticeReport(
        params=params,
        entries=entries,
        minimal_channels=minimal,
        full_selfadjoint_commutant_dim=full_dim,
        counts=counts,
        exhaustive=exhaustive,
    )


def lattice_closure_check(report: LatticeReport) -> bool:
    """Check the reported family is a complemented sublattice.

    Projections of channel unions are 0/1 diagonals, so each mask's
    subspace is faithfully encoded as the integer bitset of its flat
    support; complements, meets and joins of projections then correspond
    exactly to bitwise complement, AND and OR of supports.  Returns False
    when some complement, meet or join leaves the family or lands on the
    wrong support.  Meaningful for exhaustive reports; a sampled family
    will normally fail closure simply by missing members.
    """
    params = report.params
    chan_support = [
        sum(1 << f for f in cb.flat_indices) for cb in all_channel_bases(params)
    ]
    full = (1 << params.d) - 1
    universe = (1 << params.r) - 1

    def support(value: int) -> int:
        s = 0
        for c in range(params.r):
            if (value >> c) & 1:
                s |= chan_support[c]
        return s

    family = {e.mask.value for e in report.entries}
    sup = {v: support(v) for v in family}
    for v in family:
        comp = universe ^ v
        if comp not in family:
            return False
        if sup[comp] != full ^ sup[v]:
            return False
    for v1 in family:
        for v2 in family:
            meet = v1 & v2
            join = v1 | v2
            if meet not in family or join not in family:
                return False
            if sup[meet] != sup[v1] & sup[v2]:
                return False
            if sup[join] != sup[v1] | sup[v2]:
                return False
    return True
