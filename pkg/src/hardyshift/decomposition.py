"""Channel decomposition of the truncated power-of-shift operator.

Multiplication by z^n splits the space into m*n channels: the channel for
component i and residue j collects the basis vectors e_i z^{n k + j}.  The
channels partition the basis, each is invariant under the operator and under
its adjoint, and relabeling the k-th channel vector as the k-th coordinate
of a scalar model space turns the operator into a plain shift block.  The
permutation matrix realizing that relabeling is the intertwiner built here;
conjugating by it exhibits the operator as a direct sum of m*n scalar shift
blocks of size K.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrices import DenseMatrix, direct_sum, matrices_close
from .operators import power_symbol, scalar_shift
from .scalars import Mode, one, zero
from .space import TruncationParams, flat_index


@dataclass(frozen=True)
class Channel:
    """Channel labels: component i in 1..m, residue j in 0..n-1.

    ``ordinal`` is the channel's position in the block order of the
    decomposed operator (and the bit position in lattice masks).
    """

    i: int
    j: int
    ordinal: int


def channel(i: int, j: int, params: TruncationParams) -> Channel:
    if not 1 <= i <= params.m:
        raise IndexError(f"component {i} out of range 1..{params.m}")
    if not 0 <= j < params.n:
        raise IndexError(f"residue {j} out of range 0..{params.n - 1}")
    return Channel(i=i, j=j, ordinal=j * params.m + (i - 1))


def channels(params: TruncationParams) -> tuple[Channel, ...]:
    """All channels in ordinal order."""
    return tuple(
        channel(i, j, params)
        for j in range(params.n)
        for i in range(1, params.m + 1)
    )


@dataclass(frozen=True)
class ChannelBasis:
    """Flat positions of the channel's basis vectors e_i z^{n k + j},
    k ascending."""

    channel: Channel
    flat_indices: tuple[int, ...]


def channel_basis(i: int, j: int, params: TruncationParams) -> ChannelBasis:
    ch = channel(i, j, params)
    flats = tuple(
        flat_index(i, params.n * k + j, params) for k in range(params.K)
    )
    return ChannelBasis(channel=ch, flat_indices=flats)


def all_channel_bases(params: TruncationParams) -> tuple[ChannelBasis, ...]:
    return tuple(
        channel_basis(ch.i, ch.j, params) for ch in channels(params)
    )


def partition_check(params: TruncationParams) -> bool:
    """True when the channel bases are disjoint and jointly exhaust the flat
    basis, each of size K."""
    seen: set[int] = set()
    total = 0
    for cb in all_channel_bases(params):
        if len(cb.flat_indices) != params.K:
            return False
        seen.update(cb.flat_indices)
        total += len(cb.flat_indices)
    return total == params.d and seen == set(range(params.d))


def build_intertwiner(params: TruncationParams, mode: Mode = "exact") -> DenseMatrix:
    """Unitary (permutation) matrix sending the k-th coordinate of channel c
    to the channel's k-th basis vector.

    Column c*K + k has its single 1 in the flat row of e_i z^{n k + j} for
    the channel of ordinal c, so the adjoint conjugation of the power
    operator lands on the direct sum of scalar shift blocks.
    """
    d = params.d
    z, o = zero(mode), one(mode)
    grid = [[z] * d for _ in range(d)]
    for cb in all_channel_bases(params):
        base = cb.channel.ordinal * params.K
        for k, f in enumerate(cb.flat_indices):
            grid[f][base + k] = o
    return DenseMatrix(grid, mode)


def decomposed_shift(params: TruncationParams, mode: Mode = "exact") -> DenseMatrix:
    """Direct sum of r = m*n scalar shift blocks of size K, the normal form
    the intertwiner conjugation must reach."""
    block = scalar_shift(params.K, mode)
    return direct_sum([block] * params.r)


@dataclass(frozen=True)
class EquivalenceReport:
    unitary: bool
    intertwines: bool
    channel_bases: tuple[ChannelBasis, ...]

    @property
    def ok(self) -> bool:
        return self.unitary and self.intertwines


def verify_equivalence(
    params: TruncationParams, mode: Mode = "exact", tol: float | None = None
) -> EquivalenceReport:
    """Check that the intertwiner is unitary and conjugates the truncated
    power operator onto the direct sum of shift blocks.

    In exact mode both checks are zero-tolerance equalities; in float mode
    they compare entrywise within tol.
    """
    X = build_intertwiner(params, mode)
    ident = DenseMatrix.identity(params.d, mode)
    Xh = X.adjoint()
    unitary = matrices_close(Xh @ X, ident, tol) and matrices_close(
        X @ Xh, ident, tol
    )
    conjugated = Xh @ power_symbol(params, mode) @ X
    intertwines = matrices_close(conjugated, decomposed_shift(params, mode), tol)
    return EquivalenceReport(
        unitary=unitary,
        intertwines=intertwines,
        channel_bases=all_channel_bases(params),
    )
