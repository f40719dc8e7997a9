import pytest

from hardyshift import (
    TruncationParams,
    all_channel_bases,
    build_intertwiner,
    channel,
    channel_basis,
    channels,
    partition_check,
    power_symbol,
    verify_equivalence,
)
from hardyshift.decomposition import decomposed_shift
from hardyshift.matrices import DenseMatrix, is_permutation

from helpers import SWEEP


def test_channel_labels_and_ordinals():
    p = TruncationParams(2, 3, 2)
    chs = channels(p)
    assert len(chs) == p.r == 6
    assert [c.ordinal for c in chs] == list(range(6))
    assert chs[0].i == 1 and chs[0].j == 0
    assert chs[1].i == 2 and chs[1].j == 0
    assert chs[2].i == 1 and chs[2].j == 1
    assert channel(2, 1, p).ordinal == 3


def test_channel_validation():
    p = TruncationParams(2, 2, 2)
    with pytest.raises(IndexError):
        channel(0, 0, p)
    with pytest.raises(IndexError):
        channel(3, 0, p)
    with pytest.raises(IndexError):
        channel(1, 2, p)


def test_channel_basis_example():
    p = TruncationParams(2, 2, 2)
    cb = channel_basis(2, 1, p)
    assert cb.flat_indices == (3, 7)
    cb = channel_basis(1, 0, p)
    assert cb.flat_indices == (0, 4)


def test_partition_over_sweep():
    for p in SWEEP:
        assert partition_check(p)
        bases = all_channel_bases(p)
        assert len(bases) == p.r
        assert all(len(cb.flat_indices) == p.K for cb in bases)


def test_channels_invariant_under_operator_and_adjoint():
    for p in SWEEP:
        if p.d > 16:
            continue
        T = power_symbol(p)
        Th = T.adjoint()
        for cb in all_channel_bases(p):
            inside = set(cb.flat_indices)
            for v in cb.flat_indices:
                for M in (T, Th):
                    for u in range(p.d):
                        if M[u][v]:
                            assert u in inside


def test_intertwiner_identity_for_trivial_model():
    p = TruncationParams(1, 1, 3)
    assert build_intertwiner(p) == DenseMatrix.identity(3)


def test_intertwiner_frozen_small_case():
    # m=1, n=2, K=2: channel 0 hits degrees 0,2 and channel 1 degrees 1,3
    p = TruncationParams(1, 2, 2)
    X = build_intertwiner(p)
    assert [(u, v) for u, v, s in X.nonzero_items()] == [
        (0, 0),
        (1, 2),
        (2, 1),
        (3, 3),
    ]
    conj = X.adjoint() @ power_symbol(p) @ X
    assert [(u, v) for u, v, s in conj.nonzero_items()] == [(1, 0), (3, 2)]


def test_intertwiner_is_permutation_over_sweep():
    for p in SWEEP:
        assert is_permutation(build_intertwiner(p))


def test_decomposed_shift_shape():
    p = TruncationParams(2, 2, 3)
    D = decomposed_shift(p)
    assert D.shape == (p.d, p.d)
    # block subdiagonals only, no coupling across the K-grid
    for u, v, s in D.nonzero_items():
        assert u == v + 1
        assert v % p.K != p.K - 1


def test_verify_equivalence_small_cases():
    for p in [
        TruncationParams(1, 1, 2),
        TruncationParams(1, 2, 2),
        TruncationParams(2, 1, 3),
        TruncationParams(2, 3, 2),
        TruncationParams(3, 2, 2),
    ]:
        rep = verify_equivalence(p)
        assert rep.unitary
        assert rep.intertwines
        assert rep.ok
        assert len(rep.channel_bases) == p.r


def test_verify_equivalence_is_exact_not_close():
    # exact mode compares with zero tolerance; mutate one entry and the
    # comparison must notice
    p = TruncationParams(1, 2, 2)
    X = build_intertwiner(p)
    conj = X.adjoint() @ power_symbol(p) @ X
    assert conj == decomposed_shift(p)
    rows = [list(r) for r in conj.entries]
    rows[0][0] = rows[1][0]
    assert DenseMatrix(rows) != decomposed_shift(p)
