import math
from types import MappingProxyType

import numpy as np
import pytest

from rpsdist import (
    DomainError,
    Frame,
    MassFunction,
    PermutationMassFunction,
    decode_event,
    encode_event,
    enumerate_pes,
    forget_order,
    truncate,
    vectorize,
)
from rpsdist.core import pes_size
from rpsdist import scenarios

# the N=3 encoding table, in order
TABLE_N3 = [
    ((1,), (1, 1)), ((2,), (2, 1)), ((1, 2), (3, 1)), ((2, 1), (3, 2)), ((3,), (4, 1)),
    ((1, 3), (5, 1)), ((3, 1), (5, 2)), ((2, 3), (6, 1)), ((3, 2), (6, 2)),
    ((1, 2, 3), (7, 1)), ((1, 3, 2), (7, 2)), ((2, 1, 3), (7, 3)), ((2, 3, 1), (7, 4)),
    ((3, 1, 2), (7, 5)), ((3, 2, 1), (7, 6)),
]


def test_frame_validation():
    assert Frame(3).label(2) == "τ₂"
    assert Frame.from_labels(["a", "b"]).index("b") == 2
    with pytest.raises(DomainError):
        Frame(0)
    with pytest.raises(DomainError):
        Frame(2, ("a", "a"))
    with pytest.raises(DomainError):
        Frame(2, ("a",))


def test_enumerate_small_frames():
    assert enumerate_pes(1) == [(1,)]
    assert enumerate_pes(2) == [(1,), (2,), (1, 2), (2, 1)]
    pes3 = enumerate_pes(3)
    assert pes3 == [e for e, _ in TABLE_N3]
    assert pes3[10] == (1, 3, 2) and pes3[9] == (1, 2, 3)
    assert pes3[14] == (3, 2, 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_pes_size_matches_permutation_count(n):
    expected = sum(math.factorial(n) // math.factorial(n - k) for k in range(1, n + 1))
    assert len(enumerate_pes(n)) == expected == pes_size(n)


def test_pes_size_six():
    assert pes_size(6) == 1956


@pytest.mark.parametrize("event,code", TABLE_N3)
def test_encoding_table(event, code):
    assert encode_event(event, 3) == code
    assert decode_event(code, 3) == event


def test_codec_known_codes():
    assert encode_event((2, 1, 3, 4, 5), 8) == (31, 25)
    assert encode_event((1, 2, 3, 5, 4), 8) == (31, 2)
    assert encode_event((2, 3, 1, 4, 5, 6, 7), 7) == (127, 841)
    assert encode_event(tuple(range(10, 0, -1)), 10) == (1023, math.factorial(10))


def test_codec_errors():
    with pytest.raises(DomainError):
        encode_event((1, 4), 3)
    with pytest.raises(DomainError):
        encode_event((1, 1), 3)
    with pytest.raises(DomainError):
        decode_event((7, 7), 3)
    with pytest.raises(DomainError):
        decode_event((8, 1), 3)
    with pytest.raises(DomainError):
        decode_event((0, 1), 3)


def test_pmf_validation():
    with pytest.raises(DomainError):
        PermutationMassFunction(3, {(1,): 0.5, (2,): 0.4})
    with pytest.raises(DomainError):
        PermutationMassFunction(3, {(1,): 1.2, (2,): -0.2})
    with pytest.raises(DomainError):
        PermutationMassFunction(3, {(): 1.0})
    with pytest.raises(DomainError):
        PermutationMassFunction(3, {(1,): 0.5, (4,): 0.5})
    # within 1e-9 is accepted, not renormalized
    p = PermutationMassFunction(3, {(1,): 0.5, (2,): 0.5 + 5e-10})
    assert p[(2,)] == 0.5 + 5e-10


def test_pmf_drops_zero_mass_and_sorts_by_code():
    p = PermutationMassFunction(3, {(2, 3, 1): 0.5, (1,): 0.5, (3,): 0.0})
    assert p.focal_sets == ((1,), (2, 3, 1))
    assert isinstance(p.masses, MappingProxyType)


def test_from_codes():
    p = PermutationMassFunction.from_codes(3, {(1, 1): 0.4, (5, 1): 0.3, (5, 2): 0.3})
    assert p == scenarios.two_sources()[0]


def test_forget_order_merges_orders():
    m = forget_order(scenarios.two_sources()[0])
    assert m[{1, 3}] == pytest.approx(0.6)
    assert m[{1}] == pytest.approx(0.4)
    assert sum(m.masses.values()) == pytest.approx(1.0, abs=1e-15)


def test_forget_order_reversed_triples_coincide():
    a, b = scenarios.growing_x(3)[1], scenarios.growing_x(3, reverse=True)[1]
    assert forget_order(a) == forget_order(b)
    assert forget_order(a)[{1, 2, 3}] == 1.0


def test_forget_order_bayesian_is_identity():
    p, _ = scenarios.bayesian()
    assert forget_order(p) == MassFunction(3, {frozenset({1}): 0.25, frozenset({2}): 0.5, frozenset({3}): 0.25})


def test_truncate_merges_prefixes():
    p1, p2 = scenarios.depth_pair()
    t3 = truncate(p1, 3)
    assert dict(t3.masses) == {(2, 3): 0.6, (2, 3, 1): 0.4}
    assert dict(truncate(p1, 2).masses) == {(2, 3): pytest.approx(1.0)}
    assert dict(truncate(p2, 3).masses) == {(2, 3, 1): 1.0}


def test_vectorize_full_pes():
    p1, p2 = scenarios.two_sources()
    v1, v2 = vectorize([p1, p2], "full-pes")
    assert len(v1) == 15
    np.testing.assert_array_equal(v1.coords, [0.4, 0, 0, 0, 0, 0.3, 0.3, 0, 0, 0, 0, 0, 0, 0, 0])
    np.testing.assert_array_equal(v2.coords, [0, 0.4, 0, 0, 0, 0.1, 0, 0, 0, 0.15, 0, 0, 0.35, 0, 0])


def test_vectorize_focal_union():
    p1, p2 = scenarios.two_sources()
    v1, v2 = vectorize([p1, p2])
    assert v1.universe == ((1,), (2,), (1, 3), (3, 1), (1, 2, 3), (2, 3, 1))
    np.testing.assert_array_equal(v1.coords, [0.4, 0, 0.3, 0.3, 0, 0])
    np.testing.assert_array_equal(v2.coords, [0, 0.4, 0.1, 0, 0.15, 0.35])


def test_vectorize_single_focal_set():
    (v,) = vectorize([PermutationMassFunction(4, {(4, 2): 1.0})])
    assert v.universe == ((4, 2),)
    np.testing.assert_array_equal(v.coords, [1.0])


def test_vectorize_rejects_mixed_frames():
    with pytest.raises(DomainError):
        vectorize([PermutationMassFunction(2, {(1,): 1.0}), PermutationMassFunction(3, {(1,): 1.0})])
    with pytest.raises(DomainError):
        vectorize([PermutationMassFunction(2, {(1,): 1.0})], "everything")


def test_belief_vector_is_read_only():
    (v,) = vectorize([PermutationMassFunction(2, {(1,): 1.0})])
    with pytest.raises(ValueError):
        v.coords[0] = 2.0
