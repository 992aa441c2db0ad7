import pytest
from hypothesis import given, settings, strategies as st

from errors import ConfigError
from partitions import (
    EMPTY, CoreIndex, MayaDiagram, Partition, as_core_index, core_partition, hook_lengths, is_core,
    maya_from_nu, maya_from_partition, partition_from_maya,
)


@st.composite
def partitions(draw, max_len=6, max_part=7):
    parts = draw(st.lists(st.integers(min_value=0, max_value=max_part), max_size=max_len))
    return Partition(tuple(sorted(parts, reverse=True)))


@st.composite
def core_indices(draw):
    L = draw(st.integers(min_value=2, max_value=4))
    nu = draw(st.lists(st.integers(min_value=-2, max_value=2), min_size=L, max_size=L))
    return CoreIndex(tuple(nu))


def test_partition_trims_trailing_zeros():
    assert Partition((3, 1, 0, 0)).parts == (3, 1)
    assert Partition((0, 0)) == EMPTY
    assert Partition((2, 1))[1] == 2
    assert Partition((2, 1))[5] == 0


@pytest.mark.parametrize("parts", [(1, 2), (3, -1)])
def test_invalid_partition_is_config_error(parts):
    with pytest.raises(ConfigError):
        Partition(parts)


def test_conjugate_example():
    assert Partition((3, 1)).conjugate() == Partition((2, 1, 1))
    assert EMPTY.conjugate() == EMPTY


@pytest.mark.parametrize(
    "nu, expected",
    [
        ((0, 1), (1,)),
        ((0, 0), ()),
        ((0, 2), (2, 1)),
        ((2, 0), (1,)),
        ((0, 0, 1), (2,)),
    ],
)
def test_core_partition_examples(nu, expected):
    assert core_partition(CoreIndex(nu)) == Partition(expected)


def test_shifted_core_index():
    assert CoreIndex((0, 1)).shifted(1).nu == (1, 1)
    assert CoreIndex((0, 1)).shifted(2).nu == (1, 2)
    assert CoreIndex((0, 0, 0)).shifted(-1).nu == (0, 0, -1)


def test_core_index_errors():
    with pytest.raises(ConfigError):
        CoreIndex((1,))
    with pytest.raises(ConfigError):
        as_core_index([0, 1, 2], 2)
    with pytest.raises(ConfigError):
        maya_from_nu(CoreIndex((0, 1)), 3)


def test_maya_absorbs_run_above_offset():
    m = MayaDiagram(0, (3, 1))
    assert m.offset == 1
    assert m.head == (3,)
    assert 2 not in m and 3 in m and -5 in m
    assert m.elements(3) == [3, 1, 0]


def test_hook_lengths_example():
    assert hook_lengths(Partition((2, 1))) == [1, 1, 3]
    assert is_core(Partition((2, 1)), 2)
    assert not is_core(Partition((2,)), 2)


@settings(max_examples=80, deadline=None)
@given(partitions())
def test_conjugate_is_involution(p):
    assert p.conjugate().conjugate() == p
    assert p.conjugate().weight == p.weight


@settings(max_examples=80, deadline=None)
@given(partitions())
def test_maya_roundtrip(p):
    assert partition_from_maya(maya_from_partition(p)) == p


@settings(max_examples=80, deadline=None)
@given(partitions())
def test_hook_count_equals_weight(p):
    assert len(hook_lengths(p)) == p.weight


@settings(max_examples=80, deadline=None)
@given(core_indices())
def test_core_partition_is_core(nu):
    assert is_core(core_partition(nu), nu.L)


@settings(max_examples=40, deadline=None)
@given(core_indices())
def test_uniform_shift_keeps_core(nu):
    assert core_partition(nu.shifted(nu.L)) == core_partition(nu)
