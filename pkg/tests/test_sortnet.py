import itertools

import numpy as np
import pytest

from polarscl.sortnet import (
    apply_network,
    build_batcher,
    depth_formula,
    format_network,
    select_top,
)

KNOWN_SIZES = {2: (1, 1), 4: (5, 3), 8: (19, 6), 16: (63, 10)}


@pytest.mark.parametrize("size,expected", sorted(KNOWN_SIZES.items()))
def test_comparator_and_layer_counts(size, expected):
    net = build_batcher(size)
    assert (net.comparator_count, net.depth) == expected
    assert net.depth == depth_formula(size.bit_length() - 1)


def test_depth_formula_values():
    assert depth_formula(1) == 1
    assert depth_formula(3) == 6
    assert depth_formula(4) == 10
    with pytest.raises(ValueError):
        depth_formula(0)


def test_build_batcher_rejects_bad_sizes():
    for size in (0, 1, 3, 6, 12):
        with pytest.raises(ValueError):
            build_batcher(size)


def test_layers_are_disjoint():
    for size in (2, 4, 8, 16, 32):
        for layer in build_batcher(size).layers:
            touched = [i for pair in layer for i in pair]
            assert len(touched) == len(set(touched))
            assert all(i < j for i, j in layer)


@pytest.mark.parametrize("size", (2, 4, 8))
def test_zero_one_principle_exhaustive(size):
    net = build_batcher(size)
    for bits in itertools.product((0, 1), repeat=size):
        out, perm = apply_network(net, bits)
        assert all(out[i] >= out[i + 1] for i in range(size - 1))
        assert sorted(perm) == list(range(size))
        assert [bits[p] for p in perm] == out


def test_zero_one_principle_size16_vectorized():
    net = build_batcher(16)
    vectors = np.array(list(itertools.product((0, 1), repeat=16)), dtype=np.int8)
    for layer in net.layers:
        for i, j in layer:
            hi = np.maximum(vectors[:, i], vectors[:, j])
            lo = np.minimum(vectors[:, i], vectors[:, j])
            vectors[:, i], vectors[:, j] = hi, lo
    assert np.all(vectors[:, :-1] >= vectors[:, 1:])


def test_apply_examples():
    net = build_batcher(4)
    out, perm = apply_network(net, (4.0, 3.0, 2.0, 1.0))
    assert out == [4.0, 3.0, 2.0, 1.0] and perm == [0, 1, 2, 3]
    out, _ = apply_network(net, (1, 3, 2, 4))
    assert out == [4, 3, 2, 1]
    with pytest.raises(ValueError):
        apply_network(net, (1, 2, 3))


def test_select_top_matches_stable_sort():
    rng = np.random.default_rng(9)
    for count in (2, 4, 8, 16, 6, 10):  # power-of-two (network) and not (sort)
        for _ in range(200):
            metrics = list(rng.integers(-4, 5, size=count).astype(float))  # many ties
            for take in (1, count // 2, count):
                got = select_top(metrics, take)
                want = sorted(range(count), key=lambda i: (-metrics[i], i))[:take]
                assert got == want


def test_select_top_validates_count():
    with pytest.raises(ValueError):
        select_top([1.0, 2.0], 0)


def test_format_network():
    text = format_network(build_batcher(8))
    lines = text.splitlines()
    assert lines[0] == "size 8  comparators 19  depth 6"
    assert len(lines) == 7
    assert lines[1].startswith("layer 0: (0,1)")
