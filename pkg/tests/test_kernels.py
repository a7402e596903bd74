import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import ietlang
from ietlang import _purepy

speedups = pytest.importorskip("ietlang._speedups")

codes = st.lists(st.integers(0, 3), min_size=1, max_size=12)
perm4 = st.permutations([0, 1, 2, 3])


@given(codes)
def test_bwt_parity(w):
    assert speedups.bwt_codes(w) == _purepy.bwt_codes(w)


@given(codes, perm4)
def test_clusters_parity(w, a_of_d):
    assert speedups.clusters_codes(w, a_of_d) == _purepy.clusters_codes(w, a_of_d)


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=8))
def test_first_crossing_parity(edges):
    xs, ys = [e[0] for e in edges], [e[1] for e in edges]
    assert speedups.first_crossing(xs, ys) == _purepy.first_crossing(xs, ys)


@given(st.lists(st.integers(1, 20), min_size=2, max_size=3), st.data())
def test_unit_cylinder_parity(lengths, data):
    r = len(lengths)
    order_a = data.draw(st.permutations(list(range(r))))
    starts, ends, pos = [], [], 0
    for n in lengths:
        starts.append(pos)
        pos += n
        ends.append(pos)
    image_start = {}
    pos = 0
    for e in order_a:
        image_start[e] = pos
        pos += lengths[e]
    shifts = [image_start[e] - starts[e] for e in range(r)]
    word = data.draw(st.lists(st.integers(0, r - 1), min_size=1, max_size=8))
    expect = _purepy.unit_cylinder(word, starts, ends, shifts)
    assert speedups.unit_cylinder(word, starts, ends, shifts) == expect


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 2), min_size=1, max_size=5), min_size=1, max_size=2), st.permutations([0, 1, 2]))
def test_witness_parity(words, a_of_d):
    first = _purepy.next_standard_witness(words, a_of_d, 12)
    assert speedups.next_standard_witness(words, a_of_d, 12) == first
    if first is not None:
        assert speedups.next_standard_witness(words, a_of_d, 12, first) == \
            _purepy.next_standard_witness(words, a_of_d, 12, first)


def test_witness_enumeration_order():
    # the single word 0 is coded by every vector, so the walk lists them all
    seen, after = [], None
    while True:
        after = _purepy.next_standard_witness([[0]], [1, 0], 4, after)
        if after is None:
            break
        seen.append(tuple(after))
    assert seen == [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)]


def test_compiled_backend_selected():
    assert ietlang.BACKEND == "cython"


def test_pure_python_switch():
    env = dict(os.environ, IETLANG_PURE_PYTHON="1")
    res = subprocess.run([sys.executable, "-c", "import ietlang; print(ietlang.BACKEND)"],
                         capture_output=True, text=True, env=env)
    assert res.stdout.strip() == "python"
