import random

import pytest
from hypothesis import given, settings, strategies as st

from dehntwist.bigon import StaleBigon, bigons, find_bigon, minimal_position, reduce_tracked, remove_bigon
from dehntwist.caps import PLAIN, Cap
from dehntwist.corpus import build_overlay
from dehntwist.overlay import make_instance, trace_faces
from dehntwist.topology import classify_ambient
from dehntwist.twist import construct_twisted_overlay


def sphere(cap=PLAIN):
    ov = build_overlay(2, (0, 1), (1, 3), 1, (1, 1))
    return make_instance(ov, {f: cap for f in trace_faces(ov).ids})


def test_minimal_instances_have_no_bigon(corpus):
    assert all(find_bigon(e.instance) is None for e in corpus)


def test_two_crossings_cancel_completely():
    inst = sphere()
    assert find_bigon(inst) is not None
    cx, count = minimal_position(inst)
    assert count == 0 and cx.m == 0
    assert cx.overlay.loop_signs == (1, 1)


def test_punctured_two_gon_is_not_a_bigon():
    assert bigons(sphere(Cap("PuncturedDisk", (1,)))) == []


def test_braid_twist_has_a_bigon(goldens):
    tw = construct_twisted_overlay(goldens["braid"].instance, 1)
    assert tw.complex.m == 4
    bg = find_bigon(tw.complex)
    assert bg is not None
    step = remove_bigon(tw.complex, bg)
    assert step.complex.m == 2
    assert classify_ambient(step.complex) == classify_ambient(tw.complex)
    with pytest.raises(StaleBigon):
        remove_bigon(step.complex, bg)


def test_already_minimal_is_fixed_point(goldens):
    inst = goldens["orientable_m2"].instance
    cx, count = minimal_position(inst)
    assert count == inst.m
    assert cx.overlay == inst.overlay


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_removal_order_does_not_matter(corpus, data):
    crossing = [e for e in corpus if e.instance.m > 0]
    e = data.draw(st.sampled_from(crossing))
    n = data.draw(st.sampled_from((1, -1, 2, -2)))
    seed = data.draw(st.integers(0, 2**32 - 1))
    twisted = construct_twisted_overlay(e.instance, n).complex
    final, steps = reduce_tracked(twisted, random.Random(seed))
    assert final.m == minimal_position(twisted)[1]
    assert all(s.complex.m == twisted.m - 2 * (i + 1) for i, (_, s) in enumerate(steps))
    assert classify_ambient(final) == classify_ambient(twisted)
    assert find_bigon(final) is None
