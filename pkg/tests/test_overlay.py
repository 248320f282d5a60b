from hypothesis import given, settings

from dehntwist.caps import PLAIN
from dehntwist.corpus import build_overlay
from dehntwist.overlay import (A, B, Edge, _reverse, SignedOverlay, flip_vertices, make_instance,
                               normalize_signs, swap_curves, trace_faces, transform, validate)
from dehntwist.topology import classify_ambient, curve_sidedness

from strategies import instances, overlays, relabellings


def torus():
    return build_overlay(1, (0,), (1,), 1, (1,))


def test_smallest_instance_validates():
    ov = torus()
    inst = make_instance(ov, {f: PLAIN for f in trace_faces(ov).ids})
    assert validate(inst).ok


def test_transversality_violation():
    edges = (Edge(0, A, (0, 0), (0, 1), 1), Edge(1, B, (0, 2), (0, 3), 1))
    report = validate(SignedOverlay(1, edges, (0,), (1,)))
    assert "transversality" in report.categories()


def test_missing_cap_reported():
    ov = build_overlay(2, (0, 1), (1, 3), 1, (1, 1))
    faces = trace_faces(ov).ids
    assert len(faces) >= 2
    inst = make_instance(ov, {faces[0]: PLAIN})
    assert "cap coverage" in validate(inst).categories()


def test_slot_used_twice():
    edges = (Edge(0, A, (0, 2), (0, 0), 1), Edge(1, B, (0, 1), (0, 1), 1))
    assert "valence" in validate(SignedOverlay(1, edges, (0,), (1,))).categories()


def test_disconnected_overlay_rejected():
    edges = (Edge(0, A, (0, 2), (1, 0), 1), Edge(1, A, (1, 2), (0, 0), 1),
             Edge(2, B, (0, 1), (0, 3), 1), Edge(3, B, (1, 1), (1, 3), 1))
    report = validate(SignedOverlay(2, edges, (0, 1), (2, 3)))
    assert not report.ok


def test_torus_single_face():
    faces = trace_faces(torus())
    assert len(faces.faces) == 1
    assert len(faces.faces[0]) == 4


def test_no_crossings_no_faces():
    ov = SignedOverlay(0, (), (), (), (1, -1))
    assert trace_faces(ov).faces == ()
    assert curve_sidedness(ov, B) == "one-sided"


def test_orientable_m2_euler_count():
    ov = build_overlay(2, (0, 1), (1, 3), 1, (1, 1))
    faces = trace_faces(ov)
    inst = make_instance(ov, {f: PLAIN for f in faces.ids})
    # V - E + F with every face a disk
    assert classify_ambient(inst).chi == 2 - 4 + len(faces.faces)


@given(overlays())
def test_every_side_used_once(ov):
    faces = trace_faces(ov)
    assert sum(len(f) for f in faces.faces) == 2 * len(ov.edges)
    # each side is met once per direction, so the codes of all walks and their reverses tile everything
    codes = []
    for f in faces.faces:
        codes += [s.code for s in f.steps] + [s.code for s in _reverse(ov, list(f.steps))]
    assert sorted(codes) == list(range(8 * ov.m))


@given(overlays())
def test_face_id_is_smallest_code(ov):
    for f in trace_faces(ov).faces:
        rev = _reverse(ov, list(f.steps))
        assert f.id == min(s.code for s in (*f.steps, *rev))


@settings(max_examples=60, deadline=None)
@given(instances(), relabellings(3))
def test_classification_invariant_under_relabelling(inst, rel):
    vmap, perms = rel
    m = inst.m
    vmap = [v for v in vmap if v < m]
    moved = transform(inst, vmap, perms[:m])
    assert validate(moved).ok
    assert classify_ambient(moved) == classify_ambient(inst)
    assert curve_sidedness(moved.overlay, A) == curve_sidedness(inst.overlay, A)
    assert curve_sidedness(moved.overlay, B) == curve_sidedness(inst.overlay, B)


@settings(max_examples=60, deadline=None)
@given(instances())
def test_normalize_and_swap_preserve_surface(inst):
    norm = normalize_signs(inst)
    signs = [e.sign for e, _, _ in norm.overlay.walk(A)]
    assert all(s == 1 for s in signs[:-1])
    assert classify_ambient(norm) == classify_ambient(inst)
    swapped = swap_curves(inst)
    assert classify_ambient(swapped) == classify_ambient(inst)
    assert curve_sidedness(swapped.overlay, A) == curve_sidedness(inst.overlay, B)
    flipped = flip_vertices(inst, range(inst.m))
    assert classify_ambient(flipped) == classify_ambient(inst)
