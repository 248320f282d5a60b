"""Bigon detection and removal, and reduction to minimal position."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .overlay import A, B, Edge, Instance, OverlayError, SignedOverlay, require_valid, trace_faces
from .regions import Complex, Region, as_complex
from .topology import _ParityUnionFind


class StaleBigon(OverlayError):
    pass


@dataclass(frozen=True)
class Bigon:
    face: int
    edge_a: int
    edge_b: int
    # the two crossings cancelled by the removal
    ends: tuple[int, int]


@dataclass(frozen=True)
class Removal:
    complex: Complex
    # old crossing -> new crossing, for surviving crossings
    vertex_map: dict[int, int]
    # new edge id -> old edge ids it is made of, in order along the curve
    edge_origin: dict[int, tuple[int, ...]]

    @property
    def instance(self) -> Instance:
        return self.complex.to_instance()


def bigons(obj: Instance | Complex) -> list[Bigon]:
    """All removable bigons, ordered by face identifier."""
    if obj.m < 2:
        return []
    cx = as_complex(obj)
    ov = cx.overlay
    out = []
    for f in cx.faces.faces:
        if len(f) != 2 or not cx.region_of[f.id].is_plain_disk:
            continue
        e0, e1 = (ov.edge_by_id[st.edge] for st in f.steps)
        if {e0.curve, e1.curve} != {A, B}:
            continue
        x, y = f.steps[0].vertex, f.steps[1].vertex
        if x == y:
            continue
        ea, eb = (e0, e1) if e0.curve == A else (e1, e0)
        out.append(Bigon(f.id, ea.id, eb.id, (x, y)))
    return out


def find_bigon(obj: Instance | Complex) -> Bigon | None:
    found = bigons(obj)
    return found[0] if found else None


def _neighbour(ov: SignedOverlay, v: int, edge: Edge) -> Edge:
    """The edge of the same curve on the far side of crossing ``v`` from ``edge``."""
    end = edge.tail if edge.tail[0] == v else edge.head
    return ov.slot_table[(v, end[1] ^ 2)]


def _along(ov: SignedOverlay, curve: str, ids: tuple[int, int, int]) -> tuple[int, ...]:
    pos = {e: i for i, e in enumerate(ov.cycle(curve))}
    first, mid, last = ids
    if (pos[mid] - pos[first]) % len(pos) == 1:
        return (first, mid, last)
    return (last, mid, first)


def remove_bigon(obj: Instance | Complex, bigon: Bigon) -> Removal:
    """Cancel the two crossings of ``bigon`` by pushing one arc across the other."""
    cx = as_complex(obj)
    if bigon not in bigons(cx):
        raise StaleBigon(f"face {bigon.face} is not a removable bigon of this instance")
    ov = cx.overlay
    x, y = bigon.ends
    merged = {}
    for curve, eid in ((A, bigon.edge_a), (B, bigon.edge_b)):
        mid = ov.edge_by_id[eid]
        merged[curve] = (_neighbour(ov, x, mid), mid, _neighbour(ov, y, mid))

    if ov.crossings == 2:
        signs = tuple(merged[c][0].sign * merged[c][1].sign for c in (A, B))
        origin = {i: _along(ov, c, tuple(e.id for e in merged[c]))[:2] for i, c in enumerate((A, B))}
        empty = Complex(SignedOverlay(0, (), (), (), signs), (), cx.facts)
        return Removal(empty, {}, origin)

    survivors = [v for v in range(ov.crossings) if v not in (x, y)]
    vmap = {v: i for i, v in enumerate(survivors)}

    def far(edge: Edge, v: int) -> tuple[int, int]:
        end = edge.head if edge.tail[0] == v else edge.tail
        return (vmap[end[0]], end[1])

    new_edges: list[Edge] = []
    origin: dict[int, tuple[int, ...]] = {}
    cycles = {}
    for curve in (A, B):
        before, mid, after = merged[curve]
        drop = {before.id, mid.id, after.id}
        cyc = list(ov.cycle(curve))
        # start right after the merged run so surviving edges stay in cycle order
        k = next((i for i, e in enumerate(cyc) if e not in drop and cyc[i - 1] in drop), 0)
        ids = []
        for eid in (e for e in cyc[k:] + cyc[:k] if e not in drop):
            e = ov.edge_by_id[eid]
            ids.append(len(new_edges))
            origin[len(new_edges)] = (eid,)
            new_edges.append(Edge(len(new_edges), curve, (vmap[e.tail[0]], e.tail[1]),
                                  (vmap[e.head[0]], e.head[1]), e.sign))
        ids.append(len(new_edges))
        origin[len(new_edges)] = _along(ov, curve, (before.id, mid.id, after.id))
        new_edges.append(Edge(len(new_edges), curve, far(before, x), far(after, y),
                              before.sign * mid.sign * after.sign))
        cycles[curve] = tuple(ids)
    new_ov = SignedOverlay(ov.crossings - 2, tuple(new_edges), cycles[A], cycles[B])
    regions = _merge_regions(cx, new_ov, bigon, vmap)
    return Removal(Complex(new_ov, regions, cx.facts), vmap, origin)


def _merge_regions(cx: Complex, new_ov: SignedOverlay, bigon: Bigon,
                   vmap: dict[int, int]) -> tuple[Region, ...]:
    """Regions after the removal.

    The bigon disk is absorbed by the region across its b-edge, and a thin
    strip along its a-edge joins the two faces sitting at the corners opposite
    the bigon. Orientation signs are carried over through surviving corners.
    """
    old = cx.faces
    x, y = bigon.ends
    bigon_face = old.by_id[bigon.face]
    kx = next(k for v, k in bigon_face.corners if v == x)
    strip_walk = old.corner_face[(x, (kx + 2) % 4)]

    old_step = {st.corner: st for f in old.faces for st in f.steps}
    old_index = {w: i for i, r in enumerate(cx.regions) for w in r.walks}
    faces = trace_faces(new_ov)
    back = {new: v for v, new in vmap.items()}
    uf = _ParityUnionFind([("R", i) for i in range(len(cx.regions))] + [("W", f.id) for f in faces.faces])
    for f in faces.faces:
        for st in f.steps:
            v, k = st.corner
            ost = old_step[(back[v], k)]
            w = old.corner_face[(back[v], k)]
            region = cx.regions[old_index[w]]
            rho = region.rho_of(w) * ost.sigma * st.sigma
            uf.union(("W", f.id), ("R", old_index[w]), 0 if rho > 0 else 1)
    bad = {uf.find(n) for n in getattr(uf, "bad_roots", set())}

    groups: dict[object, list] = {}
    for node in uf.parent:
        groups.setdefault(uf.find(node), []).append(node)
    strip_region = old_index[strip_walk]
    bigon_region = old_index[bigon.face]
    out = []
    for root, nodes in groups.items():
        olds = [cx.regions[i] for tag, i in nodes if tag == "R"]
        walks = sorted(i for tag, i in nodes if tag == "W")
        if not walks:
            if [i for tag, i in nodes] != [bigon_region]:
                raise OverlayError("a region lost all of its corners during bigon removal")
            continue
        members = {i for tag, i in nodes if tag == "R"}
        chi = sum(r.chi for r in olds) - (1 if strip_region in members else 0)
        orientable = root not in bad and all(r.orientable for r in olds)
        rho = ()
        if orientable:
            for w in walks:
                uf.find(("W", w))
            rho = tuple(-1 if uf.parity[("W", w)] else 1 for w in walks)
        out.append(Region(tuple(walks), chi, sum(r.punctures for r in olds),
                          sum(r.boundaries for r in olds), orientable, rho))
    out.sort(key=lambda r: r.walks)
    return tuple(out)


def minimal_position(obj: Instance | Complex, rng: random.Random | None = None) -> tuple[Complex, int]:
    """Remove bigons until none is left; return the final complex and its crossing count.

    Without ``rng`` the canonically smallest bigon is removed at every step,
    otherwise a uniformly random one.
    """
    if isinstance(obj, Instance):
        require_valid(obj)
    cx = as_complex(obj)
    while True:
        found = bigons(cx)
        if not found:
            return cx, cx.m
        pick = rng.choice(found) if rng is not None else found[0]
        cx = remove_bigon(cx, pick).complex


def reduce_tracked(obj: Instance | Complex, rng: random.Random | None = None):
    """Like :func:`minimal_position` but also return the removals performed, in order."""
    cx = as_complex(obj)
    steps = []
    while True:
        found = bigons(cx)
        if not found:
            return cx, steps
        pick = rng.choice(found) if rng is not None else found[0]
        step = remove_bigon(cx, pick)
        steps.append((pick, step))
        cx = step.complex
