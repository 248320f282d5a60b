"""Surface classification, sidedness and genericity for capped overlays."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .overlay import A, B, CURVES, SLOTS, Instance, OverlayError, SignedOverlay, require_valid
from .regions import Complex, as_complex

ONE_SIDED = "one-sided"
TWO_SIDED = "two-sided"


class DisconnectedSurface(OverlayError):
    pass


@dataclass(frozen=True)
class SurfaceKind:
    orientable: bool
    genus: int
    boundaries: int
    punctures: int
    # boundary circles created by cutting along a curve (complement pieces only)
    cut_boundaries: int = 0

    @property
    def chi(self) -> int:
        g = 2 * self.genus if self.orientable else self.genus
        return 2 - g - self.boundaries

    def is_disk(self) -> bool:
        return self.orientable and self.genus == 0 and self.boundaries == 1

    def is_moebius(self) -> bool:
        return not self.orientable and self.genus == 1 and self.boundaries == 1

    def __str__(self):
        kind = "orientable" if self.orientable else "nonorientable"
        return f"{kind} genus={self.genus} r={self.boundaries} s={self.punctures}"


class _ParityUnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.parity = {x: 0 for x in items}
        self.consistent = True

    def find(self, x):
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        acc = 0
        for y in reversed(path):
            acc ^= self.parity[y]
            self.parity[y] = acc
            self.parent[y] = root
        return root

    def union(self, x, y, rel: int):
        """Impose ``parity(x) xor parity(y) == rel``."""
        rx, ry = self.find(x), self.find(y)
        px, py = self.parity[x] if x != rx else 0, self.parity[y] if y != ry else 0
        if rx == ry:
            if px ^ py != rel:
                self.consistent = False
                self.bad_roots = getattr(self, "bad_roots", set()) | {rx}
            return
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ rel
        bad = getattr(self, "bad_roots", set())
        if ry in bad:
            bad.discard(ry)
            bad.add(rx)


def _edge_sides(faces):
    """Map edge id -> list of (face id, direction) over the two sides of the edge."""
    sides: dict[int, list[tuple[int, int]]] = {}
    for f in faces.faces:
        for st in f.steps:
            sides.setdefault(st.edge, []).append((f.id, 1 if st.slot_is_tail else -1))
    return sides


def _check_caps(inst: Instance):
    require_valid(inst)
    if set(inst.cap_map) != set(inst.faces.ids):
        raise OverlayError("instance does not cap every face exactly once")


def _pieces(cx: Complex, glue_curves: Sequence[str]):
    """Group regions along edges of ``glue_curves``.

    Returns ``(components, orientable)`` where components maps a root region
    index to its member indices and ``orientable`` tells whether the induced
    region orientations can be made to agree across the glued edges.
    """
    ov = cx.overlay
    index = {w: i for i, r in enumerate(cx.regions) for w in r.walks}
    uf = _ParityUnionFind(range(len(cx.regions)))
    for eid, sides in _edge_sides(cx.faces).items():
        if ov.edge_by_id[eid].curve not in glue_curves:
            continue
        (w1, d1), (w2, d2) = sides
        r1, r2 = cx.regions[index[w1]], cx.regions[index[w2]]
        # induced boundary orientations must run opposite ways along a shared edge
        prod = r1.rho_of(w1) * r2.rho_of(w2) * d1 * d2
        uf.union(index[w1], index[w2], 0 if prod < 0 else 1)
    comps: dict[int, list[int]] = {}
    for i in range(len(cx.regions)):
        comps.setdefault(uf.find(i), []).append(i)
    bad = {uf.find(r) for r in getattr(uf, "bad_roots", set())}
    orient = {root: root not in bad and all(cx.regions[i].orientable for i in members)
              for root, members in comps.items()}
    return comps, orient


def classify_ambient(inst: Instance | Complex) -> SurfaceKind:
    """Topological type of the surface obtained by capping every face."""
    if inst.m == 0:
        raise DisconnectedSurface("curves without crossings do not determine a connected surface")
    if isinstance(inst, Instance):
        _check_caps(inst)
    cx = as_complex(inst)
    comps, orient = _pieces(cx, CURVES)
    if len(comps) != 1:
        raise DisconnectedSurface("assembled surface is disconnected")
    chi = -cx.m + sum(r.chi for r in cx.regions)
    r = sum(g.boundaries for g in cx.regions)
    s = sum(g.punctures for g in cx.regions)
    return _kind(chi, next(iter(orient.values())), r, s)


def _kind(chi: int, orientable: bool, r: int, s: int, cut: int = 0) -> SurfaceKind:
    g2 = 2 - chi - r
    if orientable:
        if g2 % 2:
            raise OverlayError("inconsistent Euler characteristic for an orientable surface")
        return SurfaceKind(True, g2 // 2, r, s, cut)
    return SurfaceKind(False, g2, r, s, cut)


def classify_complement(inst: Instance | Complex, curve: str) -> list[SurfaceKind]:
    """Cut the assembled surface along ``curve`` and classify every piece."""
    if inst.m == 0:
        raise DisconnectedSurface("curves without crossings do not determine a surface")
    if isinstance(inst, Instance):
        _check_caps(inst)
    cx = as_complex(inst)
    ov = cx.overlay
    faces = cx.faces
    other = B if curve == A else A
    comps, orient = _pieces(cx, (other,))
    walk_root = {w: root for root, members in comps.items() for i in members for w in cx.regions[i].walks}

    # boundary circles created by the cut, as classes of corners
    corners = [c for f in faces.faces for c in f.corners]
    parent = {c: c for c in corners}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for v in range(ov.crossings):
        for q in SLOTS[other]:
            union((v, (q - 1) % 4), (v, q))
    for f in faces.faces:
        n = len(f.steps)
        for i, st in enumerate(f.steps):
            if ov.edge_by_id[st.edge].curve == curve:
                union(st.corner, f.steps[(i + 1) % n].corner)
    cut_count: dict[int, int] = {root: 0 for root in comps}
    for cls in {find(c) for c in corners}:
        cut_count[walk_root[faces.corner_face[cls]]] += 1

    out = []
    for root, members in sorted(comps.items()):
        regions = [cx.regions[i] for i in members]
        steps = [st for r in regions for w in r.walks for st in faces.by_id[w].steps]
        own_edges = {st.edge for st in steps if ov.edge_by_id[st.edge].curve == other}
        cut_sides = sum(1 for st in steps if ov.edge_by_id[st.edge].curve == curve)
        chi = sum(r.chi for r in regions) + len(own_edges) - cut_sides
        r = sum(g.boundaries for g in regions) + cut_count[root]
        s = sum(g.punctures for g in regions)
        out.append(_kind(chi, orient[root], r, s, cut_count[root]))
    return out


def is_generic(inst: Instance | Complex, curve: str) -> bool:
    """False if the curve bounds a disk with fewer than two punctures or an
    unpunctured Moebius band."""
    for piece in classify_complement(inst, curve):
        if piece.cut_boundaries != 1 or piece.boundaries != 1:
            continue
        if piece.is_disk() and piece.punctures < 2:
            return False
        if piece.is_moebius() and piece.punctures == 0:
            return False
    return True


def cycle_sidedness(ov: SignedOverlay, walk: Sequence[int], *, straight: bool = True) -> str:
    """Sidedness of a closed walk given as a sequence of edge identifiers.

    With ``straight`` the walk must pass straight through every crossing it
    visits; otherwise it may turn (as when a segment is closed by an arc of
    the other curve).
    """
    if not walk:
        raise OverlayError("empty walk")
    edges = [ov.edge_by_id[i] for i in walk]
    first = edges[0]
    for start, end in ((first.tail, first.head), (first.head, first.tail)):
        pos, ok = end, True
        for e in edges[1:]:
            nxt = [x for x in (e.tail, e.head) if x[0] == pos[0]]
            if straight:
                nxt = [x for x in nxt if x[1] == pos[1] ^ 2]
            if not nxt:
                ok = False
                break
            pos = e.other_end(nxt[0])
        closes = pos[0] == start[0] and (not straight or pos[1] == start[1] ^ 2)
        if ok and closes:
            break
    else:
        raise OverlayError("walk is not a closed" + (" straight-through" if straight else "") + " walk")
    p = 1
    for e in edges:
        p *= e.sign
    return TWO_SIDED if p > 0 else ONE_SIDED


def curve_sidedness(ov: SignedOverlay, curve: str) -> str:
    return TWO_SIDED if ov.sign_product(curve) > 0 else ONE_SIDED
