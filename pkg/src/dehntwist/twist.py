"""Powers of a Dehn twist: the closed formula and an independent construction.

The construction works in coordinates on the annulus around ``a``: ``x`` runs
along ``a`` (crossing ``j`` of ``a`` sits at ``x = j``, circumference ``m``) and
``y`` runs across it from the south side (0) to the north side (1). Curve ``b``
crosses the annulus along the vertical fibers ``x = j``. The pushoff of ``b``
runs at ``x = j + eps_j / 4`` and the twisted curve replaces each of its
vertical arcs by the sheared arc ``x = i + eps_i / 4 + s * |n| * m * y``.
Every new crossing inherits the orientation of the annulus, with slot 0 the
east-going end of the twisted arc, 1 north along ``b``, 2 west and 3 south.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bigon import Bigon, bigons, find_bigon, minimal_position, remove_bigon
from .overlay import (A, B, Edge, FaceStructure, Instance, OverlayError, SignedOverlay, _reverse,
                      trace_faces, trace_walks, validate)
from .regions import Complex, Region, as_complex
from .segments import Gamma, SegmentError, build_gamma, north_data
from .topology import _edge_sides, _ParityUnionFind, classify_ambient

DELTA = Fraction(1, 4)
C = "c"


class TwistError(OverlayError):
    pass


def formula_intersection(m: int, n: int, ks: list[int]) -> int:
    """Closed form ``|n| m^2 - sum k_i^2`` for the twisted intersection number."""
    if n == 0:
        raise ValueError("exponent must be nonzero")
    if any(k < 1 for k in ks) or sum(ks) > m:
        raise ValueError(f"component sizes {ks} are not admissible for m={m}")
    return abs(n) * m * m - sum(k * k for k in ks)


@dataclass(frozen=True)
class TwistedOverlay:
    """The pair (twisted curve, b) as curves ``a`` and ``b`` of a complex.

    ``crossing_tag`` records (arc, fiber) for every crossing: the arc is the
    base crossing next to which that arc of the twisted curve leaves the annulus,
    the fiber is the base crossing whose fiber of ``b`` it lies on.
    ``edge_bands`` lists, for each edge, the bands (segments of ``b`` by
    position along ``b``) it runs through.
    """

    complex: Complex
    base: Complex
    n: int
    orientation: int
    crossing_tag: dict[int, tuple[int, int]]
    edge_bands: dict[int, tuple[int, ...]]
    # band index -> base edge id of the segment
    band_edge: dict[int, int]

    @property
    def instance(self) -> Instance:
        return self.complex.to_instance()


def _crossings(pos: dict[int, int], eps: dict[int, int], m: int, slope: int):
    """All (arc, fiber, y) where a sheared arc meets a fiber of ``b``."""
    out = []
    for arc in pos:
        for fiber, j in pos.items():
            out.extend((arc, fiber, y) for y in _heights(pos, eps, m, slope, arc, Fraction(j)))
    assert len(out) == abs(slope) * m * m
    return out


def _heights(pos, eps, m, slope, arc, x: Fraction) -> list[Fraction]:
    """Heights where the sheared arc passes over the line at ``x`` (mod m)."""
    d = x - pos[arc] - eps[arc] * DELTA
    ys = []
    for t in range(-abs(slope) - 2, abs(slope) + 3):
        y = (d + t * m) / (slope * m)
        if 0 < y < 1:
            ys.append(y)
    return sorted(ys)


class _Arrangement:
    """Crossings and edges of a, b and the twisted curve ``c`` inside the annulus.

    Every point carries its slots: the b slots ``north``/``south``, the twisted
    curve's ``up``/``down`` and a's ``east``/``west`` where they apply.
    """

    def __init__(self):
        self.slots: list[dict[str, int]] = []
        self.edges: list[Edge] = []

    def point(self, **slots) -> int:
        self.slots.append(slots)
        return len(self.slots) - 1

    def chain(self, curve, points, fwd, back, sign=1):
        for p, q in zip(points, points[1:]):
            self.link(curve, (p, self.slots[p][fwd]), (q, self.slots[q][back]), sign)

    def link(self, curve, tail, head, sign):
        self.edges.append(Edge(len(self.edges), curve, tail, head, sign))

    def overlay(self) -> SignedOverlay:
        return SignedOverlay(len(self.slots), tuple(self.edges), (), ())


def construct_twisted_overlay(inst: Instance | Complex, n: int, orientation: int = 1,
                              check: bool = True) -> TwistedOverlay:
    """Build t_a^n(b) together with b, with regions carried over from ``inst``."""
    if n == 0:
        raise TwistError("exponent must be nonzero")
    if orientation not in (1, -1):
        raise TwistError("orientation flag must be +1 or -1")
    if inst.m == 0:
        raise TwistError("curves are disjoint; the twist does not move b")
    if inst.overlay.sign_product(A) < 0:
        raise TwistError("curve a is one-sided")
    if check and find_bigon(inst) is not None:
        raise TwistError("base pair is not in minimal position")
    try:
        norm, out_slot, beta = north_data(as_complex(inst))
    except SegmentError as exc:
        raise TwistError(str(exc)) from None
    ov = norm.overlay
    m = ov.crossings
    a_walk = ov.walk(A)
    b_walk = ov.walk(B)
    pos = {start[0]: j for j, (_, start, _) in enumerate(a_walk)}
    order = [start[0] for _, start, _ in b_walk]
    north = {v: 1 if start[1] == (out_slot[v] + 1) % 4 else -1
             for v, (_, start, _) in zip(order, b_walk)}
    eps = {v: -beta[v] * north[v] for v in order}
    slope = orientation * (1 if n > 0 else -1) * abs(n)
    up = 0 if slope > 0 else 2
    half = Fraction(1, 2)

    # crossings of the twisted curve with b come first, in both structures
    arr = _Arrangement()
    pts = sorted(_crossings(pos, eps, m, slope), key=lambda p: (pos[p[1]], p[2]))
    for _ in pts:
        arr.point(north=1, south=3, up=up, down=up ^ 2)
    old_id = {v: arr.point(north=(out_slot[v] + 1) % 4, south=(out_slot[v] + 3) % 4,
                           east=out_slot[v], west=out_slot[v] ^ 2) for v in order}
    a_point = {}
    for v in order:
        x = (pos[v] + eps[v] * DELTA + slope * m * half) % m
        a_point[v] = (x, arr.point(east=0, west=2, up=1, down=3))

    fiber_pts = {v: [] for v in order}
    arc_pts = {v: [] for v in order}
    for k, (arc, fiber, y) in enumerate(pts):
        fiber_pts[fiber].append((y, k))
        arc_pts[arc].append((y, k))
    cb_fiber = {v: [k for _, k in sorted(fiber_pts[v])] for v in order}
    cb_arc = {v: [k for _, k in sorted(arc_pts[v])] for v in order}
    full_fiber = {v: [k for _, k in sorted(fiber_pts[v] + [(half, old_id[v])])] for v in order}
    full_arc = {v: [k for _, k in sorted(arc_pts[v] + [(half, a_point[v][1])])] for v in order}
    height = {k: y for k, (_, _, y) in enumerate(pts)}
    for v in order:
        height[old_id[v]] = height[a_point[v][1]] = half

    along_a = sorted([(Fraction(pos[v]), old_id[v]) for v in order] + list(a_point.values()))
    a_ids = [p for _, p in along_a]
    arr.chain(A, a_ids + a_ids[:1], "east", "west")
    for v in order:
        arr.chain(B, full_fiber[v], "north", "south")
        arr.chain(C, full_arc[v], "up", "down")

    edges: list[Edge] = []
    bands: dict[int, tuple[int, ...]] = {}
    cycles = {A: [], B: []}

    def add(curve, tail, head, sign, band=()):
        eid = len(edges)
        edges.append(Edge(eid, curve, tail, head, sign))
        bands[eid] = band
        cycles[curve].append(eid)

    slot = arr.slots
    for k, v in enumerate(order):
        w = order[(k + 1) % m]
        sign = b_walk[k][0].sign
        for curve, mark, short, full, hi, lo in ((A, C, cb_arc, full_arc, "up", "down"),
                                                 (B, B, cb_fiber, full_fiber, "north", "south")):
            out_key, in_key = (hi, lo) if north[v] > 0 else (lo, hi)
            chain = short[v] if north[v] > 0 else short[v][::-1]
            for p, q in zip(chain, chain[1:]):
                add(curve, (p, slot[p][out_key]), (q, slot[q][out_key] ^ 2), 1)
            entry = short[w] if north[w] > 0 else short[w][::-1]
            entry_key = lo if north[w] > 0 else hi
            add(curve, (chain[-1], slot[chain[-1]][out_key]), (entry[0], slot[entry[0]][entry_key]), sign, (k,))
            # the same band in the arrangement joins the outermost points of each fiber or arc
            ends_v, ends_w = full[v], full[w]
            p = ends_v[-1] if north[v] > 0 else ends_v[0]
            q = ends_w[0] if north[w] > 0 else ends_w[-1]
            arr.link(mark, (p, slot[p][out_key]), (q, slot[q][entry_key]), sign)

    new_ov = SignedOverlay(len(pts), tuple(edges), tuple(cycles[A]), tuple(cycles[B]))
    report = validate(new_ov)
    if not report.ok:
        raise TwistError(f"construction produced a malformed overlay: {report}")

    arr_ov = arr.overlay()
    arr_faces = trace_walks(arr_ov)
    step_face = _step_faces(arr_ov, arr_faces)
    inherit = _inherit(norm, arr.slots, step_face, a_walk, out_slot, along_a,
                       full_arc, height, pos, eps, m, slope)
    regions = _drop_a(arr_ov, arr_faces, step_face, norm, inherit, new_ov)
    cx = Complex(new_ov, regions, inst.facts)
    if check and classify_ambient(cx) != classify_ambient(norm):
        raise TwistError("twisted instance changed the ambient surface")
    tags = {k: (arc, fiber) for k, (arc, fiber, _) in enumerate(pts)}
    band_edge = {k: e.id for k, (e, _, _) in enumerate(b_walk)}
    return TwistedOverlay(cx, norm, n, orientation, tags, bands, band_edge)


def _step_faces(ov: SignedOverlay, faces: FaceStructure) -> dict[int, tuple[int, int]]:
    """Departure code -> (face id, orientation sign) over both traversal directions.

    The sign is the step state for the face's own walk and its negative on the
    reversed walk, which sees the face on its other side.
    """
    out = {}
    for f in faces.faces:
        for st in f.steps:
            out[st.code] = (f.id, st.sigma)
        for st in _reverse(ov, list(f.steps)):
            out[st.code] = (f.id, -st.sigma)
    return out


def _code(v: int, s: int, sigma: int) -> int:
    return 2 * (4 * v + s) + (sigma < 0)


def _inherit(norm: Complex, slot, step_face, a_walk, out_slot, along_a, full_arc,
             height, pos, eps, m, slope) -> dict[int, tuple[int, int]]:
    """Match every base walk with the arrangement face reaching its side of the annulus.

    Over the middle of edge ``j`` of ``a`` that face sits just above (below) the
    topmost (lowest) piece of a or of the twisted curve. Every other
    arrangement face is a disk: arcs cut off by the twisted curve inside a
    collar are boundary parallel. Returns arrangement face -> (base walk,
    parity of its orientation sign relative to the walk's).
    """
    old_step = _step_faces(norm.overlay, norm.faces)
    target: dict[int, tuple[int, int]] = {}
    for j, (_, start, _) in enumerate(a_walk):
        v = start[0]
        x = j + Fraction(1, 2)
        cands = [(Fraction(1, 2), None)]
        cands += [(y, arc) for arc in full_arc for y in _heights(pos, eps, m, slope, arc, x)]
        for top in (True, False):
            y, arc = max(cands, key=lambda c: c[0]) if top else min(cands, key=lambda c: c[0])
            # the face north of a piece lies left of east-going travel
            north_sigma = -1
            if arc is None:
                west = max((p for p in along_a if p[0] < x), default=along_a[-1])[1]
                step = (west, slot[west]["east"])
            else:
                chain = full_arc[arc]
                lower = [k for k in chain if height[k] < y]
                upper = [k for k in chain if height[k] > y]
                if slope > 0 and lower:
                    step = (lower[-1], slot[lower[-1]]["up"])
                elif slope < 0 and upper:
                    step = (upper[0], slot[upper[0]]["down"])
                elif slope > 0:
                    # the piece runs off the rim on its west end; travel it westwards
                    step, north_sigma = (upper[0], slot[upper[0]]["down"]), 1
                else:
                    step, north_sigma = (lower[-1], slot[lower[-1]]["up"]), 1
            sigma = north_sigma if top else -north_sigma
            new, o_new = step_face[_code(step[0], step[1], sigma)]
            old, o_old = old_step[_code(v, out_slot[v], -1 if top else 1)]
            bit = 0 if norm.region_of[old].rho_of(old) * o_old * o_new > 0 else 1
            if target.setdefault(new, (old, bit)) != (old, bit):
                raise TwistError(f"arrangement face {new} swallows several base walks")
    if len({old for old, _ in target.values()}) != len(target):
        raise TwistError("a base walk spreads over several arrangement faces")
    return target


def _drop_a(arr_ov, arr_faces, step_face, norm: Complex, inherit, new_ov) -> tuple[Region, ...]:
    """Regions of (twisted curve, b): arrangement faces glued across the edges of a.

    An arrangement face that inherits a base walk joins the base region of
    that walk; all other arrangement faces are disks. Each glued edge is an
    arc joining two points of the other curves, so it lowers the Euler
    characteristic by one.
    """
    faces = trace_faces(new_ov)
    index = {w: i for i, r in enumerate(norm.regions) for w in r.walks}
    uf = _ParityUnionFind([("F", f) for f in arr_faces.ids] + [("W", f) for f in faces.ids]
                          + [("R", i) for i in range(len(norm.regions))])
    for f, (old, bit) in inherit.items():
        uf.union(("F", f), ("R", index[old]), bit)
    glued = []
    for eid, ((f1, d1), (f2, d2)) in _edge_sides(arr_faces).items():
        if arr_ov.edge_by_id[eid].curve == A:
            uf.union(("F", f1), ("F", f2), 0 if d1 * d2 < 0 else 1)
            glued.append(f1)
    for f in faces.faces:
        for st in f.steps:
            g, sigma = step_face[st.code]
            uf.union(("W", f.id), ("F", g), 0 if sigma * st.sigma > 0 else 1)
    bad = {uf.find(x) for x in getattr(uf, "bad_roots", set())}
    groups: dict[object, list] = {}
    for node in uf.parent:
        groups.setdefault(uf.find(node), []).append(node)
    cut: dict[object, int] = {}
    for f1 in glued:
        root = uf.find(("F", f1))
        cut[root] = cut.get(root, 0) + 1
    out = []
    for root, nodes in groups.items():
        olds = [norm.regions[i] for tag, i in nodes if tag == "R"]
        disks = sum(1 for tag, i in nodes if tag == "F" and i not in inherit)
        walks = sorted(i for tag, i in nodes if tag == "W")
        if not walks:
            raise TwistError("an arrangement face is cut off from both curves")
        orientable = root not in bad and all(r.orientable for r in olds)
        rho = ()
        if orientable:
            for w in walks:
                uf.find(("W", w))
            rho = tuple(-1 if uf.parity[("W", w)] else 1 for w in walks)
        chi = sum(r.chi for r in olds) + disks - cut.get(root, 0)
        out.append(Region(tuple(walks), chi, sum(r.punctures for r in olds),
                          sum(r.boundaries for r in olds), orientable, rho))
    out.sort(key=lambda r: r.walks)
    return tuple(out)


def oracle_intersection(inst: Instance | Complex, n: int, orientation: int = 1) -> int:
    """I(t_a^n(b), b) by explicit construction and bigon removal."""
    tw = construct_twisted_overlay(inst, n, orientation)
    return minimal_position(tw.complex)[1]


def predicted_intersection(inst: Instance | Complex, n: int) -> tuple[int, Gamma]:
    gamma = build_gamma(inst)
    return formula_intersection(inst.m, n, gamma.ks), gamma


# ---------------------------------------------------------------------------
# the two kinds of reductions used in the proof, as targeted bigon removals

@dataclass
class FastPathState:
    complex: Complex
    crossing_tag: dict[int, tuple[int, int]]
    edge_bands: dict[int, tuple[int, ...]]
    removed: int = 0


def start_fast_path(tw: TwistedOverlay) -> FastPathState:
    return FastPathState(tw.complex, dict(tw.crossing_tag), dict(tw.edge_bands))


def _apply(state: FastPathState, bigon: Bigon) -> None:
    step = remove_bigon(state.complex, bigon)
    cx = step.complex
    old_bands = state.edge_bands
    bands = {}
    for new_id, origin in step.edge_origin.items():
        if len(origin) == 1:
            bands[new_id] = old_bands[origin[0]]
        else:
            # the moved arc now runs where the removed arc of b ran
            bands[new_id] = old_bands[origin[0]] + old_bands[bigon.edge_b] + old_bands[origin[-1]]
    state.edge_bands = bands
    state.crossing_tag = {new: state.crossing_tag[old] for old, new in step.vertex_map.items()}
    state.complex = cx
    state.removed += 1


def _matching(state: FastPathState, accept) -> Bigon | None:
    for bg in bigons(state.complex):
        if accept(state.edge_bands[bg.edge_a], state.edge_bands[bg.edge_b]):
            return bg
    return None


def reduce_type_I(state: FastPathState, one_sided: set[int]) -> int:
    """Push every arc of the twisted curve back across the one-sided band it follows."""
    count = 0
    while True:
        bg = _matching(state, lambda ca, cb: len(ca) == 1 and ca == cb and ca[0] in one_sided)
        if bg is None:
            return count
        _apply(state, bg)
        count += 1


def reduce_type_II(state: FastPathState, adjacent: set[tuple[int, int]]) -> int:
    """Push arcs across adjacency disks into the neighbouring one-sided band."""
    count = 0
    while True:
        bg = _matching(state, lambda ca, cb: len(ca) == 1 and len(cb) == 1
                       and ca != cb and (ca[0], cb[0]) in adjacent)
        if bg is None:
            return count
        _apply(state, bg)
        count += 1


@dataclass(frozen=True)
class FastPathReport:
    type_one: int
    type_two: int
    expected_one: int
    expected_two: int
    final_count: int
    bigon_left: bool
    fibers_met: bool

    @property
    def ok(self) -> bool:
        return (self.type_one == self.expected_one and self.type_two == self.expected_two
                and not self.bigon_left and self.fibers_met)


def fast_path(inst: Instance | Complex, n: int, orientation: int = 1) -> FastPathReport:
    """Run both reductions on the constructed curve and compare with the proof's counts."""
    gamma = build_gamma(inst)
    tw = construct_twisted_overlay(inst, n, orientation)
    edge_band = {e: k for k, e in tw.band_edge.items()}
    one_sided = {edge_band[v] for v in gamma.vertices}
    adjacent = set()
    for p, q, _ in gamma.edges:
        adjacent.add((edge_band[p], edge_band[q]))
        adjacent.add((edge_band[q], edge_band[p]))
    state = start_fast_path(tw)
    first = reduce_type_I(state, one_sided)
    second = reduce_type_II(state, adjacent)
    ks = gamma.ks
    exp_one = sum(ks) // 2
    exp_two = sum(k * (k - 1) // 2 for k in ks)
    met = _fibers_met(state, inst.m)
    return FastPathReport(first, second, exp_one, exp_two, state.complex.m,
                          find_bigon(state.complex) is not None, met)


def _fibers_met(state: FastPathState, m: int) -> bool:
    """Every fiber meets some other arc, and every arc meets some other fiber."""
    if m < 2:
        return True
    mixed = [(arc, fiber) for arc, fiber in state.crossing_tag.values() if arc != fiber]
    return len({arc for arc, _ in mixed}) == m and len({fiber for _, fiber in mixed}) == m
