"""Segments of ``b`` cut out by ``a``, their side labels, and the adjacency graph.

Labels come from a fixed co-orientation of the annulus around ``a``. Walking
``b`` we carry a sign ``beta`` comparing its transported frame with the local
frame at each crossing (``beta = +1`` at the first crossing of ``b``). The
germ of a segment at its start is labelled E exactly when ``beta = +1`` there,
and the germ at its end is labelled E exactly when ``beta = -1``. The same
labels also follow from the side the pushoff of ``b`` takes, which we use as a
cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bigon import find_bigon
from .overlay import A, B, Instance, OverlayError, normalize_signs
from .regions import Complex, as_complex
from .topology import ONE_SIDED, TWO_SIDED, cycle_sidedness

E, F = "E", "F"


class SegmentError(OverlayError):
    pass


@dataclass(frozen=True)
class Segment:
    edge: int
    start: int
    end: int
    sidedness: str
    labels: tuple[str, str]

    @property
    def one_sided(self) -> bool:
        return self.sidedness == ONE_SIDED


@dataclass(frozen=True)
class SegmentTable:
    segments: tuple[Segment, ...]
    # per crossing: +1 if b leaves it on the north side of a
    exits_north: dict[int, int] = field(default_factory=dict)
    beta: dict[int, int] = field(default_factory=dict)

    def by_edge(self, edge: int) -> Segment:
        return next(s for s in self.segments if s.edge == edge)

    def one_sided(self) -> list[Segment]:
        return [s for s in self.segments if s.one_sided]


def _require_twistable(inst: Instance | Complex, check_minimal: bool = True):
    if inst.overlay.sign_product(A) < 0:
        raise SegmentError("curve a is one-sided; side labels are undefined")
    if check_minimal and find_bigon(inst) is not None:
        raise SegmentError("curves cobound a bigon; reduce to minimal position first")


def north_data(inst: Instance | Complex) -> tuple[Instance | Complex, dict[int, int], dict[int, int]]:
    """Normalized instance, the slot at which ``a`` leaves each crossing, and ``beta``."""
    norm = normalize_signs(inst)
    ov = norm.overlay
    out_slot = {start[0]: start[1] for _, start, _ in ov.walk(A)}
    beta: dict[int, int] = {}
    walk = ov.walk(B)
    b = 1
    for e, start, _ in walk:
        beta[start[0]] = b
        b *= e.sign
    if b != 1:
        raise SegmentError("curve b is one-sided; its pushoff does not close up")
    return norm, out_slot, beta


def side_labels(inst: Instance | Complex, check_minimal: bool = True) -> SegmentTable:
    """Sidedness and E/F labels for every segment of ``b``."""
    _require_twistable(inst, check_minimal)
    if inst.m == 0:
        return SegmentTable(())
    norm, out_slot, beta = north_data(inst)
    ov = norm.overlay
    exits = {}
    a_walk = ov.walk(A)
    position = {start[0]: i for i, (_, start, _) in enumerate(a_walk)}
    segs = []
    for e, start, end in ov.walk(B):
        v, w = start[0], end[0]
        exits[v] = 1 if start[1] == (out_slot[v] + 1) % 4 else -1
        labels = (E if beta[v] > 0 else F, E if beta[w] < 0 else F)
        # close the segment with the arc of a running forward from w to v
        i, arc = position[w], []
        while a_walk[i % len(a_walk)][1][0] != v:
            arc.append(a_walk[i % len(a_walk)][0].id)
            i += 1
        side = cycle_sidedness(inst.overlay, [e.id, *arc], straight=False)
        segs.append(Segment(e.id, v, w, side, labels))
    return SegmentTable(tuple(segs), exits, beta)


def labels_from_pushoff(table: SegmentTable) -> dict[int, tuple[str, str]]:
    """Recompute labels from the side ``eps = -beta * d`` on which the pushoff runs.

    E sits on the north side of ``a`` exactly when the pushoff lies to the west.
    """
    out = {}
    for s in table.segments:
        eps_v = -table.beta[s.start] * table.exits_north[s.start]
        eps_w = -table.beta[s.end] * table.exits_north[s.end]
        leaves_north = table.exits_north[s.start] > 0
        arrives_north = table.exits_north[s.end] < 0
        first = E if leaves_north == (eps_v < 0) else F
        last = E if arrives_north == (eps_w < 0) else F
        out[s.edge] = (first, last)
    return out


def find_adjacencies(inst: Instance | Complex, table: SegmentTable | None = None) -> list[tuple[int, int, int]]:
    """Faces joining two one-sided segments: plain quadrilaterals alternating b, a, b, a."""
    table = table or side_labels(inst)
    one = {s.edge for s in table.one_sided()}
    cx = as_complex(inst)
    ov = cx.overlay
    out = []
    for f in cx.faces.faces:
        if len(f) != 4 or not cx.region_of[f.id].is_plain_disk:
            continue
        curves = [ov.edge_by_id[e].curve for e in f.edge_ids]
        if curves not in ([B, A, B, A], [A, B, A, B]):
            continue
        p, q = sorted(e for e in f.edge_ids if ov.edge_by_id[e].curve == B)
        if p in one and q in one:
            out.append((p, q, f.id))
    return out


@dataclass(frozen=True)
class Gamma:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def ks(self) -> list[int]:
        return [len(c) for c in self.components]

    def degree(self, v: int) -> int:
        return sum((p == v) + (q == v) for p, q, _ in self.edges)

    @property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)

    @property
    def is_forest(self) -> bool:
        return len(self.edges) == len(self.vertices) - len(self.components)

    def violations(self) -> list[str]:
        out = []
        if self.max_degree > 2:
            out.append(f"vertex of degree {self.max_degree} in the adjacency graph")
        if any(p == q for p, q, _ in self.edges):
            out.append("adjacency graph has a loop")
        if not self.is_forest:
            out.append("adjacency graph has a cycle")
        return out


def build_gamma(inst: Instance | Complex, strict: bool = False, check_minimal: bool = True) -> Gamma:
    """The adjacency graph on one-sided segments.

    Components are listed by decreasing size, ties broken by smallest vertex.
    With ``strict`` a degree or cycle violation raises :class:`SegmentError`.
    """
    table = side_labels(inst, check_minimal)
    verts = tuple(sorted(s.edge for s in table.one_sided()))
    edges = tuple(find_adjacencies(inst, table))
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p, q, _ in edges:
        parent[find(p)] = find(q)
    groups: dict[int, list[int]] = {}
    for v in verts:
        groups.setdefault(find(v), []).append(v)
    comps = sorted((tuple(sorted(g)) for g in groups.values()), key=lambda c: (-len(c), c))
    gamma = Gamma(verts, edges, tuple(comps))
    if strict and gamma.violations():
        raise SegmentError("instance not generic/minimal as claimed: " + "; ".join(gamma.violations()))
    return gamma


__all__ = ["E", "F", "ONE_SIDED", "TWO_SIDED", "Gamma", "Segment", "SegmentError", "SegmentTable",
           "build_gamma", "find_adjacencies", "labels_from_pushoff", "north_data", "side_labels"]
