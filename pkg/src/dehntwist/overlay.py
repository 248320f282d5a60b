"""Two transverse curves on a surface, stored as a signed rotation system.

Every crossing has four slots in counterclockwise order 0, 1, 2, 3 with respect
to its local orientation. Curve ``a`` uses slots 0 and 2, curve ``b`` uses 1 and 3,
so each curve passes straight through. An edge of sign -1 reverses the local
orientation between its two ends.

Faces are traced with the usual rule for embedding schemes: arriving at a
crossing through slot ``t`` with state ``sigma`` one leaves through ``t + sigma``,
and the state is multiplied by the sign of every edge traversed. A departure
``(v, s, sigma)`` is coded as ``2 * (4 * v + s) + (sigma < 0)``; each face is
traced once in each direction and its identifier is the smallest code used by
either traversal.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, replace
from functools import cached_property

from .caps import Cap

A, B = "a", "b"
CURVES = (A, B)
SLOTS = {A: (0, 2), B: (1, 3)}


class OverlayError(ValueError):
    """Raised for malformed overlays or instances."""


@dataclass(frozen=True)
class Edge:
    id: int
    curve: str
    tail: tuple[int, int]
    head: tuple[int, int]
    sign: int

    def other_end(self, end: tuple[int, int]) -> tuple[int, int]:
        if end == self.tail:
            return self.head
        if end == self.head:
            return self.tail
        raise KeyError(end)


@dataclass(frozen=True)
class SignedOverlay:
    crossings: int
    edges: tuple[Edge, ...]
    cycle_a: tuple[int, ...]
    cycle_b: tuple[int, ...]
    # sidedness (+1 two-sided, -1 one-sided) of the curves when there are no crossings
    loop_signs: tuple[int, int] = (1, 1)

    @property
    def m(self) -> int:
        return self.crossings

    @cached_property
    def edge_by_id(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def slot_table(self) -> dict[tuple[int, int], Edge]:
        table = {}
        for e in self.edges:
            table[e.tail] = e
            table[e.head] = e
        return table

    def cycle(self, curve: str) -> tuple[int, ...]:
        return self.cycle_a if curve == A else self.cycle_b

    def curve_edges(self, curve: str) -> list[Edge]:
        return [e for e in self.edges if e.curve == curve]

    def walk(self, curve: str) -> list[tuple[Edge, tuple[int, int], tuple[int, int]]]:
        """The curve's edges in cycle order as ``(edge, start, end)`` triples."""
        ids = self.cycle(curve)
        if not ids:
            return []
        first = self.edge_by_id[ids[0]]
        for start, end in ((first.tail, first.head), (first.head, first.tail)):
            steps = [(first, start, end)]
            ok = True
            for eid in ids[1:]:
                e = self.edge_by_id[eid]
                v, s = steps[-1][2]
                nxt = (v, s ^ 2)
                if nxt == e.tail:
                    steps.append((e, e.tail, e.head))
                elif nxt == e.head:
                    steps.append((e, e.head, e.tail))
                else:
                    ok = False
                    break
            if ok and (steps[-1][2][0], steps[-1][2][1] ^ 2) == steps[0][1]:
                return steps
        raise OverlayError(f"curve {curve} does not form a straight-through cycle")

    def vertex_order(self, curve: str) -> list[int]:
        return [start[0] for _, start, _ in self.walk(curve)]

    def sign_product(self, curve: str) -> int:
        if self.crossings == 0:
            return self.loop_signs[CURVES.index(curve)]
        p = 1
        for e in self.curve_edges(curve):
            p *= e.sign
        return p


@dataclass(frozen=True)
class Instance:
    """An overlay together with one cap per face and optional annotations."""

    overlay: SignedOverlay
    caps: tuple[tuple[int, Cap], ...] = ()
    facts: tuple[str, ...] = ()

    @cached_property
    def cap_map(self) -> dict[int, Cap]:
        return dict(self.caps)

    @property
    def m(self) -> int:
        return self.overlay.crossings

    @cached_property
    def faces(self) -> "FaceStructure":
        return trace_faces(self.overlay)

    def with_caps(self, caps: Mapping[int, Cap]) -> "Instance":
        return Instance(self.overlay, tuple(sorted(caps.items())), self.facts)


def make_instance(overlay: SignedOverlay, caps: Mapping[int, Cap] | None = None,
                  facts: Iterable[str] = ()) -> Instance:
    return Instance(overlay, tuple(sorted((caps or {}).items())), tuple(facts))


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    problems: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def add(self, category: str, message: str):
        self.problems.append((category, message))

    def categories(self) -> set[str]:
        return {c for c, _ in self.problems}

    def __str__(self):
        if self.ok:
            return "pass"
        return "\n".join(f"fail {c}: {msg}" for c, msg in self.problems)


def validate_overlay(ov: SignedOverlay, report: ValidationReport | None = None) -> ValidationReport:
    report = report if report is not None else ValidationReport()
    m = ov.crossings
    if m < 0:
        report.add("valence", "negative crossing count")
        return report
    if m == 0:
        if ov.edges or ov.cycle_a or ov.cycle_b:
            report.add("cycle", "an overlay without crossings has no edges")
        if any(s not in (1, -1) for s in ov.loop_signs):
            report.add("signs", "loop sidedness flags must be +1 or -1")
        return report
    ids = [e.id for e in ov.edges]
    if len(set(ids)) != len(ids):
        report.add("cycle", "duplicate edge identifiers")
    used: dict[tuple[int, int], int] = {}
    for e in ov.edges:
        if e.curve not in CURVES:
            report.add("cycle", f"edge {e.id} has unknown curve {e.curve!r}")
            continue
        if e.sign not in (1, -1):
            report.add("signs", f"edge {e.id} has sign {e.sign}")
        for v, s in (e.tail, e.head):
            if not (0 <= v < m and 0 <= s < 4):
                report.add("valence", f"edge {e.id} ends at nonexistent slot {v}.{s}")
                continue
            if (v, s) in used:
                report.add("valence", f"slot {v}.{s} used by edges {used[(v, s)]} and {e.id}")
            used[(v, s)] = e.id
            if s not in SLOTS[e.curve]:
                report.add("transversality",
                           f"edge {e.id} of curve {e.curve} occupies slot {v}.{s}")
    for v in range(m):
        free = [s for s in range(4) if (v, s) not in used]
        if free:
            report.add("valence", f"crossing {v} has empty slots {free}")
    if not report.ok:
        return report
    for curve in CURVES:
        cyc = ov.cycle(curve)
        own = sorted(e.id for e in ov.edges if e.curve == curve)
        if sorted(cyc) != own:
            report.add("cycle", f"curve {curve} cycle does not list exactly its edges")
            continue
        if len(own) != m:
            report.add("cycle", f"curve {curve} has {len(own)} edges, expected {m}")
            continue
        try:
            ov.walk(curve)
        except OverlayError as exc:
            report.add("cycle", str(exc))
    if report.ok:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for s in range(4):
                e = ov.slot_table[(v, s)]
                w = e.other_end((v, s))[0]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != m:
            report.add("connectivity", "overlay graph is disconnected")
    return report


def validate(inst: Instance | SignedOverlay, caps: Mapping[int, Cap] | None = None) -> ValidationReport:
    """Check structural invariants and, if an instance is given, cap coverage."""
    if isinstance(inst, SignedOverlay):
        ov, cap_map = inst, caps
    else:
        ov, cap_map = inst.overlay, inst.cap_map if caps is None else caps
    report = validate_overlay(ov)
    if report.ok and cap_map is not None:
        face_ids = {f.id for f in trace_faces(ov).faces}
        missing = sorted(face_ids - set(cap_map))
        extra = sorted(set(cap_map) - face_ids)
        if missing:
            report.add("cap coverage", f"faces without a cap: {missing}")
        if extra:
            report.add("cap coverage", f"caps on nonexistent faces: {extra}")
    return report


def require_valid(inst: Instance) -> None:
    report = validate(inst)
    if not report.ok:
        raise OverlayError(str(report))


# ---------------------------------------------------------------------------
# faces

@dataclass(frozen=True)
class Step:
    vertex: int
    slot: int
    sigma: int
    edge: int
    # whether the step runs from the edge's tail to its head
    slot_is_tail: bool = True

    @property
    def code(self) -> int:
        return 2 * (4 * self.vertex + self.slot) + (self.sigma < 0)

    @property
    def corner(self) -> tuple[int, int]:
        """The corner ``(vertex, sector)`` where the walk turns before this step.

        Sector ``k`` lies between slots ``k`` and ``k + 1``.
        """
        return (self.vertex, (self.slot - 1) % 4 if self.sigma > 0 else self.slot)


@dataclass(frozen=True)
class Face:
    id: int
    steps: tuple[Step, ...]

    def __len__(self):
        return len(self.steps)

    @property
    def corners(self) -> tuple[tuple[int, int], ...]:
        return tuple(st.corner for st in self.steps)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(st.edge for st in self.steps)


@dataclass(frozen=True)
class FaceStructure:
    faces: tuple[Face, ...]
    free_loops: tuple[str, ...] = ()

    @cached_property
    def by_id(self) -> dict[int, Face]:
        return {f.id: f for f in self.faces}

    @cached_property
    def corner_face(self) -> dict[tuple[int, int], int]:
        return {c: f.id for f in self.faces for c in f.corners}

    @property
    def ids(self) -> list[int]:
        return [f.id for f in self.faces]


def _trace(ov: SignedOverlay, v: int, s: int, sigma: int) -> list[Step]:
    steps = []
    start = (v, s, sigma)
    while True:
        e = ov.slot_table[(v, s)]
        steps.append(Step(v, s, sigma, e.id, e.tail == (v, s)))
        w, t = e.other_end((v, s))
        sigma = sigma * e.sign
        v, s = w, (t + sigma) % 4
        if (v, s, sigma) == start:
            return steps
        if len(steps) > 8 * ov.crossings:
            raise OverlayError("face tracing did not close up")


def _reverse(ov: SignedOverlay, steps: list[Step]) -> list[Step]:
    out = []
    for st in reversed(steps):
        e = ov.edge_by_id[st.edge]
        w, t = e.other_end((st.vertex, st.slot))
        out.append(Step(w, t, -st.sigma * e.sign, e.id, e.tail == (w, t)))
    return out


def trace_faces(ov: SignedOverlay) -> FaceStructure:
    """Boundary walks of a regular neighbourhood of the two curves."""
    if ov.crossings == 0:
        return FaceStructure((), CURVES)
    report = validate_overlay(ov)
    if not report.ok:
        raise OverlayError(f"malformed overlay: {report}")
    return trace_walks(ov)


def trace_walks(ov: SignedOverlay) -> FaceStructure:
    """Face walks of any 4-valent signed rotation system, without validation."""
    seen: set[int] = set()
    faces = []
    for v in range(ov.crossings):
        for s in range(4):
            for sigma in (1, -1):
                if 2 * (4 * v + s) + (sigma < 0) in seen:
                    continue
                fwd = _trace(ov, v, s, sigma)
                rev = _reverse(ov, fwd)
                codes_f = {st.code for st in fwd}
                codes_r = {st.code for st in rev}
                if codes_f & codes_r:
                    raise OverlayError("face walk coincides with its reverse")
                seen |= codes_f | codes_r
                walk = fwd if min(codes_f) < min(codes_r) else rev
                k = min(range(len(walk)), key=lambda i: walk[i].code)
                walk = walk[k:] + walk[:k]
                faces.append(Face(walk[0].code, tuple(walk)))
    faces.sort(key=lambda f: f.id)
    return FaceStructure(tuple(faces))


# ---------------------------------------------------------------------------
# relabelling and re-signing

ROTATE2 = (2, 3, 0, 1)
REFLECT = (0, 3, 2, 1)
IDENTITY = (0, 1, 2, 3)
SWAP_CURVES = (1, 2, 3, 0)


def _is_reflection(perm: tuple[int, ...]) -> bool:
    return (perm[1] - perm[0]) % 4 == 3


def _map_sector(perm: tuple[int, ...], k: int) -> int:
    x, y = perm[k], perm[(k + 1) % 4]
    return x if (y - x) % 4 == 1 else y


def transform(inst, vmap: list[int], perms: list[tuple[int, ...]], swap: bool = False):
    """Relabel crossings by ``vmap`` and slots at old crossing ``v`` by ``perms[v]``.

    Slot permutations must be dihedral. If ``swap`` is set they must exchange
    the slot parities, and the curve names are exchanged as well. Works on an
    :class:`Instance` or on a region complex, returning the same kind.
    """
    ov = inst.overlay
    if ov.crossings == 0:
        signs = ov.loop_signs[::-1] if swap else ov.loop_signs
        empty = SignedOverlay(0, (), (), (), signs)
        if not isinstance(inst, Instance):
            return type(inst)(empty, (), inst.facts)
        return Instance(empty, (), inst.facts)
    edges = []
    for e in ov.edges:
        sign = e.sign
        if _is_reflection(perms[e.tail[0]]):
            sign = -sign
        if _is_reflection(perms[e.head[0]]):
            sign = -sign
        curve = {A: B, B: A}[e.curve] if swap else e.curve
        edges.append(Edge(e.id, curve,
                          (vmap[e.tail[0]], perms[e.tail[0]][e.tail[1]]),
                          (vmap[e.head[0]], perms[e.head[0]][e.head[1]]), sign))
    cyc_a, cyc_b = (ov.cycle_b, ov.cycle_a) if swap else (ov.cycle_a, ov.cycle_b)
    new = SignedOverlay(ov.crossings, tuple(sorted(edges, key=lambda e: e.id)), cyc_a, cyc_b,
                        ov.loop_signs[::-1] if swap else ov.loop_signs)
    if not isinstance(inst, Instance):
        return type(inst)(new, _move_regions(inst, new, vmap, perms), inst.facts)
    caps = {}
    if inst.caps:
        new_faces = trace_faces(new)
        old_faces = inst.faces
        for fid, cap in inst.caps:
            v, k = old_faces.by_id[fid].corners[0]
            caps[new_faces.corner_face[(vmap[v], _map_sector(perms[v], k))]] = cap
    return Instance(new, tuple(sorted(caps.items())), inst.facts)


def _move_regions(cx, new: SignedOverlay, vmap, perms) -> tuple:
    """Carry regions across a relabelling, re-expressing orientation signs."""
    old_faces = cx.faces
    new_faces = trace_faces(new)
    new_step = {st.corner: st for f in new_faces.faces for st in f.steps}
    out = []
    for r in cx.regions:
        walks, rho = [], []
        for w in r.walks:
            st = old_faces.by_id[w].steps[0]
            v, k = st.corner
            nst = new_step[(vmap[v], _map_sector(perms[v], k))]
            walks.append(new_faces.corner_face[nst.corner])
            flip = -1 if _is_reflection(perms[v]) else 1
            rho.append(r.rho_of(w) * st.sigma * flip * nst.sigma)
        order = sorted(range(len(walks)), key=walks.__getitem__)
        out.append(replace(r, walks=tuple(walks[i] for i in order),
                           rho=tuple(rho[i] for i in order) if r.orientable else ()))
    return tuple(sorted(out, key=lambda r: r.walks))


def flip_vertices(inst: Instance, vertices: Iterable[int]) -> Instance:
    """Reverse the local orientation at the given crossings."""
    flip = set(vertices)
    m = inst.overlay.crossings
    return transform(inst, list(range(m)), [REFLECT if v in flip else IDENTITY for v in range(m)])


def swap_curves(inst: Instance) -> Instance:
    m = inst.overlay.crossings
    return transform(inst, list(range(m)), [SWAP_CURVES] * m, swap=True)


def normalize_signs(inst: Instance) -> Instance:
    """Re-sign crossings so that every edge of ``a`` except the last is +1."""
    ov = inst.overlay
    if ov.crossings == 0:
        return inst
    flips: set[int] = set()
    state = {}
    walk = ov.walk(A)
    state[walk[0][1][0]] = 1
    for e, start, end in walk[:-1]:
        st = state[start[0]] * e.sign
        state[end[0]] = st
        if st < 0:
            flips.add(end[0])
    return flip_vertices(inst, flips) if flips else inst


def relabel_edges(ov: SignedOverlay, order: list[int]) -> SignedOverlay:
    """Renumber edges so that ``order[i]`` gets identifier ``i``."""
    new_id = {old: i for i, old in enumerate(order)}
    edges = tuple(sorted((Edge(new_id[e.id], e.curve, e.tail, e.head, e.sign) for e in ov.edges),
                         key=lambda e: e.id))
    return SignedOverlay(ov.crossings, edges, tuple(new_id[i] for i in ov.cycle_a),
                         tuple(new_id[i] for i in ov.cycle_b), ov.loop_signs)
