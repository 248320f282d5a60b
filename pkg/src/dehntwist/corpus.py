"""Exhaustive enumeration of small instances, canonical forms, and the golden files."""

from __future__ import annotations

import itertools
import os
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from .bigon import find_bigon
from .caps import MENU, Cap
from .fileformat import load, serialize
from .overlay import (A, B, IDENTITY, ROTATE2, Edge, Instance, OverlayError, SignedOverlay, flip_vertices, make_instance,
                      normalize_signs, transform)
from .segments import Gamma, build_gamma
from .topology import SurfaceKind, classify_ambient, is_generic

CORPUS_ENV = "DEHNTWIST_CORPUS"
DEFAULT_MAX = 4


def golden_dir() -> Path:
    override = os.environ.get(CORPUS_ENV)
    if override:
        return Path(override)
    return Path(__file__).with_name("goldens")


def build_overlay(m: int, perm, exits, sa: int = 1, bs=None, loops=(1, 1)) -> SignedOverlay:
    """Overlay with a running through crossings 0..m-1 in order.

    ``a`` leaves crossing ``j`` by slot 2 and enters ``j+1`` by slot 0; only its
    last edge may carry a sign (``sa``). ``b`` visits the crossings in the
    order ``perm`` and leaves the ``k``-th of them by slot ``exits[k]`` (1 or 3).
    """
    if m == 0:
        return SignedOverlay(0, (), (), (), tuple(loops))
    bs = bs or (1,) * m
    edges = [Edge(j, A, (j, 2), ((j + 1) % m, 0), 1 if j < m - 1 else sa) for j in range(m)]
    for k in range(m):
        v, w = perm[k], perm[(k + 1) % m]
        edges.append(Edge(m + k, B, (v, exits[k]), (w, exits[(k + 1) % m] ^ 2), bs[k]))
    return SignedOverlay(m, tuple(edges), tuple(range(m)), tuple(range(m, 2 * m)))


def _reorder_edges(ov: SignedOverlay, b_slot: int) -> SignedOverlay:
    """Number a's edges along its walk from crossing 0, then b's from crossing 0 leaving by ``b_slot``."""
    edges = []
    cycles = {}
    for curve, first_slot in ((A, 2), (B, b_slot)):
        walk = ov.walk(curve)
        k = next(i for i, (_, start, _) in enumerate(walk) if start == (0, first_slot)) \
            if any(start == (0, first_slot) for _, start, _ in walk) else None
        if k is None:
            rev = [(e, end, start) for e, start, end in reversed(walk)]
            k = next(i for i, (_, start, _) in enumerate(rev) if start == (0, first_slot))
            walk = rev
        walk = walk[k:] + walk[:k]
        ids = []
        for e, start, end in walk:
            ids.append(len(edges))
            edges.append(Edge(len(edges), curve, start, end, e.sign))
        cycles[curve] = tuple(ids)
    return SignedOverlay(ov.crossings, tuple(edges), cycles[A], cycles[B])


def _variants(inst: Instance) -> Iterator[Instance]:
    """Every normalized relabelling of ``inst``: start and direction of each curve, and a global flip."""
    ov = inst.overlay
    m = ov.crossings
    if m == 0:
        yield inst
        return
    walk = ov.walk(A)
    for start in range(m):
        for forward in (True, False):
            vmap = [0] * m
            perms = [IDENTITY] * m
            for i in range(m):
                e, s, t = walk[(start + i) % m] if forward else walk[(start - i) % m]
                v, out = (s if forward else t)
                vmap[v] = i
                perms[v] = IDENTITY if out == 2 else ROTATE2
            moved = normalize_signs(transform(inst, vmap, perms))
            for flip in (False, True):
                flipped = flip_vertices(moved, range(m)) if flip else moved
                for b_slot in (1, 3):
                    new_ov = _reorder_edges(flipped.overlay, b_slot)
                    yield Instance(new_ov, flipped.caps, inst.facts)


def canonical_form(inst: Instance) -> Instance:
    """The relabelling with the smallest serialization."""
    return min(_variants(inst), key=serialize)


def canonical_key(inst: Instance) -> str:
    return serialize(canonical_form(Instance(inst.overlay, inst.caps)))


def _face_permutations(inst: Instance) -> list[dict[int, int]]:
    """Face maps induced by the relabellings that fix ``inst``'s overlay."""
    faces = inst.faces.ids
    tagged = inst.with_caps({f: Cap("PuncturedDisk", (i + 1,)) for i, f in enumerate(faces)})
    target = serialize(Instance(inst.overlay))
    out = []
    for var in _variants(tagged):
        if serialize(Instance(var.overlay)) != target:
            continue
        out.append({faces[cap.params[0] - 1]: f for f, cap in var.caps})
    return out


@dataclass(frozen=True)
class Filters:
    connected: bool = True
    minimal: bool = True
    a_two_sided: bool = True
    b_two_sided: bool = True
    generic: bool = True

    def accept(self, inst: Instance) -> bool:
        ov = inst.overlay
        if self.a_two_sided and ov.sign_product(A) < 0:
            return False
        if self.b_two_sided and ov.sign_product(B) < 0:
            return False
        if inst.m == 0:
            # disjoint loops do not determine a connected surface
            return not self.connected
        if self.minimal and find_bigon(inst) is not None:
            return False
        if self.generic and not (is_generic(inst, A) and is_generic(inst, B)):
            return False
        return True


NO_FILTERS = Filters(False, False, False, False, False)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    instance: Instance
    provenance: str
    status: str = "valid"

    @cached_property
    def gamma(self) -> Gamma:
        return build_gamma(self.instance)

    @cached_property
    def kind(self) -> SurfaceKind:
        return classify_ambient(self.instance)


def canonical_overlays(m: int) -> list[SignedOverlay]:
    """All overlays with ``m`` crossings up to relabelling and re-signing."""
    if m == 0:
        return [build_overlay(0, (), (), loops=ls) for ls in itertools.product((1, -1), repeat=2)]
    seen = {}
    for rest in itertools.permutations(range(1, m)):
        perm = (0, *rest)
        for exits in itertools.product((1, 3), repeat=m):
            for sa in (1, -1):
                for bs in itertools.product((1, -1), repeat=m):
                    inst = Instance(build_overlay(m, perm, exits, sa, bs))
                    key = canonical_key(inst)
                    if key not in seen:
                        seen[key] = canonical_form(inst).overlay
    return [seen[k] for k in sorted(seen)]


def enumerate_instances(max_crossings: int = 1, filters: Filters = Filters(),
                        menu: tuple[Cap, ...] = MENU, min_crossings: int = 0,
                        bound: int = DEFAULT_MAX) -> Iterator[CorpusEntry]:
    """Every instance with at most ``max_crossings`` crossings and caps from ``menu``, once each."""
    if max_crossings > bound:
        raise ValueError(f"enumeration is bounded by {bound} crossings")
    for m in range(min_crossings, max_crossings + 1):
        for i, ov in enumerate(canonical_overlays(m)):
            if m == 0:
                inst = Instance(ov)
                if filters.accept(inst):
                    yield CorpusEntry(f"m0-{i}", inst, "enumerated")
                continue
            base = make_instance(ov)
            if filters.a_two_sided and ov.sign_product(A) < 0:
                continue
            if filters.b_two_sided and ov.sign_product(B) < 0:
                continue
            faces = base.faces.ids
            symmetries = _face_permutations(base)
            for choice in itertools.product(range(len(menu)), repeat=len(faces)):
                assign = dict(zip(faces, choice))
                # keep only the smallest assignment in each symmetry orbit
                if any(tuple(assign[p[f]] for f in faces) < choice for p in symmetries):
                    continue
                inst = base.with_caps({f: menu[c] for f, c in assign.items()})
                if filters.accept(inst):
                    tag = "".join(map(str, choice))
                    yield CorpusEntry(f"m{m}-{i}-{tag}", inst, "enumerated")


def resolve(path: str | Path) -> Path:
    """``path`` itself if it exists, else the golden file of the same name."""
    path = Path(path)
    if path.exists():
        return path
    fallback = golden_dir() / path.name
    return fallback if fallback.exists() else path


def load_goldens(directory: str | Path | None = None) -> dict[str, CorpusEntry]:
    directory = Path(directory) if directory else golden_dir()
    out = {}
    for path in sorted(directory.glob("*.sp")):
        inst = load(path)
        figure = next((f.split(" ", 1)[1] for f in inst.facts if f.startswith("figure ")), path.stem)
        out[path.stem] = CorpusEntry(path.stem, inst, f"golden:{figure}")
    if not out:
        raise OverlayError(f"no golden instances found in {directory}")
    return out
