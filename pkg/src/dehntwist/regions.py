"""Complementary regions that may be bounded by several face walks.

A capped instance gives every face its own region. Removing bigons can glue
regions together so that one region is bounded by two or more walks; a
:class:`Complex` keeps track of that. For an orientable region we store, for
each of its walks, the sign ``rho`` such that the region's orientation at any
step of the walk equals ``rho * sigma`` times the local orientation of the
crossing (``sigma`` being the step's state).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .caps import Cap, make_cap
from .overlay import FaceStructure, Instance, OverlayError, SignedOverlay, trace_faces


@dataclass(frozen=True)
class Region:
    walks: tuple[int, ...]
    chi: int
    punctures: int
    boundaries: int
    orientable: bool
    rho: tuple[int, ...] = ()

    @property
    def is_plain_disk(self) -> bool:
        return len(self.walks) == 1 and self.chi == 1 and self.punctures == 0

    def cap(self) -> Cap:
        if len(self.walks) != 1:
            raise OverlayError(f"region bounded by {len(self.walks)} walks has no single cap")
        g = 1 - self.chi - self.boundaries
        if self.orientable:
            return make_cap(0, g // 2, self.punctures, self.boundaries)
        return make_cap(g, 0, self.punctures, self.boundaries)

    def rho_of(self, walk: int) -> int:
        return self.rho[self.walks.index(walk)] if self.orientable else 1


def region_from_cap(face: int, cap: Cap) -> Region:
    return Region((face,), cap.chi, cap.punctures, cap.boundaries, cap.orientable,
                  (1,) if cap.orientable else ())


@dataclass(frozen=True)
class Complex:
    overlay: SignedOverlay
    regions: tuple[Region, ...]
    facts: tuple[str, ...] = ()

    @property
    def m(self) -> int:
        return self.overlay.crossings

    @cached_property
    def faces(self) -> FaceStructure:
        return trace_faces(self.overlay)

    @cached_property
    def region_of(self) -> dict[int, Region]:
        return {w: r for r in self.regions for w in r.walks}

    @property
    def is_cellular(self) -> bool:
        return all(len(r.walks) == 1 for r in self.regions)

    def to_instance(self) -> Instance:
        caps = {r.walks[0]: r.cap() for r in self.regions}
        return Instance(self.overlay, tuple(sorted(caps.items())), self.facts)


def as_complex(obj: Instance | Complex) -> Complex:
    if isinstance(obj, Complex):
        return obj
    regions = tuple(region_from_cap(f, c) for f, c in obj.caps)
    return Complex(obj.overlay, regions, obj.facts)
