"""Caps: the surface pieces glued onto the faces of an overlay."""

from __future__ import annotations

from dataclasses import dataclass

KINDS = ("PlainDisk", "PuncturedDisk", "BoundaryAnnulus", "Moebius", "Generic")
_ARITY = {"PlainDisk": 0, "PuncturedDisk": 1, "BoundaryAnnulus": 0, "Moebius": 1, "Generic": 4}


class CapError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Cap:
    """A compact surface with one distinguished boundary circle.

    ``params`` depends on ``kind``: PuncturedDisk(punctures), Moebius(punctures),
    Generic(crosscaps, handles, punctures, boundaries).
    """

    kind: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in _ARITY:
            raise CapError(f"unknown cap kind {self.kind!r}")
        if len(self.params) != _ARITY[self.kind]:
            raise CapError(f"{self.kind} takes {_ARITY[self.kind]} parameter(s)")
        if any(p < 0 for p in self.params):
            raise CapError("cap parameters must be nonnegative")
        if self.kind == "PuncturedDisk" and self.params[0] < 1:
            raise CapError("PuncturedDisk needs at least one puncture")

    @property
    def crosscaps(self) -> int:
        if self.kind == "Moebius":
            return 1
        return self.params[0] if self.kind == "Generic" else 0

    @property
    def handles(self) -> int:
        return self.params[1] if self.kind == "Generic" else 0

    @property
    def punctures(self) -> int:
        if self.kind in ("PuncturedDisk", "Moebius"):
            return self.params[0]
        return self.params[2] if self.kind == "Generic" else 0

    @property
    def boundaries(self) -> int:
        if self.kind == "BoundaryAnnulus":
            return 1
        return self.params[3] if self.kind == "Generic" else 0

    @property
    def chi(self) -> int:
        # the glued boundary circle does not count
        return 1 - self.crosscaps - 2 * self.handles - self.boundaries

    @property
    def orientable(self) -> bool:
        return self.crosscaps == 0

    @property
    def is_plain_disk(self) -> bool:
        return self.chi == 1 and self.punctures == 0

    def __str__(self):
        return " ".join([self.kind, *map(str, self.params)])


PLAIN = Cap("PlainDisk")


def make_cap(crosscaps=0, handles=0, punctures=0, boundaries=0) -> Cap:
    """Simplest cap with the given topology."""
    if crosscaps:
        crosscaps, handles = crosscaps + 2 * handles, 0
    if (crosscaps, handles, boundaries) == (0, 0, 0):
        return Cap("PuncturedDisk", (punctures,)) if punctures else PLAIN
    if (crosscaps, handles, punctures, boundaries) == (0, 0, 0, 1):
        return Cap("BoundaryAnnulus")
    if (crosscaps, handles, boundaries) == (1, 0, 0):
        return Cap("Moebius", (punctures,))
    return Cap("Generic", (crosscaps, handles, punctures, boundaries))


def boundary_sum(*caps: Cap, extra_crosscaps: int = 0) -> Cap:
    """Cap obtained by joining several caps along arcs of their boundaries."""
    return make_cap(
        sum(c.crosscaps for c in caps) + extra_crosscaps,
        sum(c.handles for c in caps),
        sum(c.punctures for c in caps),
        sum(c.boundaries for c in caps),
    )


def parse_cap(tokens: list[str]) -> Cap:
    if not tokens:
        raise CapError("missing cap kind")
    try:
        params = tuple(int(t) for t in tokens[1:])
    except ValueError:
        raise CapError(f"non-integer cap parameter in {' '.join(tokens)!r}") from None
    return Cap(tokens[0], params)


# The finite menu used by the enumerator.
MENU = (
    PLAIN,
    Cap("PuncturedDisk", (1,)),
    Cap("PuncturedDisk", (2,)),
    Cap("BoundaryAnnulus"),
    Cap("Moebius", (0,)),
    Cap("Generic", (1, 0, 0, 0)),
    Cap("Generic", (0, 1, 0, 0)),
)
