"""Plain-text instance files.

    surface-pair v1
    crossings 2
    edge 0 a 0.2 1.0 +
    curve a: 0 1
    cap 0 BoundaryAnnulus
    facts:
    - figure braid-pair

``%`` starts a comment. With no crossings, ``loop a +`` lines give the sidedness
of each free curve.
"""

from __future__ import annotations

from pathlib import Path

from .caps import CapError, parse_cap
from .overlay import A, B, CURVES, Edge, Instance, OverlayError, SignedOverlay, trace_faces, validate_overlay

HEADER = "surface-pair v1"


class ParseError(OverlayError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _end(token: str, line: int) -> tuple[int, int]:
    try:
        v, s = token.split(".")
        return int(v), int(s)
    except ValueError:
        raise ParseError(line, f"bad endpoint {token!r}, expected <crossing>.<slot>") from None


def _sign(token: str, line: int) -> int:
    if token not in ("+", "-"):
        raise ParseError(line, f"bad sign {token!r}")
    return 1 if token == "+" else -1


def parse(text: str) -> Instance:
    lines = text.splitlines()
    body = []
    for no, raw in enumerate(lines, 1):
        line = raw.split("%", 1)[0].strip()
        if line:
            body.append((no, line))
    if not body or body[0][1] != HEADER:
        raise ParseError(body[0][0] if body else 1, f"expected header {HEADER!r}")

    m = None
    edges: dict[int, tuple[Edge, int]] = {}
    cycles: dict[str, tuple[tuple[int, ...], int]] = {}
    caps: dict[int, tuple[object, int]] = {}
    loops = {A: 1, B: 1}
    facts: list[str] = []
    in_facts = False
    for no, line in body[1:]:
        if in_facts:
            if not line.startswith("-"):
                raise ParseError(no, "fact lines must start with '-'")
            facts.append(line[1:].strip())
            continue
        words = line.split()
        key = words[0]
        if key == "facts:":
            in_facts = True
        elif key == "crossings":
            if m is not None:
                raise ParseError(no, "crossing count given twice")
            if len(words) != 2 or not words[1].isdigit():
                raise ParseError(no, "expected 'crossings <m>'")
            m = int(words[1])
        elif key == "edge":
            if len(words) != 6:
                raise ParseError(no, "expected 'edge <id> <a|b> <v>.<slot> <v>.<slot> <+|->'")
            try:
                eid = int(words[1])
            except ValueError:
                raise ParseError(no, f"bad edge id {words[1]!r}") from None
            if words[2] not in CURVES:
                raise ParseError(no, f"unknown curve {words[2]!r}")
            if eid in edges:
                raise ParseError(no, f"edge {eid} defined twice")
            tail, head = _end(words[3], no), _end(words[4], no)
            for v, s in (tail, head):
                if m is None or not 0 <= v < m or not 0 <= s < 4:
                    raise ParseError(no, f"endpoint {v}.{s} out of range")
            edges[eid] = (Edge(eid, words[2], tail, head, _sign(words[5], no)), no)
        elif key == "curve":
            name = words[1].rstrip(":") if len(words) > 1 else ""
            if name not in CURVES or not words[1].endswith(":"):
                raise ParseError(no, "expected 'curve <a|b>: <edge ids>'")
            try:
                ids = tuple(int(w) for w in words[2:])
            except ValueError:
                raise ParseError(no, "edge ids must be integers") from None
            cycles[name] = (ids, no)
        elif key == "cap":
            if len(words) < 3:
                raise ParseError(no, "expected 'cap <faceId> <kind> [params]'")
            try:
                fid = int(words[1])
                cap = parse_cap(words[2:])
            except (ValueError, CapError) as exc:
                raise ParseError(no, str(exc)) from None
            if fid in caps:
                raise ParseError(no, f"face {fid} capped twice")
            caps[fid] = (cap, no)
        elif key == "loop":
            if len(words) != 3 or words[1] not in CURVES:
                raise ParseError(no, "expected 'loop <a|b> <+|->'")
            loops[words[1]] = _sign(words[2], no)
        else:
            raise ParseError(no, f"unknown directive {key!r}")
    if m is None:
        raise ParseError(body[-1][0], "missing 'crossings' line")

    for curve in CURVES:
        ids, no = cycles.get(curve, ((), body[-1][0]))
        for eid in ids:
            if eid not in edges:
                raise ParseError(no, f"curve {curve} refers to unknown edge {eid}")
            if edges[eid][0].curve != curve:
                raise ParseError(no, f"edge {eid} belongs to curve {edges[eid][0].curve}")
    ov = SignedOverlay(m, tuple(e for e, _ in sorted(edges.values(), key=lambda x: x[0].id)),
                       cycles.get(A, ((), 0))[0], cycles.get(B, ((), 0))[0],
                       (loops[A], loops[B]) if m == 0 else (1, 1))
    report = validate_overlay(ov)
    if not report.ok:
        first = min((no for _, no in edges.values()), default=body[0][0])
        raise ParseError(first, f"invalid overlay: {report}")
    face_ids = set(trace_faces(ov).ids)
    for fid, (_, no) in caps.items():
        if fid not in face_ids:
            raise ParseError(no, f"cap for face {fid}, which does not exist (faces: {sorted(face_ids)})")
    missing = sorted(face_ids - set(caps))
    if missing:
        raise ParseError(body[-1][0], f"faces {missing} have no cap")
    return Instance(ov, tuple(sorted((f, c) for f, (c, _) in caps.items())), tuple(facts))


def serialize(inst: Instance) -> str:
    ov = inst.overlay
    out = [HEADER, f"crossings {ov.crossings}"]
    for e in sorted(ov.edges, key=lambda e: e.id):
        sign = "+" if e.sign > 0 else "-"
        out.append(f"edge {e.id} {e.curve} {e.tail[0]}.{e.tail[1]} {e.head[0]}.{e.head[1]} {sign}")
    if ov.crossings:
        for curve in CURVES:
            out.append(f"curve {curve}: " + " ".join(map(str, ov.cycle(curve))))
    else:
        for curve, sign in zip(CURVES, ov.loop_signs):
            out.append(f"loop {curve} {'+' if sign > 0 else '-'}")
    for fid, cap in inst.caps:
        out.append(f"cap {fid} {cap}")
    if inst.facts:
        out.append("facts:")
        out.extend(f"- {f}" for f in inst.facts)
    return "\n".join(out) + "\n"


def load(path: str | Path) -> Instance:
    return parse(Path(path).read_text(encoding="utf-8"))


def dump(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(serialize(inst), encoding="utf-8")
