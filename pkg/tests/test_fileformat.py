import pytest
from hypothesis import given, settings

from dehntwist.corpus import canonical_form, golden_dir
from dehntwist.fileformat import ParseError, parse, serialize

from strategies import instances

BRAID = (golden_dir() / "braid.sp").read_text()


def test_braid_file_parses():
    inst = parse(BRAID)
    assert inst.m == 2
    assert "figure braid-pair" in inst.facts


def test_golden_files_are_canonical(goldens):
    for entry in goldens.values():
        text = (golden_dir() / f"{entry.name}.sp").read_text()
        assert serialize(parse(text)) == text
        assert serialize(canonical_form(entry.instance)) == text


def test_comments_and_blank_lines():
    text = "% header comment\n" + BRAID.replace("crossings 2", "crossings 2   % two points\n\n")
    assert parse(text) == parse(BRAID)


def error_line(text):
    with pytest.raises(ParseError) as info:
        parse(text)
    return info.value.line


def test_cap_on_missing_face_names_line():
    lines = BRAID.splitlines()
    at = next(i for i, l in enumerate(lines) if l.startswith("cap 3"))
    lines[at] = "cap 7 PlainDisk"
    assert error_line("\n".join(lines)) == at + 1


def test_unknown_cap_kind():
    lines = BRAID.splitlines()
    at = next(i for i, l in enumerate(lines) if l.startswith("cap 3"))
    lines[at] = "cap 3 Disk"
    assert error_line("\n".join(lines)) == at + 1


@pytest.mark.parametrize("bad, line", [
    ("surface-pair v2\n", 1),
    ("surface-pair v1\ncrossings 1\nedge 0 a 0.2 1.0 +\n", 3),
    ("surface-pair v1\ncrossings 1\nedge 0 a 0.2 0.0 *\n", 3),
    ("surface-pair v1\ncrossings 1\nbogus 1\n", 3),
    ("surface-pair v1\ncrossings 1\nedge 0 a 0.2 0.0 +\nedge 1 b 0.1 0.3 +\ncurve a: 0\ncurve b: 5\n", 6),
])
def test_syntax_errors(bad, line):
    assert error_line(bad) == line


def test_missing_cap():
    text = "\n".join(l for l in BRAID.splitlines() if not l.startswith("cap 3"))
    with pytest.raises(ParseError, match="no cap"):
        parse(text)


def test_loops_without_crossings():
    text = "surface-pair v1\ncrossings 0\nloop a +\nloop b -\n"
    inst = parse(text)
    assert inst.overlay.loop_signs == (1, -1)
    assert serialize(inst) == text


@settings(max_examples=80, deadline=None)
@given(instances())
def test_round_trip(inst):
    text = serialize(inst)
    again = parse(text)
    assert again == inst
    assert serialize(again) == text
