"""PMOD text format: round trips and the rejection corpus."""

from __future__ import annotations

import pytest

from gridpersist.ffmat import FieldSpec
from gridpersist.generators import example_module, make_rng, random_module, staircase_family_module
from gridpersist.grid import rank_invariant
from gridpersist.intervals import Interval
from gridpersist.pmod import PmodError, format_interval_function, format_signed_sum, parse_pmod, print_pmod

iv = Interval.from_string

GOOD = """\
PMOD 1
field 2
grid 2 2
dim 1 1 1
dim 1 2 1
dim 2 1 1
dim 2 2 1
map h 1 1
1
map h 2 1
1
map v 1 1
1
map v 1 2
1
END
"""


class TestRoundTrip:
    def test_parse_then_print_is_canonical(self):
        m = parse_pmod(GOOD)
        assert print_pmod(m) == GOOD

    def test_example_module(self):
        m = example_module()
        assert parse_pmod(print_pmod(m)).hmaps == m.hmaps

    @pytest.mark.parametrize("p", [2, 3, 251])
    def test_random_modules(self, p):
        rng = make_rng(60 + p)
        for n, d in [(1, 2), (3, 3), (5, 2)]:
            m = random_module(n, d, FieldSpec(p), rng)
            back = parse_pmod(print_pmod(m))
            assert back.dims == m.dims
            assert back.hmaps == m.hmaps and back.vmaps == m.vmaps
            assert back.field == m.field

    def test_zero_dimensional_blocks_omitted(self):
        m = staircase_family_module(1)
        text = print_pmod(m)
        assert "map h 2 4" not in text  # (2,4) -> (2,5) has zero target
        assert "map v 1 1" not in text  # (1,1) has dimension zero
        back = parse_pmod(text)
        assert rank_invariant(back) == rank_invariant(m)

    def test_comments_and_blank_lines_ignored(self):
        noisy = GOOD.replace("PMOD 1", "# leading comment\n\nPMOD 1  # trailing")
        assert print_pmod(parse_pmod(noisy)) == GOOD


def _replace_line(doc: str, old: str, new: str) -> str:
    assert old in doc
    return doc.replace(old, new)


REJECTS = [
    ("empty document", "", None),
    ("bad magic", _replace_line(GOOD, "PMOD 1", "PMOD 2"), 1),
    ("missing field", _replace_line(GOOD, "field 2\n", ""), 2),
    ("composite modulus", _replace_line(GOOD, "field 2", "field 6"), 2),
    ("modulus one", _replace_line(GOOD, "field 2", "field 1"), 2),
    ("huge modulus", _replace_line(GOOD, "field 2", "field 65537"), 2),
    ("bad grid arity", _replace_line(GOOD, "grid 2 2", "grid 2"), 3),
    ("zero grid", _replace_line(GOOD, "grid 2 2", "grid 0 2"), 3),
    ("dim arity", _replace_line(GOOD, "dim 1 1 1", "dim 1 1"), 4),
    ("dim outside grid", _replace_line(GOOD, "dim 2 2 1", "dim 3 2 1"), 7),
    ("duplicate dim", _replace_line(GOOD, "dim 1 2 1", "dim 1 1 1"), 5),
    ("map kind", _replace_line(GOOD, "map h 1 1", "map x 1 1"), 8),
    ("map off the grid", _replace_line(GOOD, "map h 2 1", "map h 2 2"), 10),
    ("map before dims", "PMOD 1\nfield 2\ngrid 1 2\nmap h 1 1\n1\nEND\n", 4),
    ("duplicate map", _replace_line(GOOD, "map v 1 2", "map h 1 1"), 14),
    ("bad entry token", _replace_line(GOOD, "map h 1 1\n1", "map h 1 1\nx"), 9),
    ("entry out of range", _replace_line(GOOD, "map h 1 1\n1", "map h 1 1\n2"), 9),
    ("negative entry", _replace_line(GOOD, "map h 1 1\n1", "map h 1 1\n-1"), 9),
    ("row too long", _replace_line(GOOD, "map h 1 1\n1", "map h 1 1\n1 0"), 9),
    ("truncated rows", _replace_line(GOOD, "map v 1 2\n1\nEND\n", "map v 1 2\nEND\n"), 15),
    ("unknown directive", _replace_line(GOOD, "map v 1 2", "spam v 1 2"), 14),
    ("content after END", GOOD + "dim 1 1 1\n", 17),
    ("missing vertex dim", _replace_line(GOOD, "dim 2 2 1\n", ""), None),
    ("missing map block", _replace_line(GOOD, "map v 1 2\n1\n", ""), None),
    (
        "zero-dim map block",
        "PMOD 1\nfield 2\ngrid 1 2\ndim 1 1 1\ndim 1 2 0\nmap h 1 1\n0\nEND\n",
        6,
    ),
]


class TestRejection:
    @pytest.mark.parametrize("label,doc,line", REJECTS, ids=[r[0] for r in REJECTS])
    def test_rejected_with_line(self, label, doc, line):
        with pytest.raises(PmodError) as err:
            parse_pmod(doc)
        if line is not None:
            assert err.value.line == line, str(err.value)

    def test_noncommuting_square_names_square(self):
        bad = _replace_line(GOOD, "map h 2 1\n1", "map h 2 1\n0")
        with pytest.raises(PmodError, match=r"square at \(1, 1\)"):
            parse_pmod(bad)


class TestOutputFormats:
    def test_interval_function_lines(self):
        f = {iv("1..1:[1,1]"): 2, iv("2..2:[1,2]"): -1, iv("1..1:[2,2]"): 0}
        assert format_interval_function(f) == "2 1..1:[1,1]\n-1 2..2:[1,2]\n"

    def test_empty_function(self):
        assert format_interval_function({}) == ""
        assert format_interval_function({iv("1..1:[1,1]"): 0}) == ""

    def test_signed_sum_header(self):
        text = format_signed_sum({iv("1..2:[2,3];[1,2]"): -1})
        assert text == "APPROX ss\n-1 1..2:[2,3];[1,2]\n"
