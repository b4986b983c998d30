import pytest

from bicliques import fileio
from bicliques.core import BicliqueCertificate, InputError


INTERVAL_TEXT = """\
# sample instance
I 0 0 1 1
I 1 1/2 3/2 1
I 2 -2 7/3 2
"""

SUBTREE_TEXT = """\
T 4
E 0 1
E 0 2
E 0 3
S 0 1 : 1
S 1 2 : 0 1 2
"""


def test_interval_round_trip():
    fam = fileio.parse_interval_family(INTERVAL_TEXT)
    assert len(fam.members) == 3
    again = fileio.parse_interval_family(fileio.format_interval_family(fam))
    assert again == fam


def test_interval_bad_rational():
    with pytest.raises(InputError):
        fileio.parse_interval_family("I 0 zero 1\n")


def test_subtree_round_trip():
    fam = fileio.parse_subtree_family(SUBTREE_TEXT)
    assert fam.ambient.n == 4
    assert fam.by_id()[1].part == 2
    again = fileio.parse_subtree_family(fileio.format_subtree_family(fam))
    assert again == fam


def test_subtree_missing_header():
    with pytest.raises(InputError):
        fileio.parse_subtree_family("E 0 1\nS 0 : 0\n")


def test_certificate_round_trip():
    cert = BicliqueCertificate("complete", (3, 1), (2,))
    text = fileio.format_certificate(cert)
    assert text == "BICLIQUE kind=complete\nA: 1 3\nB: 2\n"
    assert fileio.parse_certificate(text) == cert


def test_certificate_empty_sides():
    cert = BicliqueCertificate("empty", (), ())
    assert fileio.parse_certificate(fileio.format_certificate(cert)) == cert


def test_edge_list_round_trip():
    g = fileio.parse_edge_list("G 3\nE 0 1\nE 1 2\n")
    assert g.n == 3 and len(g.edges) == 2
    assert fileio.parse_edge_list(fileio.format_edge_list(g)) == g


def test_partition_lines():
    p = fileio.parse_partition_lines("P 0 1\nP 1 2\n# done\n")
    assert p.part1() == frozenset({0}) and p.part2() == frozenset({1})
    assert fileio.parse_partition_lines("# nothing\n") is None


def test_sniff_format():
    assert fileio.sniff_format(INTERVAL_TEXT) == "interval"
    assert fileio.sniff_format(SUBTREE_TEXT) == "subtree"
    assert fileio.sniff_format("(U 0 1)\n") == "cotree"
    assert fileio.sniff_format("G 2\n") == "graph"
    with pytest.raises(InputError):
        fileio.sniff_format("")
