import pytest

from selfsim.graph import DuplicateName, EmptyGraph
from selfsim.specfmt import (SpecSyntaxError, UnknownIdentifier, emit_gpd, emit_spec,
                             parse_gpd, parse_spec, read_input)
from selfsim import finitegpd as fg

SPECS = ["example6.spec", "two_orbits.spec", "one_loop.spec", "odometer.spec",
         "not_pseudo_free.spec"]
GPDS = ["trivial.gpd", "units2.gpd", "pair2.gpd", "pair3.gpd", "pair4.gpd", "z2.gpd",
        "z3.gpd", "z2_flip_pair2.gpd", "transitive3_z2.gpd"]


@pytest.mark.parametrize("name", SPECS)
def test_spec_roundtrip(name):
    spec = parse_spec(read_input(name))
    text = emit_spec(spec)
    assert parse_spec(text) == spec
    assert emit_spec(parse_spec(text)) == text


@pytest.mark.parametrize("name", GPDS)
def test_gpd_roundtrip(name):
    G = parse_gpd(read_input(name))
    text = emit_gpd(G)
    H = parse_gpd(text)
    assert emit_gpd(H) == text
    assert fg.homology(G, 2) == fg.homology(H, 2)


def test_emit_constructed_groupoid():
    S, _ = fg.semidirect(fg.isotropy_bundle_conjugation(fg.transitive_groupoid(["1", "2"], fg.cyclic_group(2))))
    H = parse_gpd(emit_gpd(S))
    assert len(H) == len(S) and fg.homology(H, 2) == fg.homology(S, 2)


def test_empty_spec():
    with pytest.raises(EmptyGraph):
        parse_spec("")
    with pytest.raises(EmptyGraph):
        parse_spec("vertices: []\nedges: []\ngenerators: []\n")


def test_syntax_error_has_position():
    with pytest.raises(SpecSyntaxError) as exc:
        parse_spec("vertices: [u\nedges: []\n")
    assert exc.value.line is not None and exc.value.column is not None


def test_duplicates_and_unknowns():
    base = "vertices: [p]\nedges:\n  - [f, p, p]\n  - [f, p, p]\ngenerators: []\n"
    with pytest.raises(DuplicateName):
        parse_spec(base)
    with pytest.raises(UnknownIdentifier):
        parse_spec("vertices: [p]\nedges:\n  - [f, p, p]\ngenerators: []\ncocycle: {z: 1}\n")
    with pytest.raises(SpecSyntaxError):
        parse_spec("vertices: [p]\nfoo: 1\n")
