import json

import pytest
from hypothesis import given, settings

from amplekit.constructions import band_sphere, csaszar
from amplekit.core import SimplicialComplex
from amplekit.errors import InvalidFacet
from amplekit.io import (ComplexFile, canonical_text, digest, format_json, format_text,
                         parse_json, parse_text, read_complex, write_complex)
from test_core import complexes


def test_text_format_basics():
    cf = parse_text("# name: tri\n# a comment\nc b a\n\nb a\n")
    assert cf.name == "tri"
    assert cf.complex == SimplicialComplex.from_facets([["a", "b", "c"]])
    assert format_text(cf) == "# name: tri\na b c\n"


def test_malformed_inputs():
    with pytest.raises(InvalidFacet):
        parse_text("a a\n")
    with pytest.raises((ValueError, KeyError)):
        parse_json('{"facets": [["a", ""]]}')
    with pytest.raises(ValueError):
        parse_json("not json")


def test_json_is_sorted_and_stable():
    cf = ComplexFile(band_sphere(3, 0), "m30", {"note": "x"})
    text = format_json(cf)
    assert text == format_json(parse_json(text))
    data = json.loads(text)
    assert data["facets"] == sorted(data["facets"])
    assert parse_json(text).metadata == {"note": "x"}


def test_digest_is_sha256_of_canonical_text():
    import hashlib
    K = csaszar()
    assert digest(K) == hashlib.sha256(canonical_text(K).encode()).hexdigest()
    assert len(digest(K)) == 64


@settings(max_examples=50, deadline=None)
@given(complexes())
def test_round_trips(K):
    cf = ComplexFile(K, "k")
    assert parse_text(format_text(cf)).complex == K
    assert parse_json(format_json(cf)).complex == K
    assert format_text(parse_json(format_json(cf))) == format_text(cf)


def test_file_io(tmp_path):
    cf = ComplexFile(csaszar(), "csaszar-torus")
    for name in ("c.txt", "c.json"):
        write_complex(cf, tmp_path / name)
        back = read_complex(tmp_path / name)
        assert back.complex == cf.complex and back.name == cf.name
