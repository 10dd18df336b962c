"""Replay every catalog claim.  A failing PAPER claim means the stated value
disagrees with the exact computation; DERIVED failures mean oracle drift."""

import pytest

from homlie.algebra import validate
from homlie.actions import validate_action
from homlie.catalog import TAGS, catalog_get, catalog_list, run_fixture
from homlie.errors import UnknownFixture


def _claims():
    for name in catalog_list():
        for c in catalog_get(name).claims:
            yield pytest.param(name, c.id, id=f"{name}:{c.tag}:{c.id}")


@pytest.mark.parametrize("fixture,claim_id", list(_claims()))
def test_claim(fixture, claim_id):
    result = next(r for r in run_fixture_cached(fixture) if r.claim.id == claim_id)
    assert result.computed == result.claim.expected, (
        f"{result.claim.tag} claim at {result.claim.locus}: {result.claim.note}"
    )


_RESULTS = {}


def run_fixture_cached(name):
    if name not in _RESULTS:
        _RESULTS[name] = run_fixture(name)
    return _RESULTS[name]


@pytest.mark.parametrize("name", catalog_list())
def test_fixture_algebras_validate(name):
    doc = catalog_get(name).document
    for L in doc.algebras.values():
        assert validate(L).passed, L.name
    for act in doc.actions.values():
        assert validate_action(act).passed


def test_tags_and_unique_ids():
    for name in catalog_list():
        fx = catalog_get(name)
        ids = [c.id for c in fx.claims]
        assert len(ids) == len(set(ids)), name
        assert all(c.tag in TAGS for c in fx.claims)
        assert all(c.note for c in fx.claims if c.tag == "DERIVED"), name


def test_alias_and_parametric_names():
    assert catalog_get("F.engel2") is catalog_get("F.weak2")
    assert catalog_get("F.ab(7)").document.algebra("A7").dim == 7
    for bad in ("F.nope", "F.ab(x)", "F.ab(99)"):
        with pytest.raises(UnknownFixture):
            catalog_get(bad)


def test_fixtures_are_immutable():
    fx = catalog_get("F.heis3")
    with pytest.raises(AttributeError):
        fx.name = "other"
    with pytest.raises(TypeError):
        fx.claims[0] = None
