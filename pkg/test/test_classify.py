import pytest

from conftest import random_complete_2d_fan, random_incomplete_2d_fan, random_indexed_2d_fan
from fank import catalog
from fank.classify import (
    DISTANT,
    PLANAR_INCOMPLETE,
    PLANAR_NOT_SPANNING,
    PLANAR_SPANNING,
    SMOOTH,
    classify,
    cokernel_rank_window,
    distant_decomposition,
    fwps_weights,
    odd_k1_rank,
    splitting_surjectivity,
)
from fank.errors import DimensionMismatch, NotFwps, Unsupported
from fank.geometry.fan import is_smooth_fan
from fank.geometry.planar import all_splittings
from fank.linalg.lattice import spans_ambient
from fank.records import Outcome


@pytest.mark.parametrize("name, r, outcome, theorem", [
    ("hirzebruch-r", 1, Outcome.ISOMORPHIC, SMOOTH),
    ("hirzebruch-r", 2, Outcome.ISOMORPHIC, SMOOTH),
    ("hirzebruch-r", 3, Outcome.ISOMORPHIC, SMOOTH),
    ("p2", 1, Outcome.ISOMORPHIC, SMOOTH),
    ("wps-1-1-2", 1, Outcome.ISOMORPHIC, DISTANT),
    ("wps-2-3-5", 1, Outcome.ISOMORPHIC, PLANAR_SPANNING),
    ("fake-p2", 1, Outcome.NOT_ISOMORPHIC, PLANAR_NOT_SPANNING),
    ("pyramid", 1, Outcome.ISOMORPHIC, DISTANT),
    ("simplicial-distant", 1, Outcome.ISOMORPHIC, DISTANT),
    ("two-distant", 1, Outcome.ISOMORPHIC, DISTANT),
    ("gt-flag3", 1, Outcome.ISOMORPHIC, DISTANT),
    ("isolated-not-distant", 1, Outcome.UNKNOWN, "none"),
])
def test_catalog_verdicts(name, r, outcome, theorem):
    verdict = classify(catalog.build(name, r))
    assert verdict.outcome == outcome
    assert verdict.theorem == theorem
    if theorem != "none":
        assert verdict.justification[0] == theorem


def test_fake_p2_odd_rank():
    verdict = classify(catalog.build("fake-p2"))
    assert verdict.odd_rank == 2
    assert verdict.certificate["span_index"] == 3


def test_unknown_verdict_explains_itself():
    verdict = classify(catalog.build("isolated-not-distant"))
    assert "isolated but not distant" in verdict.explanation
    assert verdict.odd_rank is None


def test_incomplete_planar_fans_are_isomorphic(rng):
    for _ in range(20):
        verdict = classify(random_incomplete_2d_fan(rng))
        assert verdict.outcome == Outcome.ISOMORPHIC
        assert PLANAR_INCOMPLETE in verdict.justification


def test_distant_decomposition_of_pyramid():
    decomposition = distant_decomposition(catalog.build("pyramid"))
    assert decomposition.singular_part.cone_names == ("C1",)
    assert decomposition.smooth_part.cone_names == ("C2", "C3", "C4", "C5")
    assert len(decomposition.overlap.cone_names) == 4
    assert is_smooth_fan(decomposition.smooth_part)
    assert decomposition.overlap.is_subfan_of(decomposition.singular_part)


def test_distant_decomposition_refuses():
    with pytest.raises(Unsupported):
        distant_decomposition(catalog.build("isolated-not-distant"))


def test_odd_rank_needs_complete_planar_fan(rng):
    with pytest.raises(DimensionMismatch):
        odd_k1_rank(catalog.build("pyramid"))
    with pytest.raises(Unsupported):
        odd_k1_rank(random_incomplete_2d_fan(rng))


@pytest.mark.slow
def test_surjectivity_matches_span_index(rng):
    fans = [random_complete_2d_fan(rng) for _ in range(150)]
    fans += [random_indexed_2d_fan(rng, int(rng.integers(2, 5))) for _ in range(50)]
    for fan in fans:
        index = spans_ambient(fan.ray_vectors, 2).index
        answers = {splitting_surjectivity(fan, s) for s in all_splittings(fan)}
        assert answers == {index == 1}
        assert splitting_surjectivity(fan) == (odd_k1_rank(fan) == 0)
        expected = Outcome.ISOMORPHIC if index == 1 else Outcome.NOT_ISOMORPHIC
        assert classify(fan).outcome == expected


@pytest.mark.slow
@pytest.mark.parametrize("index", [2, 3, 4])
def test_cokernel_window(rng, index):
    for _ in range(7):
        fan = random_indexed_2d_fan(rng, index)
        assert odd_k1_rank(fan) == index - 1
        assert cokernel_rank_window(fan, 3) == index - 1


@pytest.mark.parametrize("index", [2, 3, 4])
def test_indexed_fans_keep_small_rays(rng, index):
    for _ in range(5):
        fan = random_indexed_2d_fan(rng, index)
        assert spans_ambient(fan.ray_vectors, 2).index == index
        assert all(abs(x) <= 5 for v in fan.ray_vectors for x in v)


def test_cokernel_window_of_spanning_fan():
    assert cokernel_rank_window(catalog.build("p2"), 2) == 0


def test_cokernel_window_sees_only_the_window():
    fan = catalog.build("fake-p2")
    # one exponent: only constants fit, so nothing is left over
    assert cokernel_rank_window(fan, 0) == 0
    for splitting in all_splittings(fan):
        assert cokernel_rank_window(fan, 2, splitting) == 2


def test_cokernel_window_needs_a_complete_fan(rng):
    with pytest.raises(Unsupported):
        cokernel_rank_window(random_incomplete_2d_fan(rng), 2)


@pytest.mark.parametrize("name, weights, genuine", [
    ("p2", (1, 1, 1), True),
    ("wps-1-1-2", (1, 1, 2), True),
    ("wps-2-3-5", (2, 3, 5), True),
    ("fake-p2", (1, 1, 1), False),
])
def test_fwps_weights(name, weights, genuine):
    data = fwps_weights(catalog.build(name))
    assert tuple(sorted(data.weights)) == weights
    assert data.is_genuine_wps == genuine


def test_fwps_refusals(rng):
    with pytest.raises(NotFwps):
        fwps_weights(catalog.build("hirzebruch-r", 1))
    with pytest.raises(NotFwps):
        fwps_weights(random_incomplete_2d_fan(rng))
