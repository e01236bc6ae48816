import pytest

from damage_lab.graphs import (FamilySpec, disjoint_union,
                               enumerate_nonisomorphic, family, parse_family)
from damage_lab.solver import damage_number
from damage_lab.theory import (Prediction, char_dmg2_is_1,
                               char_dmg2_is_nminus2, closed_form,
                               figure_wheel_claim, lower_bound, predicted,
                               recognize_family, union_value, upper_bound)


def _g(text):
    return family(parse_family(text))


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

def test_lower_bound_path5_cut_vertex():
    assert lower_bound(_g("path:5"), 2) == 2


def test_lower_bound_spread():
    for text in ("path:3", "cycle:3", "star:2", "complete:4"):
        assert lower_bound(_g(text), 2) >= 1


def test_lower_bound_saturated():
    assert lower_bound(_g("empty:3"), 5) == 1


def test_upper_bound_spider222():
    assert upper_bound(_g("spider:2,2,2"), 2) == 4


def test_upper_bound_k4_degree_rule():
    assert upper_bound(_g("complete:4"), 2) == 1


def test_upper_bound_p2_many_robbers():
    assert upper_bound(_g("path:2"), 5) == 0


def test_upper_bound_edgeless_union_split():
    # the union recurrence pins edgeless graphs tighter than n-1
    assert upper_bound(_g("empty:4"), 2) == 2
    assert upper_bound(_g("empty:1"), 3) == 0


def test_zero_robber_convention():
    assert lower_bound(_g("path:4"), 0) == 0
    assert upper_bound(_g("path:4"), 0) == 0


# ---------------------------------------------------------------------------
# union recurrence
# ---------------------------------------------------------------------------

def test_union_value_k2_k1():
    k2, k1 = _g("complete:2"), _g("empty:1")
    assert union_value(lambda t: 0, lambda t: 0, k2, k1, 2) == 1


def test_union_value_k2_k2():
    k2 = _g("complete:2")
    assert union_value(lambda t: 0, lambda t: 0, k2, k2, 2) == 2


def test_union_value_symmetric():
    g = _g("path:4")
    dmg = lambda t: damage_number(g, t).value
    left_first = union_value(dmg, dmg, g, g, 1)
    assert left_first == max(g.n, dmg(1))


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("spec,s,expected", [
    (FamilySpec.complete(6), 3, 3),
    (FamilySpec.spider(3, 2, 2), 2, 4),
    (FamilySpec.cycle(3), 2, 1),
    (FamilySpec.empty(5), 2, 2),
    (FamilySpec.empty(1), 7, 0),
    (FamilySpec.path(8), 3, 6),
    (FamilySpec.complete(3), 2, 1),    # routed to C3
    (FamilySpec.complete(2), 2, 0),    # routed to P2
    (FamilySpec.star(4), 2, 1),        # spider with unit legs
    (FamilySpec.star(4), 3, 2),
    (FamilySpec.spider(2, 2, 2), 4, 5),  # s > legs: n-2
])
def test_closed_form_values(spec, s, expected):
    assert closed_form(spec, s) == expected


@pytest.mark.parametrize("spec,s", [
    (FamilySpec.path(5), 1),      # one-robber paths are out of scope here
    (FamilySpec.cycle(5), 1),
    (FamilySpec.wheel(4), 2),
    (FamilySpec.threshold("vdd"), 2),
    (FamilySpec.spider(2, 2, 2), 1),
])
def test_closed_form_absent(spec, s):
    assert closed_form(spec, s) is None


# ---------------------------------------------------------------------------
# characterizations
# ---------------------------------------------------------------------------

def test_char_max_members():
    assert char_dmg2_is_nminus2(_g("path:7"))
    assert char_dmg2_is_nminus2(_g("cycle:4"))
    assert char_dmg2_is_nminus2(_g("empty:4"))
    three_k2 = disjoint_union(disjoint_union(_g("complete:2"), _g("complete:2")),
                              _g("complete:2"))
    assert char_dmg2_is_nminus2(three_k2)
    assert char_dmg2_is_nminus2(disjoint_union(_g("complete:2"), _g("empty:1")))


def test_char_max_nonmembers():
    assert not char_dmg2_is_nminus2(_g("spider:2,2,2"))
    assert not char_dmg2_is_nminus2(_g("empty:3"))
    assert not char_dmg2_is_nminus2(_g("complete:4"))
    assert not char_dmg2_is_nminus2(disjoint_union(_g("path:3"), _g("complete:2")))


def test_char_one_members():
    assert char_dmg2_is_1(_g("star:5"))
    assert char_dmg2_is_1(_g("complete:3"))
    assert char_dmg2_is_1(_g("empty:2"))
    assert char_dmg2_is_1(_g("threshold:vdidd"))


def test_char_one_nonmembers():
    assert not char_dmg2_is_1(_g("path:4"))
    assert not char_dmg2_is_1(_g("cycle:4"))
    assert not char_dmg2_is_1(_g("path:2"))
    assert not char_dmg2_is_1(_g("empty:3"))
    # threshold with two isolated vertices
    assert not char_dmg2_is_1(_g("threshold:vdii"))


# ---------------------------------------------------------------------------
# family recognition
# ---------------------------------------------------------------------------

def test_recognize_families():
    assert recognize_family(_g("path:6")) == FamilySpec.path(6)
    assert recognize_family(_g("cycle:5")) == FamilySpec.cycle(5)
    assert recognize_family(_g("complete:5")) == FamilySpec.complete(5)
    assert recognize_family(_g("empty:4")) == FamilySpec.empty(4)
    assert recognize_family(_g("spider:3,2,1")) == FamilySpec.spider(3, 2, 1)
    assert recognize_family(_g("star:4")) == FamilySpec.spider(1, 1, 1, 1)
    assert recognize_family(_g("wheel:4")) is None


def test_recognition_is_label_independent():
    g = _g("spider:2,2,1").relabel([5, 3, 0, 1, 2, 4])
    assert recognize_family(g) == FamilySpec.spider(2, 2, 1)


# ---------------------------------------------------------------------------
# predictions
# ---------------------------------------------------------------------------

def test_predicted_path6_exact():
    pred = predicted(_g("path:6"), 3)
    assert pred.exact == 4


def test_predicted_wheel_claim_recorded():
    pred = predicted(_g("wheel:4"), 3)
    assert pred.lo >= 2
    assert "figure-wheel-claim" in pred.sources
    assert figure_wheel_claim(_g("wheel:4"), 3) == 1
    assert figure_wheel_claim(_g("wheel:4"), 2) is None
    assert figure_wheel_claim(_g("cycle:5"), 3) is None


def test_predicted_k1_exact_zero():
    pred = predicted(_g("empty:1"), 1)
    assert pred.exact == 0


def test_predicted_prefers_characterization_tightening():
    # C6 with a chord is neither a path/cycle nor threshold-like
    pred = predicted(_g("complete:4"), 2)
    assert pred.exact == 1


def test_prediction_validation():
    with pytest.raises(ValueError):
        Prediction(lo=2, hi=1, exact=None, sources=())
    with pytest.raises(ValueError):
        Prediction(lo=1, hi=2, exact=1, sources=())


def test_predicted_intervals_hold_on_census():
    for n in range(1, 6):
        for g in enumerate_nonisomorphic(n):
            for s in (1, 2):
                value = damage_number(g, s).value
                pred = predicted(g, s)
                assert pred.contains(value), (n, s)
                if pred.exact is not None:
                    assert value == pred.exact


def test_prediction_serialization():
    obj = predicted(_g("path:6"), 3).to_json_obj()
    assert obj["exact"] == 4 and obj["lo"] == 4 and obj["hi"] == 4
    assert any("closed-form" in tag for tag in obj["sources"])
