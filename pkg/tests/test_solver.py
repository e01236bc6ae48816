import pytest
from hypothesis import given, settings

from damage_lab.engine import StateCapExceeded, solve_game
from damage_lab.graphs import (FamilySpec, disjoint_union,
                               enumerate_nonisomorphic, family, write_graph6)
from damage_lab.oracle import oracle_damage_number, oracle_state_value
from damage_lab.rules import GameState, Phase, place_robbers
from damage_lab.solver import (damage_number, extract_policies, game_value,
                               verify_policy_value)
from damage_lab.theory import lower_bound, upper_bound

from .strategies import graphs_with_permutation


def _placed(g, cop, placement):
    pre = GameState(cop=cop, robbers=(), undamaged=(1 << g.n) - 1,
                    phase=Phase.ROBBERS_TO_PLACE, pending=len(placement))
    return place_robbers(g, pre, tuple(placement))


# ---------------------------------------------------------------------------
# damage_number on known families
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("fam,s,expected", [
    ("cycle:5", 2, 3),
    ("complete:5", 2, 1),
    ("spider:2,2,2", 2, 3),
    ("empty:5", 2, 2),
    ("path:5", 2, 3),
    ("path:2", 1, 0),
    ("complete:4", 3, 2),
    ("empty:1", 1, 0),
])
def test_damage_number_examples(fam, s, expected):
    from damage_lab.graphs import parse_family
    g = family(parse_family(fam))
    result = damage_number(g, s)
    assert result.value == expected


def test_damage_number_reports_lex_least_start():
    g = family(FamilySpec.path(5))
    assert damage_number(g, 2).best_cop_start == 0


def test_damage_number_rejects_zero_robbers():
    with pytest.raises(ValueError):
        damage_number(family(FamilySpec.path(3)), 0)


def test_iteration_budget_is_respected():
    g = family(FamilySpec.cycle(6))
    result = damage_number(g, 2)
    assert result.iterations <= (g.n + 1) * result.states_explored


# ---------------------------------------------------------------------------
# game_value
# ---------------------------------------------------------------------------

def test_game_value_no_robbers():
    g = family(FamilySpec.path(3))
    st = GameState(cop=1, robbers=(), undamaged=0b111, phase=Phase.COP_TO_MOVE)
    assert game_value(g, st) == 0


def test_game_value_all_damaged():
    g = family(FamilySpec.path(3))
    st = GameState(cop=1, robbers=(0, 2), undamaged=0, phase=Phase.COP_TO_MOVE)
    assert game_value(g, st) == 0


def test_game_value_placement_states_match_damage_number():
    g = family(FamilySpec.path(3))
    placement_values = []
    for cop in range(g.n):
        st = GameState(cop=cop, robbers=(), undamaged=0b111,
                       phase=Phase.ROBBERS_TO_PLACE, pending=2)
        placement_values.append(game_value(g, st))
    assert min(placement_values) == damage_number(g, 2).value == 1


def test_game_value_rejects_unresolved_capture():
    g = family(FamilySpec.path(3))
    st = GameState(cop=1, robbers=(1,), undamaged=0b111, phase=Phase.COP_TO_MOVE)
    with pytest.raises(ValueError):
        game_value(g, st)


# ---------------------------------------------------------------------------
# policies
# ---------------------------------------------------------------------------

def test_policies_protect_p2():
    g = family(FamilySpec.path(2))
    assert verify_policy_value(g, 1, extract_policies(g, 1)) == 0


def test_policies_k4_capture_chain():
    g = family(FamilySpec.complete(4))
    assert verify_policy_value(g, 2, extract_policies(g, 2)) == 1


def test_policy_roundtrip_census_n4():
    for n in range(1, 5):
        for g in enumerate_nonisomorphic(n):
            expected = damage_number(g, 2).value
            assert verify_policy_value(g, 2, extract_policies(g, 2)) == expected


def test_degenerate_simulation_value():
    g = family(FamilySpec.empty(1))
    assert verify_policy_value(g, 1, extract_policies(g, 1)) == 0


# ---------------------------------------------------------------------------
# cross-checks
# ---------------------------------------------------------------------------

def test_oracle_matches_engine_on_small_census():
    for n in range(1, 5):
        for g in enumerate_nonisomorphic(n):
            for s in (1, 2):
                assert oracle_damage_number(g, s) == damage_number(g, s).value, \
                    write_graph6(g)


def test_oracle_state_value_terminal():
    g = family(FamilySpec.path(3))
    st = GameState(cop=1, robbers=(), undamaged=0b111, phase=Phase.COP_TO_MOVE)
    assert oracle_state_value(g, st) == 0


@settings(max_examples=40, deadline=None)
@given(graphs_with_permutation(max_vertices=5))
def test_damage_number_is_isomorphism_invariant(case):
    g, perm = case
    assert damage_number(g.relabel(perm), 2).value == damage_number(g, 2).value


def test_more_robbers_never_hurt():
    for n in range(1, 5):
        for g in enumerate_nonisomorphic(n):
            assert damage_number(g, 1).value <= damage_number(g, 2).value \
                <= damage_number(g, 3).value


def test_bounds_sandwich_small():
    for n in range(1, 5):
        for g in enumerate_nonisomorphic(n):
            for s in (1, 2):
                value = damage_number(g, s).value
                assert lower_bound(g, s) <= value <= upper_bound(g, s)


def test_union_decomposition_matches_solver():
    parts = [family(FamilySpec.path(3)), family(FamilySpec.complete(2))]
    g = disjoint_union(*parts)
    from damage_lab.theory import union_value
    expected = union_value(lambda t: damage_number(parts[0], t).value,
                           lambda t: damage_number(parts[1], t).value,
                           parts[0], parts[1], 2)
    assert damage_number(g, 2).value == expected


# ---------------------------------------------------------------------------
# resource cap
# ---------------------------------------------------------------------------

def test_state_cap_exceeded():
    g = family(FamilySpec.path(6))
    with pytest.raises(StateCapExceeded):
        damage_number(g, 2, state_cap=1000)


def test_solve_game_memoizes():
    g = family(FamilySpec.path(4))
    assert solve_game(g, 2) is solve_game(g, 2)
