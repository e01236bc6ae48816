"""Exact damage numbers, game values, and optimal policy extraction.

damage_number computes dmg(G; s) = min over cop starts of the max over
robber placements of the residual-damage game value, read off the solved
value table.  extract_policies turns the same table into deterministic
optimal policies: the cop plays greedily against the table; the robbers
play argmax moves, breaking ties first toward states whose value locked
in at an earlier sweep (so simulated play makes progress instead of
circling between equal-valued states) and then lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import rules
from .engine import (COP, DEFAULT_STATE_CAP, ROB, SolvedGame, StateCapExceeded,
                     solve_game)
from .graphs import Graph
from .rules import GameState, Phase

__all__ = [
    "DamageResult", "damage_number", "game_value", "extract_policies",
    "verify_policy_value", "StateCapExceeded", "DEFAULT_STATE_CAP",
]


@dataclass(frozen=True)
class DamageResult:
    value: int
    best_cop_start: int
    states_explored: int
    iterations: int

    def to_json_obj(self) -> dict:
        return {
            "value": self.value,
            "best_cop_start": self.best_cop_start,
            "states": self.states_explored,
            "iterations": self.iterations,
        }


def damage_number(g: Graph, s: int,
                  state_cap: int = DEFAULT_STATE_CAP) -> DamageResult:
    """Exact s-robber damage number of g with an optimal cop start."""
    if s < 1:
        raise ValueError(f"need at least one robber, got s={s}")
    solved = solve_game(g, s, state_cap)
    value, best_cop = solved.damage_value()
    result = DamageResult(value=int(value), best_cop_start=best_cop,
                          states_explored=solved.n_states,
                          iterations=solved.sweeps)
    assert 0 <= result.value <= g.n
    return result


def _phase_code(phase: Phase) -> int:
    return COP if phase is Phase.COP_TO_MOVE else ROB


def game_value(g: Graph, st: GameState,
               state_cap: int = DEFAULT_STATE_CAP) -> int:
    """Residual damage from st under optimal play (cop minimizes)."""
    if st.phase is Phase.ROBBERS_TO_PLACE:
        if st.pending < 1:
            raise ValueError("placement state with no robbers pending")
        solved = solve_game(g, st.pending, state_cap)
        worst = 0
        for placement in rules.robber_placements(g, st.cop, st.pending):
            placed = rules.place_robbers(g, st, placement)
            worst = max(worst, solved.value(placed.robbers, placed.undamaged,
                                            placed.cop, COP))
        return worst
    if st.phase is Phase.COP_TO_MOVE and st.cop in st.robbers:
        raise ValueError("robber on the cop's vertex with captures unresolved")
    s = max(1, len(st.robbers))
    solved = solve_game(g, s, state_cap)
    return solved.value(st.robbers, st.undamaged, st.cop, _phase_code(st.phase))


class TableCopPolicy:
    """Greedy optimal cop: minimize damage delta plus successor value."""

    def __init__(self, g: Graph, solved: SolvedGame, start: int):
        self._g = g
        self._solved = solved
        self._start = start

    def place(self, g: Graph) -> int:
        return self._start

    def move(self, g: Graph, st: GameState) -> int:
        best_dest = None
        best_val = None
        for dest in rules.cop_options(g, st):
            nxt = rules.step_cop(g, st, dest)
            delta = bin(st.undamaged & ~nxt.undamaged).count("1")
            val = delta + self._solved.value(nxt.robbers, nxt.undamaged,
                                             nxt.cop, ROB)
            if best_val is None or val < best_val:
                best_val = val
                best_dest = dest
        return best_dest


class TableRobberPolicy:
    """Optimal robbers: argmax value, then earliest-locking rank, then lex."""

    def __init__(self, g: Graph, solved: SolvedGame):
        self._g = g
        self._solved = solved

    def _pick(self, options, successors):
        best = None
        best_key = None
        for opt, nxt in zip(options, successors):
            val = self._solved.value(nxt.robbers, nxt.undamaged, nxt.cop, COP)
            rk = self._solved.rank(nxt.robbers, nxt.undamaged, nxt.cop, COP)
            key = (-val, rk)
            if best_key is None or key < best_key:
                best_key = key
                best = opt
        return best

    def place(self, g: Graph, st: GameState) -> tuple[int, ...]:
        options = list(rules.robber_placements(g, st.cop, st.pending))
        successors = [rules.place_robbers(g, st, p) for p in options]
        return self._pick(options, successors)

    def move(self, g: Graph, st: GameState) -> tuple[int, ...]:
        options = rules.robber_options(g, st)
        successors = [rules.step_robbers(g, st, a) for a in options]
        return self._pick(options, successors)


def extract_policies(g: Graph, s: int, state_cap: int = DEFAULT_STATE_CAP):
    """Deterministic optimal (cop, robbers) policies for the solved game."""
    solved = solve_game(g, s, state_cap)
    _, best_cop = solved.damage_value()
    return TableCopPolicy(g, solved, best_cop), TableRobberPolicy(g, solved)


def verify_policy_value(g: Graph, s: int, policies, bound: int | None = None,
                        state_cap: int = DEFAULT_STATE_CAP) -> int:
    """Simulate the policies and return the damage they realize.

    Raises if the simulation hits the round bound without reaching a
    quiescent end (robbers exhausted, nothing damageable, or a repeated
    state under the deterministic policies).
    """
    cop_policy, robber_policy = policies
    if bound is None:
        bound = g.n * solve_game(g, s, state_cap).n_states
    transcript = rules.play(g, s, cop_policy, robber_policy, bound)
    if transcript.outcome == "round-limit":
        raise RuntimeError(
            f"policy simulation did not settle within {bound} rounds"
        )
    return transcript.total_damage
