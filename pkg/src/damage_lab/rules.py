"""Operational semantics of the s-robber damage game.

One cop plays against a team of s anonymous robbers on a simple graph.
Round 0 places the cop, then all robbers (placing on the cop is an
immediate capture).  Every later round runs three steps:

  (a) the cop moves within its closed neighborhood; robbers standing on
      the cop's destination are captured;
  (b) every surviving robber's current vertex becomes damaged if it was
      not already;
  (c) all robbers move simultaneously within closed neighborhoods; a
      robber moving onto the cop is captured.

Step (b) is the damage rule: a vertex occupied by a robber at the end of
a round is damaged unless that robber is caught by the cop move that
opens the next round.  A capture at step (c) never undoes damage already
resolved at step (b).  Damaged vertices stay traversable for both sides.

All step functions are pure: they take a state and return a new one.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field

from .graphs import Graph, component_masks


class Phase(enum.Enum):
    ROBBERS_TO_PLACE = "robbers-to-place"
    COP_TO_MOVE = "cop-to-move"
    ROBBERS_TO_MOVE = "robbers-to-move"


@dataclass(frozen=True)
class GameState:
    """Cop position, surviving robber multiset, undamaged set, phase.

    robbers is a sorted tuple (robbers are anonymous); undamaged is a
    vertex bitmask; pending counts robbers awaiting placement and is
    nonzero only in the ROBBERS_TO_PLACE phase.
    """

    cop: int
    robbers: tuple[int, ...]
    undamaged: int
    phase: Phase
    pending: int = 0

    def undamaged_vertices(self) -> list[int]:
        return [v for v in range(64) if self.undamaged >> v & 1]

    def relabel(self, perm: list[int]) -> "GameState":
        undamaged = 0
        for v, bit in enumerate(perm):
            if self.undamaged >> v & 1:
                undamaged |= 1 << bit
        return GameState(
            cop=perm[self.cop],
            robbers=tuple(sorted(perm[r] for r in self.robbers)),
            undamaged=undamaged,
            phase=self.phase,
            pending=self.pending,
        )


class IllegalMove(ValueError):
    """A step was attempted out of phase or with an illegal action."""


def full_mask(g: Graph) -> int:
    return (1 << g.n) - 1


def initial_cop_states(g: Graph, s: int) -> list[GameState]:
    """One pre-placement state per cop start vertex."""
    if s < 1:
        raise ValueError(f"the game needs at least one robber, got s={s}")
    return [
        GameState(cop=v, robbers=(), undamaged=full_mask(g),
                  phase=Phase.ROBBERS_TO_PLACE, pending=s)
        for v in range(g.n)
    ]


def robber_placements(g: Graph, cop: int, s: int):
    """All multisets of s start vertices, the cop's vertex included."""
    return itertools.combinations_with_replacement(range(g.n), s)


def place_robbers(g: Graph, st: GameState, placement: tuple[int, ...]) -> GameState:
    """Resolve round-0 robber placement; robbers placed on the cop are captured."""
    if st.phase is not Phase.ROBBERS_TO_PLACE:
        raise IllegalMove(f"cannot place robbers in phase {st.phase}")
    if len(placement) != st.pending:
        raise IllegalMove(f"expected {st.pending} robbers, got {len(placement)}")
    if any(not 0 <= v < g.n for v in placement):
        raise IllegalMove(f"placement {placement} leaves the graph")
    survivors = tuple(sorted(v for v in placement if v != st.cop))
    return GameState(cop=st.cop, robbers=survivors, undamaged=st.undamaged,
                     phase=Phase.COP_TO_MOVE)


def cop_options(g: Graph, st: GameState) -> list[int]:
    """The cop's closed neighborhood (staying put is always allowed)."""
    if st.phase is not Phase.COP_TO_MOVE:
        raise IllegalMove(f"cop cannot move in phase {st.phase}")
    return g.closed_neighborhood(st.cop)


def step_cop(g: Graph, st: GameState, dest: int) -> GameState:
    """Steps (a) and (b): cop move with captures, then damage resolution."""
    if st.phase is not Phase.COP_TO_MOVE:
        raise IllegalMove(f"cop cannot move in phase {st.phase}")
    if dest != st.cop and not g.has_edge(st.cop, dest):
        raise IllegalMove(f"cop at {st.cop} cannot reach {dest}")
    survivors = tuple(r for r in st.robbers if r != dest)
    occupied = 0
    for r in survivors:
        occupied |= 1 << r
    return GameState(cop=dest, robbers=survivors,
                     undamaged=st.undamaged & ~occupied,
                     phase=Phase.ROBBERS_TO_MOVE)


def robber_options(g: Graph, st: GameState):
    """All joint destination multisets, one entry per robber, in lex order.

    The Cartesian product of the robbers' closed neighborhoods, quotiented
    by robber anonymity.  With no robbers there is exactly one (empty)
    assignment.
    """
    if st.phase is not Phase.ROBBERS_TO_MOVE:
        raise IllegalMove(f"robbers cannot move in phase {st.phase}")
    if not st.robbers:
        return [()]
    option_lists = [g.closed_neighborhood(r) for r in st.robbers]
    seen = {tuple(sorted(combo)) for combo in itertools.product(*option_lists)}
    return sorted(seen)


def _assignment_is_legal(g: Graph, robbers: tuple[int, ...],
                         assignment: tuple[int, ...]) -> bool:
    # some pairing of robbers with destinations must respect closed neighborhoods
    for perm in set(itertools.permutations(assignment)):
        if all(d == r or g.has_edge(r, d) for r, d in zip(robbers, perm)):
            return True
    return False


def step_robbers(g: Graph, st: GameState, assignment: tuple[int, ...]) -> GameState:
    """Step (c): simultaneous robber moves; moving onto the cop is capture."""
    if st.phase is not Phase.ROBBERS_TO_MOVE:
        raise IllegalMove(f"robbers cannot move in phase {st.phase}")
    assignment = tuple(sorted(assignment))
    if len(assignment) != len(st.robbers):
        raise IllegalMove(
            f"assignment has {len(assignment)} entries for {len(st.robbers)} robbers"
        )
    if st.robbers and not _assignment_is_legal(g, st.robbers, assignment):
        raise IllegalMove(f"assignment {assignment} is not reachable from {st.robbers}")
    survivors = tuple(sorted(d for d in assignment if d != st.cop))
    return GameState(cop=st.cop, robbers=survivors, undamaged=st.undamaged,
                     phase=Phase.COP_TO_MOVE)


# ---------------------------------------------------------------------------
# transcripts and policy simulation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Round:
    index: int
    cop: int
    robbers: tuple[int, ...]       # surviving robbers at end of round
    captured: tuple[int, ...]      # vertices where captures happened this round
    damaged: tuple[int, ...]       # vertices newly damaged this round


@dataclass
class Transcript:
    """Replayable record of one full game.

    outcome says why the simulation stopped: robbers-exhausted,
    no-damageable, repetition, or round-limit.
    """

    rounds: list[Round] = field(default_factory=list)
    outcome: str = "round-limit"

    @property
    def total_damage(self) -> int:
        return sum(len(r.damaged) for r in self.rounds)

    def to_text_log(self) -> str:
        lines = []
        for r in self.rounds:
            lines.append(
                f"round {r.index}: cop={r.cop} robbers={list(r.robbers)} "
                f"captured={list(r.captured)} damaged={list(r.damaged)}"
            )
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "rounds": [
                {
                    "round": r.index,
                    "cop": r.cop,
                    "robbers": list(r.robbers),
                    "captured": list(r.captured),
                    "damaged": list(r.damaged),
                }
                for r in self.rounds
            ],
            "total_damage": self.total_damage,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)


def _damageable_left(g: Graph, st: GameState, comp_masks: list[int]) -> bool:
    # a robber can only ever damage vertices inside its own component
    robber_area = 0
    for r in st.robbers:
        for mask in comp_masks:
            if mask >> r & 1:
                robber_area |= mask
                break
    return bool(st.undamaged & robber_area)


def play(g: Graph, s: int, cop_policy, robber_policy, max_rounds: int) -> Transcript:
    """Simulate deterministic policies and record the transcript.

    Policies are objects with ``place`` and ``move`` methods (see
    solver.extract_policies).  The game stops early once the robbers are
    exhausted, no undamaged vertex remains in any robber's component, or
    a full state repeats (deterministic policies then loop forever without
    further damage).
    """
    transcript = Transcript()
    cop_start = cop_policy.place(g)
    pre = GameState(cop=cop_start, robbers=(), undamaged=full_mask(g),
                    phase=Phase.ROBBERS_TO_PLACE, pending=s)
    placement = tuple(sorted(robber_policy.place(g, pre)))
    st = place_robbers(g, pre, placement)
    placed_captures = tuple(v for v in placement if v == cop_start)
    transcript.rounds.append(Round(0, cop_start, st.robbers, placed_captures, ()))

    comp_masks = component_masks(g)
    seen = {st}
    for index in range(1, max_rounds + 1):
        if not st.robbers:
            transcript.outcome = "robbers-exhausted"
            break
        if not _damageable_left(g, st, comp_masks):
            transcript.outcome = "no-damageable"
            break
        dest = cop_policy.move(g, st)
        if dest not in cop_options(g, st):
            raise IllegalMove(f"cop policy returned illegal destination {dest}")
        mid = step_cop(g, st, dest)
        captured = tuple(r for r in st.robbers if r == dest)
        damaged = tuple(v for v in range(g.n)
                        if st.undamaged >> v & 1 and not mid.undamaged >> v & 1)
        assignment = tuple(sorted(robber_policy.move(g, mid)))
        if assignment not in robber_options(g, mid):
            raise IllegalMove(f"robber policy returned illegal assignment {assignment}")
        nxt = step_robbers(g, mid, assignment)
        captured += tuple(d for d in assignment if d == mid.cop)
        transcript.rounds.append(Round(index, dest, nxt.robbers, captured, damaged))
        st = nxt
        if st in seen:
            transcript.outcome = "repetition"
            break
        seen.add(st)
    else:
        if not st.robbers:
            transcript.outcome = "robbers-exhausted"
        elif not _damageable_left(g, st, comp_masks):
            transcript.outcome = "no-damageable"
    return transcript
