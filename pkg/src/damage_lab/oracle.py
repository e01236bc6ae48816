"""Independent cross-check solver: iterated memoized recursion.

This deliberately shares nothing with the packed-table engine except the
rule semantics.  One round is a depth-first evaluation of the min/max
recursion with an explicit on-path set, valuing any revisit of an
on-path state at the best estimate known so far (0 in the first round:
a damage-free loop adds nothing).  Rounds repeat, feeding the previous
round's values into the revisit cutoffs, until nothing changes.

Every round's table under-approximates the true game value and rounds
are pointwise nondecreasing, so the iteration converges; a stable table
satisfies the min/max recursion exactly and, approached from below, is
the least such solution - the same least-fixed-point semantics the
engine computes, reached by very different machinery.  A converged
search visits a successor-closed set of states, so those values are
final and later searches on the same graph treat them as answers.

Intended for small instances; sweeps compare it against the table engine.
"""

from __future__ import annotations

from . import rules
from .graphs import Graph
from .rules import GameState, Phase

_INF = float("inf")


class OracleSolver:
    """Iterated memoized-DFS valuation of one graph's game states."""

    def __init__(self, g: Graph):
        self.g = g
        self._est: dict[GameState, int] = {}
        self._stable: set[GameState] = set()
        self._succ: dict[GameState, list[tuple[int, GameState]]] = {}

    def _successors(self, state: GameState) -> list[tuple[int, GameState]]:
        cached = self._succ.get(state)
        if cached is not None:
            return cached
        g = self.g
        if state.phase is Phase.COP_TO_MOVE:
            out = []
            for dest in rules.cop_options(g, state):
                nxt = rules.step_cop(g, state, dest)
                delta = bin(state.undamaged & ~nxt.undamaged).count("1")
                out.append((delta, nxt))
        else:
            out = [(0, rules.step_robbers(g, state, a))
                   for a in rules.robber_options(g, state)]
        self._succ[state] = out
        return out

    def _round(self, root: GameState, visited: dict[GameState, int]) -> None:
        """One memoized depth-first pass; fills `visited` for this round."""
        onpath: set[GameState] = set()
        # frame: [state, succs, next_idx, best, minimizing]
        stack: list[list] = []

        def open_frame(state: GameState) -> None:
            onpath.add(state)
            if not state.robbers:
                stack.append([state, [], 0, 0, False])
                return
            minimizing = state.phase is Phase.COP_TO_MOVE
            stack.append([state, self._successors(state), 0,
                          _INF if minimizing else -_INF, minimizing])

        open_frame(root)
        pending: int | None = None
        while stack:
            fr = stack[-1]
            state, succs, idx, best, minimizing = fr
            if pending is not None:
                delta, _ = succs[idx - 1]
                total = delta + pending
                pending = None
                fr[3] = min(best, total) if minimizing else max(best, total)
                continue
            descended = False
            while fr[2] < len(succs):
                delta, child = succs[fr[2]]
                fr[2] += 1
                if child in self._stable:
                    total = delta + self._est[child]
                elif child in visited:
                    total = delta + visited[child]
                elif child in onpath:
                    total = delta + self._est.get(child, 0)
                else:
                    open_frame(child)
                    descended = True
                    break
                fr[3] = min(fr[3], total) if minimizing else max(fr[3], total)
            if descended:
                continue
            onpath.discard(state)
            visited[state] = int(fr[3])
            pending = visited[state]
            stack.pop()

    def value(self, root: GameState) -> int:
        if root in self._stable:
            return self._est[root]
        while True:
            visited: dict[GameState, int] = {}
            self._round(root, visited)
            changed = any(self._est.get(s, 0) != v for s, v in visited.items())
            self._est.update(visited)
            if not changed:
                self._stable.update(visited)
                return self._est[root]


def oracle_state_value(g: Graph, root: GameState,
                       solver: OracleSolver | None = None) -> int:
    """Residual damage from root, by iterated memoized DFS."""
    return (solver or OracleSolver(g)).value(root)


def oracle_damage_number(g: Graph, s: int) -> int:
    """min over cop starts of max over robber placements, by iterated DFS."""
    if s < 1:
        raise ValueError(f"need at least one robber, got s={s}")
    solver = OracleSolver(g)
    best = None
    for pre in rules.initial_cop_states(g, s):
        worst = 0
        for placement in rules.robber_placements(g, pre.cop, s):
            st = rules.place_robbers(g, pre, placement)
            worst = max(worst, solver.value(st))
        if best is None or worst < best:
            best = worst
    return best
