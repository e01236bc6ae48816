"""Packed-table exact solver core.

The full state universe for (graph, s) is laid out as a flat array:

    index(m, U, cop, phase) = ((m * 2^n + U) * n + cop) * 2 + phase

where m indexes the sorted multiset of surviving robber positions (all
sizes 0..s), U is the undamaged-vertex bitmask, and phase 0/1 means cop
or robbers to move.  Residual damage values are the least fixed point of
the min/max Bellman operator, computed by ascending value iteration from
the all-zero table.

The iteration runs layer by layer: transitions either stay inside a
layer (U, robber count) or strictly decrease it, so layers solved in
increasing (popcount(U), count) order only ever read finished values
below them.  Inside a layer the sweeps are Jacobi-style (next sweep reads
the previous sweep's values) and each state records the sweep at which
its value last rose; those ranks order "how quickly the robbers can lock
in the value" and drive optimal-policy extraction tie-breaking.
"""

from __future__ import annotations

import itertools

import numpy as np
from numba import njit

from .graphs import Graph

COP = 0
ROB = 1

DEFAULT_STATE_CAP = 50_000_000


class StateCapExceeded(RuntimeError):
    """The packed state universe would exceed the configured cap."""

    def __init__(self, g: Graph, s: int, states: int, cap: int):
        super().__init__(
            f"state space for n={g.n}, s={s} needs {states} keys, cap is {cap}"
        )
        self.states = states
        self.cap = cap


def universe_size(n: int, s: int) -> int:
    msets = sum(_binom(n + c - 1, c) for c in range(s + 1))
    return msets * (1 << n) * n * 2


def _binom(a: int, b: int) -> int:
    out = 1
    for i in range(b):
        out = out * (a - i) // (i + 1)
    return out


@njit(cache=True)
def _solve_kernel(n, s, occ, size, cap, nb_data, nb_ptr, joint_data, joint_ptr,
                  by_size_data, by_size_ptr, pos_in_size, u_order, V, rank):
    two_n = 1 << n
    pop = np.zeros(two_n, dtype=np.int32)
    for u in range(1, two_n):
        pop[u] = pop[u >> 1] + (u & 1)

    max_layer = 0
    for c in range(s + 1):
        cnt = by_size_ptr[c + 1] - by_size_ptr[c]
        if cnt > max_layer:
            max_layer = cnt
    buf = max_layer * n * 2
    cur = np.zeros(buf, dtype=np.int16)
    nxt = np.zeros(buf, dtype=np.int16)
    lrank = np.zeros(buf, dtype=np.int32)

    total_sweeps = 0
    for ui in range(two_n):
        U = u_order[ui]
        for c in range(1, s + 1):
            g0 = by_size_ptr[c]
            g1 = by_size_ptr[c + 1]
            nst = (g1 - g0) * n * 2
            for i in range(nst):
                cur[i] = 0
                lrank[i] = 0
            sweep = 0
            while True:
                sweep += 1
                changed = False
                for gpos in range(g0, g1):
                    m = by_size_data[gpos]
                    p = pos_in_size[m]
                    for copv in range(n):
                        # robbers to move: max over joint destination multisets
                        best = np.int16(0)
                        for jj in range(joint_ptr[m], joint_ptr[m + 1]):
                            dm = joint_data[jj]
                            m2 = cap[dm, copv]
                            if size[m2] == c:
                                val = cur[(pos_in_size[m2] * n + copv) * 2 + COP]
                            else:
                                val = V[((m2 * two_n + U) * n + copv) * 2 + COP]
                            if val > best:
                                best = val
                        li = (p * n + copv) * 2 + ROB
                        if best != cur[li]:
                            changed = True
                            nxt[li] = best
                            lrank[li] = sweep
                        else:
                            nxt[li] = cur[li]

                        # cop to move: min over closed neighborhood of
                        # (damage delta + successor value)
                        bestc = np.int16(32000)
                        for kk in range(nb_ptr[copv], nb_ptr[copv + 1]):
                            dest = nb_data[kk]
                            m2 = cap[m, dest]
                            o2 = occ[m2]
                            dd = pop[o2 & U]
                            if dd == 0 and size[m2] == c:
                                val = cur[(pos_in_size[m2] * n + dest) * 2 + ROB]
                            else:
                                U2 = U & ~o2
                                val = np.int16(
                                    dd + V[((m2 * two_n + U2) * n + dest) * 2 + ROB]
                                )
                            if val < bestc:
                                bestc = val
                        li = (p * n + copv) * 2 + COP
                        if bestc != cur[li]:
                            changed = True
                            nxt[li] = bestc
                            lrank[li] = sweep
                        else:
                            nxt[li] = cur[li]
                for i in range(nst):
                    cur[i] = nxt[i]
                if not changed:
                    break
            total_sweeps += sweep
            for gpos in range(g0, g1):
                m = by_size_data[gpos]
                p = pos_in_size[m]
                for copv in range(n):
                    for ph in range(2):
                        gi = ((m * two_n + U) * n + copv) * 2 + ph
                        li = (p * n + copv) * 2 + ph
                        V[gi] = cur[li]
                        rank[gi] = lrank[li]
    return total_sweeps


class SolvedGame:
    """Value and rank tables for every state of (graph, s)."""

    def __init__(self, g: Graph, s: int, state_cap: int = DEFAULT_STATE_CAP):
        if s < 1:
            raise ValueError(f"need at least one robber, got s={s}")
        self.graph = g
        self.s = s
        n = g.n
        states = universe_size(n, s)
        if states > state_cap:
            raise StateCapExceeded(g, s, states, state_cap)
        self.n_states = states

        msets: list[tuple[int, ...]] = []
        for c in range(s + 1):
            msets.extend(itertools.combinations_with_replacement(range(n), c))
        self._msets = msets
        self._mindex = {m: i for i, m in enumerate(msets)}
        M = len(msets)

        occ = np.zeros(M, dtype=np.int64)
        size = np.zeros(M, dtype=np.int32)
        for i, m in enumerate(msets):
            mask = 0
            for v in m:
                mask |= 1 << v
            occ[i] = mask
            size[i] = len(m)

        cap = np.zeros((M, n), dtype=np.int32)
        for i, m in enumerate(msets):
            for v in range(n):
                cap[i, v] = self._mindex[tuple(x for x in m if x != v)]

        closed = [g.closed_neighborhood(v) for v in range(n)]
        nb_data: list[int] = []
        nb_ptr = [0]
        for v in range(n):
            nb_data.extend(closed[v])
            nb_ptr.append(len(nb_data))

        joint_data: list[int] = []
        joint_ptr = [0]
        for m in msets:
            if not m:
                dests = [self._mindex[()]]
            else:
                seen = {tuple(sorted(combo))
                        for combo in itertools.product(*(closed[v] for v in m))}
                dests = [self._mindex[t] for t in sorted(seen)]
            joint_data.extend(dests)
            joint_ptr.append(len(joint_data))

        by_size_data: list[int] = []
        by_size_ptr = [0]
        pos_in_size = np.zeros(M, dtype=np.int32)
        for c in range(s + 1):
            grp = [i for i in range(M) if size[i] == c]
            for p, i in enumerate(grp):
                pos_in_size[i] = p
            by_size_data.extend(grp)
            by_size_ptr.append(len(by_size_data))

        u_order = np.argsort(
            [bin(u).count("1") for u in range(1 << n)], kind="stable"
        ).astype(np.int64)

        self._V = np.zeros(states, dtype=np.int16)
        self._rank = np.zeros(states, dtype=np.int32)
        self.sweeps = int(_solve_kernel(
            n, s, occ, size, cap,
            np.array(nb_data, dtype=np.int32), np.array(nb_ptr, dtype=np.int32),
            np.array(joint_data, dtype=np.int32), np.array(joint_ptr, dtype=np.int32),
            np.array(by_size_data, dtype=np.int32), np.array(by_size_ptr, dtype=np.int32),
            pos_in_size, u_order, self._V, self._rank,
        ))
        # ascending iteration must fix within (n+1) * |states| sweeps
        assert self.sweeps <= (n + 1) * states, (
            f"value iteration used {self.sweeps} sweeps on {states} states"
        )

    def index_of(self, robbers: tuple[int, ...], undamaged: int, cop: int,
                 phase: int) -> int:
        m = self._mindex[tuple(sorted(robbers))]
        return ((m * (1 << self.graph.n) + undamaged) * self.graph.n + cop) * 2 + phase

    def value(self, robbers: tuple[int, ...], undamaged: int, cop: int,
              phase: int) -> int:
        return int(self._V[self.index_of(robbers, undamaged, cop, phase)])

    def rank(self, robbers: tuple[int, ...], undamaged: int, cop: int,
             phase: int) -> int:
        return int(self._rank[self.index_of(robbers, undamaged, cop, phase)])

    def placement_value(self, cop: int) -> int:
        """Damage under optimal play if the cop starts at `cop`."""
        g = self.graph
        full = (1 << g.n) - 1
        worst = 0
        for placement in itertools.combinations_with_replacement(range(g.n), self.s):
            survivors = tuple(v for v in placement if v != cop)
            val = self.value(survivors, full, cop, COP)
            if val > worst:
                worst = val
        return worst

    def damage_value(self) -> tuple[int, int]:
        """(least damage over cop starts, lexicographically least optimal start)."""
        best_v = None
        best_cop = 0
        for cop in range(self.graph.n):
            val = self.placement_value(cop)
            if best_v is None or val < best_v:
                best_v = val
                best_cop = cop
        return best_v, best_cop


_memo: dict[tuple, SolvedGame] = {}
_MEMO_LIMIT = 32


def solve_game(g: Graph, s: int, state_cap: int = DEFAULT_STATE_CAP) -> SolvedGame:
    """Solve (or fetch a cached solve of) the whole universe for (g, s)."""
    key = (g.n, g.adj, s)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    solved = SolvedGame(g, s, state_cap)
    if len(_memo) >= _MEMO_LIMIT:
        _memo.pop(next(iter(_memo)))
    _memo[key] = solved
    return solved
