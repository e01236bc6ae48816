"""Predicted values and intervals for the s-robber damage number.

Encodes the known bounds, closed forms, and characterizations so the
solver can be cross-checked instance by instance:

  lower bounds   s-1 (s <= n-1); n-2 (s >= n); cut vertices with k
                 nontrivial pieces give min(2k-2, 2s-2)
  upper bounds   n-1 always; n-2 given an edge; n-3 for s=2 when some
                 vertex has degree >= 3; a vertex of positive degree
                 whose removal leaves k >= s components gives n-k+s-2;
                 disconnected graphs obey the disjoint-union recurrence
  closed forms   empty min{s, n-1}; complete (n >= 4) min{s(s-1)/2, n-2};
                 paths and cycles n-2 for s >= 2; spiders with legs
                 k_1 >= ... >= k_l (l >= 3): sum of the s largest legs
                 minus 1 for 2 <= s <= l, n-2 beyond
  s=2 extremes   dmg = n-2 exactly for paths, cycles, and six small
                 sporadic graphs; dmg = 1 exactly for threshold graphs
                 with at most one isolated vertex (n >= 5) or, for
                 n <= 4, everything outside an explicit exclusion list

The convention dmg(G; 0) = 0 grounds the union recurrence at s = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .graphs import (FamilySpec, Graph, canonical_form, component_masks,
                     components, cut_vertex_profile, family, is_threshold,
                     isolated_vertex_count, max_degree)


@dataclass(frozen=True)
class Prediction:
    """Interval [lo, hi] for dmg(G; s), exact when the theory pins it."""

    lo: int
    hi: int
    exact: int | None
    sources: tuple[str, ...]

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"inconsistent prediction [{self.lo}, {self.hi}]")
        if self.exact is not None and not (self.lo == self.exact == self.hi):
            raise ValueError("exact prediction must collapse the interval")

    def contains(self, value: int) -> bool:
        return self.lo <= value <= self.hi

    def to_json_obj(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "exact": self.exact,
                "sources": list(self.sources)}


def lower_bound(g: Graph, s: int) -> int:
    return _lower_with_sources(g, s)[0]


def _lower_with_sources(g: Graph, s: int) -> tuple[int, list[str]]:
    if s == 0:
        return 0, ["zero-robbers"]
    n = g.n
    cands: list[tuple[int, str]] = [(0, "nonnegative")]
    if s <= n - 1:
        cands.append((s - 1, "lb-spread"))
    if s >= n:
        cands.append((n - 2, "lb-saturated"))
    best_cut = 0
    for _, _, k_nontrivial in cut_vertex_profile(g):
        if k_nontrivial >= 1:
            best_cut = max(best_cut, min(2 * k_nontrivial - 2, 2 * s - 2))
    if best_cut > 0:
        cands.append((best_cut, "lb-cut-vertex"))
    value = max(v for v, _ in cands)
    return value, sorted({tag for v, tag in cands if v == value})


def upper_bound(g: Graph, s: int) -> int:
    return _upper_with_sources(g, s)[0]


def _upper_with_sources(g: Graph, s: int) -> tuple[int, list[str]]:
    if s == 0:
        return 0, ["zero-robbers"]
    n = g.n
    has_edge = g.edge_count() > 0
    cands: list[tuple[int, str]] = [(n - 1, "ub-guard-own-vertex")]
    if n >= 2 and has_edge:
        cands.append((n - 2, "ub-guard-edge"))
    if s == 2 and max_degree(g) >= 3:
        cands.append((n - 3, "ub-degree-three"))
    connected = len(components(g)) == 1
    if connected:
        # the edge-guard strategy needs every piece of G-v to hang off a
        # neighbor of v, which only connectivity guarantees
        best_cut = None
        for v, k_total, _ in cut_vertex_profile(g):
            if g.degree(v) >= 1 and s <= k_total:
                cand = n - k_total + s - 2
                if best_cut is None or cand < best_cut:
                    best_cut = cand
        if best_cut is not None:
            cands.append((best_cut, "ub-cut-vertex"))
    else:
        cands.append((_union_upper(g, s), "ub-union-split"))
    value = min(v for v, _ in cands)
    return value, sorted({tag for v, tag in cands if v == value})


def _union_upper(g: Graph, s: int) -> int:
    comps = components(g)
    left = g.induced(comps[0])
    rest_vertices = sorted(v for comp in comps[1:] for v in comp)
    right = g.induced(rest_vertices)
    return union_value(lambda t: upper_bound(left, t),
                       lambda t: upper_bound(right, t),
                       left, right, s)


def union_value(dmg_g: Callable[[int], int], dmg_h: Callable[[int], int],
                g: Graph, h: Graph, s: int) -> int:
    """Damage of the disjoint union G + H from the parts' damage functions.

    dmg_g / dmg_h are called with robber counts s and s-1; the count 0 is
    never passed through (dmg(.; 0) = 0 by convention).
    """

    def val(fn: Callable[[int], int], t: int) -> int:
        return 0 if t == 0 else fn(t)

    left = max(val(dmg_g, s - 1) + h.n, val(dmg_g, s))
    right = max(val(dmg_h, s - 1) + g.n, val(dmg_h, s))
    return min(left, right)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def closed_form(spec: FamilySpec, s: int) -> int | None:
    """Exact dmg for family instances inside the known hypotheses, else None."""
    if s < 1:
        return None
    kind = spec.kind
    if kind == "empty":
        (n,) = spec.params
        return min(s, n - 1)
    if kind == "complete":
        (n,) = spec.params
        if n >= 4:
            return min(s * (s - 1) // 2, n - 2)
        # K3 is C3 and K2 is P2; K1 is the one-vertex empty graph
        if n == 3:
            return closed_form(FamilySpec.cycle(3), s)
        if n == 2:
            return closed_form(FamilySpec.path(2), s)
        return closed_form(FamilySpec.empty(1), s)
    if kind == "path":
        (n,) = spec.params
        if n == 1:
            return closed_form(FamilySpec.empty(1), s)
        if s >= 2:
            return n - 2
        return None
    if kind == "cycle":
        (n,) = spec.params
        if n >= 3 and s >= 2:
            return n - 2
        return None
    if kind == "star":
        (leaves,) = spec.params
        if leaves >= 3:
            return closed_form(FamilySpec.spider(*([1] * leaves)), s)
        if leaves >= 1:
            return closed_form(FamilySpec.path(leaves + 1), s)
        return None
    if kind == "spider":
        legs = spec.params
        count = len(legs)
        if count < 3:
            return None
        n = 1 + sum(legs)
        if 2 <= s <= count:
            return sum(sorted(legs, reverse=True)[:s]) - 1
        if s > count:
            return n - 2
        return None
    return None


# ---------------------------------------------------------------------------
# s = 2 characterizations
# ---------------------------------------------------------------------------

def _component_kinds(g: Graph) -> list[tuple[str, int]]:
    out = []
    for comp in components(g):
        c = g.induced(comp)
        if c.edge_count() == c.n - 1 and (c.n == 1 or max_degree(c) <= 2):
            out.append(("path", c.n))
        elif c.n >= 3 and c.edge_count() == c.n and max_degree(c) == 2:
            out.append(("cycle", c.n))
        else:
            out.append(("other", c.n))
    return out


def char_dmg2_is_nminus2(g: Graph) -> bool:
    """Membership in the family with 2-robber damage number exactly n-2:
    paths (n >= 2), cycles, and six sporadic graphs whose components all
    have at most two vertices."""
    kinds = _component_kinds(g)
    if len(kinds) == 1:
        kind, n = kinds[0]
        return (kind == "path" and n >= 2) or kind == "cycle"
    sizes = tuple(sorted(n for _, n in kinds))
    if any(n > 2 for n in sizes):
        return False
    return sizes in {(1, 2), (2, 2), (1, 1, 2), (1, 2, 2), (2, 2, 2),
                     (1, 1, 1, 1)}


_SMALL_EXCLUSIONS: set[tuple[int, int]] | None = None


def _small_exclusions() -> set[tuple[int, int]]:
    global _SMALL_EXCLUSIONS
    if _SMALL_EXCLUSIONS is None:
        specs = [
            family(FamilySpec.path(2)),
            family(FamilySpec.path(4)),
            family(FamilySpec.cycle(4)),
            family(FamilySpec.empty(1)),
            family(FamilySpec.empty(3)),
            family(FamilySpec.empty(4)),
            family(FamilySpec.union(FamilySpec.path(2), FamilySpec.path(2))),
            family(FamilySpec.union(FamilySpec.path(2), FamilySpec.empty(2))),
        ]
        _SMALL_EXCLUSIONS = {(h.n, canonical_form(h)) for h in specs}
    return _SMALL_EXCLUSIONS


def char_dmg2_is_1(g: Graph) -> bool:
    """Membership in the family with 2-robber damage number exactly 1."""
    if g.n >= 5:
        return is_threshold(g) and isolated_vertex_count(g) <= 1
    return (g.n, canonical_form(g)) not in _small_exclusions()


# ---------------------------------------------------------------------------
# family recognition and aggregated predictions
# ---------------------------------------------------------------------------

def recognize_family(g: Graph) -> FamilySpec | None:
    """Identify g (up to labeling) as one of the closed-form families."""
    n = g.n
    m = g.edge_count()
    if m == 0:
        return FamilySpec.empty(n)
    if len(components(g)) != 1:
        return None
    degs = sorted(g.degree(v) for v in range(n))
    if m == n - 1 and degs[-1] <= 2:
        return FamilySpec.path(n)
    if n >= 3 and m == n and degs == [2] * n:
        return FamilySpec.cycle(n)
    if m == n * (n - 1) // 2:
        return FamilySpec.complete(n)
    if m == n - 1 and sum(1 for d in degs if d >= 3) == 1:
        center = next(v for v in range(n) if g.degree(v) >= 3)
        legs = sorted(_components_sizes_without(g, center), reverse=True)
        return FamilySpec.spider(*legs)
    return None


def _components_sizes_without(g: Graph, removed: int) -> list[int]:
    masks = []
    seen = 1 << removed
    for start in range(g.n):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for u in g.neighbors(v):
                if u != removed and not comp >> u & 1:
                    comp |= 1 << u
                    frontier.append(u)
        seen |= comp
        masks.append(bin(comp).count("1"))
    return masks


_WHEEL4_KEY: tuple[int, int] | None = None


def figure_wheel_claim(g: Graph, s: int) -> int | None:
    """For the 4-spoke wheel with s in {3, 4}: the strict lower threshold
    n-s-1 that its damage number is claimed to exceed.  None otherwise."""
    global _WHEEL4_KEY
    if g.n != 5 or s not in (3, 4):
        return None
    if _WHEEL4_KEY is None:
        w = family(FamilySpec.wheel(4))
        _WHEEL4_KEY = (w.n, canonical_form(w))
    if (g.n, canonical_form(g)) == _WHEEL4_KEY:
        return g.n - s - 1
    return None


def predicted(g: Graph, s: int,
              closed_form_fn: Callable[[FamilySpec, int], int | None] = closed_form,
              ) -> Prediction:
    """Tightest interval implied by every applicable result."""
    n = g.n
    lo, lo_tags = _lower_with_sources(g, s)
    hi, hi_tags = _upper_with_sources(g, s)
    sources = list(lo_tags) + list(hi_tags)
    exacts: list[tuple[int, str]] = []

    fam = recognize_family(g)
    if fam is not None:
        cf = closed_form_fn(fam, s)
        if cf is not None:
            exacts.append((cf, f"closed-form-{fam.kind}"))

    if s == 2:
        if char_dmg2_is_nminus2(g):
            exacts.append((n - 2, "char-dmg2-max"))
        elif n >= 2 and g.edge_count() > 0 and hi >= n - 2:
            hi = n - 3
            sources.append("char-dmg2-max-excluded")
        if char_dmg2_is_1(g):
            exacts.append((1, "char-dmg2-one"))
        elif lo == 1:
            lo = 2
            sources.append("char-dmg2-one-excluded")

    if figure_wheel_claim(g, s) is not None:
        sources.append("figure-wheel-claim")

    exact = None
    for value, tag in exacts:
        if exact is not None and value != exact:
            raise AssertionError(
                f"conflicting exact predictions for n={n}, s={s}: {exacts}"
            )
        exact = value
        sources.append(tag)
    if exact is not None:
        if not (lo <= exact <= hi):
            raise AssertionError(
                f"exact prediction {exact} outside bounds [{lo}, {hi}]"
            )
        lo = hi = exact
    elif lo == hi:
        exact = lo
    return Prediction(lo=lo, hi=hi, exact=exact, sources=tuple(sources))
