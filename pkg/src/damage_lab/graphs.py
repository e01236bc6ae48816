"""Immutable simple graphs on 0-indexed vertices, named families, and
small-graph utilities.

Adjacency is stored as one neighbor bitmask per vertex, which keeps set
operations (neighborhoods, damage bookkeeping, canonical forms) cheap for
the desk-scale graphs this package targets.  Interchange formats: graph6
for corpora and caching keys, and a plain "n m" edge-list text format.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class Graph:
    """A finite simple graph on vertices 0..n-1 with bitmask adjacency.

    Instances are immutable and hashable; ``adj[v]`` is the neighbor set
    of ``v`` as a bitmask.  Construction validates symmetry and absence
    of self-loops.
    """

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj: tuple[int, ...]):
        if n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={n}")
        if len(adj) != n:
            raise ValueError(f"adjacency length {len(adj)} != n={n}")
        full = (1 << n) - 1
        for v, mask in enumerate(adj):
            if mask & ~full:
                raise ValueError(f"vertex {v} has neighbors outside 0..{n - 1}")
            if mask >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for v in range(n):
            for u in range(v + 1, n):
                if (adj[v] >> u & 1) != (adj[u] >> v & 1):
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"

    def neighbors(self, v: int) -> list[int]:
        return [u for u in range(self.n) if self.adj[v] >> u & 1]

    def closed_neighborhood(self, v: int) -> list[int]:
        """v together with its neighbors, sorted."""
        return sorted({v} | set(self.neighbors(v)))

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if self.adj[u] >> v & 1]

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def relabel(self, perm: list[int]) -> "Graph":
        """Image of the graph under vertex map v -> perm[v]."""
        adj = [0] * self.n
        for u, v in self.edges():
            a, b = perm[u], perm[v]
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return Graph(self.n, tuple(adj))

    def induced(self, vertices: list[int]) -> "Graph":
        """Induced subgraph, relabeled to 0..k-1 in the given order."""
        k = len(vertices)
        adj = [0] * k
        for i in range(k):
            for j in range(i + 1, k):
                if self.has_edge(vertices[i], vertices[j]):
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        return Graph(k, tuple(adj))


def build_from_edge_list(n: int, edges: list[tuple[int, int]]) -> Graph:
    """Graph on n vertices with exactly the given edges (duplicates merged)."""
    adj = [0] * n
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge {e} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise ValueError(f"edge {e} is a self-loop")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def max_degree(g: Graph) -> int:
    return max(g.degree(v) for v in range(g.n))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Vertex-disjoint union; h's vertex labels are shifted up by g.n."""
    edges = g.edges() + [(u + g.n, v + g.n) for u, v in h.edges()]
    return build_from_edge_list(g.n + h.n, edges)


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by least vertex."""
    seen = 0
    out = []
    for start in range(g.n):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for u in g.neighbors(v):
                if not comp >> u & 1:
                    comp |= 1 << u
                    frontier.append(u)
        seen |= comp
        out.append([v for v in range(g.n) if comp >> v & 1])
    return out


def component_masks(g: Graph) -> list[int]:
    """Connected components as bitmasks, ordered by least vertex."""
    out = []
    for comp in components(g):
        mask = 0
        for v in comp:
            mask |= 1 << v
        out.append(mask)
    return out


def _components_without(g: Graph, removed: int) -> list[int]:
    """Component sizes of g minus the vertex `removed`."""
    seen = 1 << removed
    sizes = []
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
        sizes.append(bin(comp).count("1"))
    return sizes


def cut_vertex_profile(g: Graph) -> list[tuple[int, int, int]]:
    """Per vertex v: (v, #components of G-v, #components of G-v with >= 2 vertices)."""
    out = []
    for v in range(g.n):
        sizes = _components_without(g, v)
        out.append((v, len(sizes), sum(1 for s in sizes if s >= 2)))
    return out


# ---------------------------------------------------------------------------
# threshold recognition, computed two independent ways on every call
# ---------------------------------------------------------------------------

def _is_threshold_by_peeling(g: Graph) -> bool:
    """Peel isolated or dominating vertices down to a single vertex."""
    active = (1 << g.n) - 1
    count = g.n
    while count > 1:
        pick = -1
        for v in range(g.n):
            if not active >> v & 1:
                continue
            deg = bin(g.adj[v] & active).count("1")
            if deg == 0 or deg == count - 1:
                pick = v
                break
        if pick < 0:
            return False
        active &= ~(1 << pick)
        count -= 1
    return True


def _is_threshold_by_forbidden(g: Graph) -> bool:
    """No 4 vertices induce P4, C4, or K2+K2."""
    for quad in itertools.combinations(range(g.n), 4):
        degs = sorted(
            sum(1 for u in quad if u != v and g.has_edge(v, u)) for v in quad
        )
        m = sum(degs) // 2
        if m == 2 and degs == [1, 1, 1, 1]:
            return False  # K2 + K2
        if m == 3 and degs == [1, 1, 2, 2]:
            return False  # P4
        if m == 4 and degs == [2, 2, 2, 2]:
            return False  # C4
    return True


def is_threshold(g: Graph) -> bool:
    """Whether g is a threshold graph.

    Runs both the peeling and the forbidden-induced-subgraph recognizers
    and insists they agree; a disagreement means a bug in one of them.
    """
    by_peel = _is_threshold_by_peeling(g)
    by_forbidden = _is_threshold_by_forbidden(g)
    if by_peel != by_forbidden:
        raise AssertionError(
            f"threshold recognizers disagree on {write_graph6(g)}: "
            f"peel={by_peel} forbidden={by_forbidden}"
        )
    return by_peel


def isolated_vertex_count(g: Graph) -> int:
    return sum(1 for v in range(g.n) if g.adj[v] == 0)


# ---------------------------------------------------------------------------
# graph6 wire format
# ---------------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _g6_bits(g: Graph) -> list[int]:
    # upper triangle, column-major: (0,1), (0,2), (1,2), (0,3), ...
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    return bits


def write_graph6(g: Graph) -> str:
    """Canonical graph6 encoding (no header, no trailing newline)."""
    n = g.n
    if n <= 62:
        out = [chr(n + 63)]
    elif n <= 258047:
        out = [chr(126)]
        out.extend(chr((n >> shift & 0x3F) + 63) for shift in (12, 6, 0))
    else:
        raise ValueError(f"n={n} too large for this graph6 writer")
    bits = _g6_bits(g)
    while len(bits) % 6:
        bits.append(0)
    for i in range(0, len(bits), 6):
        group = 0
        for b in bits[i:i + 6]:
            group = group << 1 | b
        out.append(chr(group + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line, bit-exact; rejects malformed input."""
    line = text.strip()
    if line.startswith(_G6_HEADER):
        line = line[len(_G6_HEADER):]
    if not line:
        raise ValueError("empty graph6 string")
    for ch in line:
        if not 63 <= ord(ch) <= 126:
            raise ValueError(f"invalid graph6 byte {ord(ch)}")
    if line[0] == chr(126):
        if len(line) >= 2 and line[1] == chr(126):
            raise ValueError("graph6 n > 258047 not supported")
        if len(line) < 4:
            raise ValueError("truncated graph6 size header")
        n = 0
        for ch in line[1:4]:
            n = n << 6 | (ord(ch) - 63)
        body = line[4:]
    else:
        n = ord(line[0]) - 63
        body = line[1:]
    if n < 1:
        raise ValueError(f"graph6 size {n} out of range")
    nbits = n * (n - 1) // 2
    expect = (nbits + 5) // 6
    if len(body) != expect:
        raise ValueError(
            f"truncated graph6 payload: expected {expect} bytes, got {len(body)}"
        )
    bits = []
    for ch in body:
        group = ord(ch) - 63
        bits.extend(group >> shift & 1 for shift in (5, 4, 3, 2, 1, 0))
    if any(bits[nbits:]):
        raise ValueError("nonzero padding bits in graph6 payload")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


# ---------------------------------------------------------------------------
# edge-list text format: "n m" then one "u v" line per edge
# ---------------------------------------------------------------------------

def parse_edge_list_text(text: str) -> Graph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"expected header 'n m', got {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"header promises {m} edges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return build_from_edge_list(n, edges)


def format_edge_list_text(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# named families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    """Symbolic description of a named family instance.

    kind: empty | complete | path | cycle | star | spider | wheel |
          threshold | union.  Sized kinds carry a single count in params;
    spider carries leg lengths (stored longest-first); threshold carries a
    creation sequence over 'v' (initial vertex), 'i' (isolated add) and
    'd' (dominating add); union carries the two sub-specs.
    """

    kind: str
    params: tuple[int, ...] = ()
    sequence: str = ""
    parts: tuple["FamilySpec", ...] = field(default=())

    @classmethod
    def empty(cls, n: int) -> "FamilySpec":
        return cls("empty", (n,))

    @classmethod
    def complete(cls, n: int) -> "FamilySpec":
        return cls("complete", (n,))

    @classmethod
    def path(cls, n: int) -> "FamilySpec":
        return cls("path", (n,))

    @classmethod
    def cycle(cls, n: int) -> "FamilySpec":
        return cls("cycle", (n,))

    @classmethod
    def star(cls, leaves: int) -> "FamilySpec":
        return cls("star", (leaves,))

    @classmethod
    def spider(cls, *legs: int) -> "FamilySpec":
        return cls("spider", tuple(sorted(legs, reverse=True)))

    @classmethod
    def wheel(cls, spokes: int) -> "FamilySpec":
        return cls("wheel", (spokes,))

    @classmethod
    def threshold(cls, sequence: str) -> "FamilySpec":
        return cls("threshold", (), sequence)

    @classmethod
    def union(cls, left: "FamilySpec", right: "FamilySpec") -> "FamilySpec":
        return cls("union", (), "", (left, right))

    def label(self) -> str:
        if self.kind == "union":
            return "+".join(p.label() for p in self.parts)
        if self.kind == "threshold":
            return f"threshold:{self.sequence}"
        return f"{self.kind}:{','.join(str(p) for p in self.params)}"


def family(spec: FamilySpec) -> Graph:
    """Canonical labeled instance of a named family.

    Spider center and wheel hub are vertex 0; spider legs are laid out
    consecutively, longest first.
    """
    kind = spec.kind
    if kind == "empty":
        (n,) = spec.params
        if n < 1:
            raise ValueError("empty graph needs n >= 1")
        return Graph(n, (0,) * n)
    if kind == "complete":
        (n,) = spec.params
        if n < 1:
            raise ValueError("complete graph needs n >= 1")
        return build_from_edge_list(n, list(itertools.combinations(range(n), 2)))
    if kind == "path":
        (n,) = spec.params
        if n < 1:
            raise ValueError("path needs n >= 1")
        return build_from_edge_list(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "cycle":
        (n,) = spec.params
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return build_from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "star":
        (leaves,) = spec.params
        if leaves < 1:
            raise ValueError("star needs at least one leaf")
        return build_from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
    if kind == "spider":
        legs = spec.params
        if len(legs) < 3:
            raise ValueError("spider needs at least 3 legs")
        if any(k < 1 for k in legs):
            raise ValueError("spider legs must have length >= 1")
        edges = []
        nxt = 1
        for k in legs:
            prev = 0
            for _ in range(k):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
        return build_from_edge_list(nxt, edges)
    if kind == "wheel":
        (spokes,) = spec.params
        if spokes < 3:
            raise ValueError("wheel needs at least 3 spokes")
        edges = [(0, i) for i in range(1, spokes + 1)]
        edges.extend((i, i % spokes + 1) for i in range(1, spokes + 1))
        return build_from_edge_list(spokes + 1, edges)
    if kind == "threshold":
        seq = spec.sequence
        if not seq:
            raise ValueError("threshold creation sequence is empty")
        if seq[0] != "v":
            raise ValueError("threshold sequence must start with 'v'")
        if any(c not in "id" for c in seq[1:]):
            raise ValueError("threshold sequence symbols after 'v' must be 'i' or 'd'")
        edges = []
        for k, c in enumerate(seq[1:], start=1):
            if c == "d":
                edges.extend((j, k) for j in range(k))
        return build_from_edge_list(len(seq), edges)
    if kind == "union":
        left, right = spec.parts
        return disjoint_union(family(left), family(right))
    raise ValueError(f"unknown family kind {kind!r}")


def parse_family(text: str) -> FamilySpec:
    """Parse a CLI family string such as 'path:5', 'spider:2,2,2',
    'threshold:vdd', or 'union:path:3+cycle:4'."""
    if ":" not in text:
        raise ValueError(f"family must look like kind:params, got {text!r}")
    kind, _, rest = text.partition(":")
    if kind == "union":
        pieces = rest.split("+")
        if len(pieces) < 2:
            raise ValueError("union needs at least two '+'-separated parts")
        spec = parse_family(pieces[0])
        for piece in pieces[1:]:
            spec = FamilySpec.union(spec, parse_family(piece))
        return spec
    if kind == "threshold":
        return FamilySpec.threshold(rest)
    if kind == "spider":
        legs = tuple(int(p) for p in rest.split(","))
        return FamilySpec.spider(*legs)
    if kind in ("empty", "complete", "path", "cycle", "star", "wheel"):
        return FamilySpec(kind, (int(rest),))
    raise ValueError(f"unknown family kind {kind!r}")


# ---------------------------------------------------------------------------
# canonical forms and exhaustive enumeration
# ---------------------------------------------------------------------------

ENUMERATION_CAP = 7  # 7! = 5040 permutations keeps minimization trivial


def canonical_form(g: Graph) -> int:
    """Lexicographically minimal upper-triangle bitstring over all relabelings.

    The bitstring is read in graph6 order (columns ascending, rows within a
    column ascending) with the first bit most significant.  Found by placing
    vertices position by position with prefix pruning.
    """
    n = g.n
    total_bits = n * (n - 1) // 2
    if n == 1:
        return 0
    # seed with the identity labeling so pruning has a bound from the start
    best = 0
    for j in range(1, n):
        for i in range(j):
            best = best << 1 | (1 if g.has_edge(i, j) else 0)

    adj = g.adj
    # stack of (perm, used, prefix, nbits)
    stack = [((v,), 1 << v, 0, 0) for v in range(n - 1, -1, -1)]
    while stack:
        perm, used, prefix, nbits = stack.pop()
        j = len(perm)
        if j == n:
            if prefix < best:
                best = prefix
            continue
        for v in range(n - 1, -1, -1):
            if used >> v & 1:
                continue
            col = 0
            row = adj[v]
            for i in range(j):
                col = col << 1 | (row >> perm[i] & 1)
            p2 = prefix << j | col
            nb2 = nbits + j
            if p2 > best >> (total_bits - nb2):
                continue
            stack.append((perm + (v,), used | 1 << v, p2, nb2))
    return best


def graph_from_canonical_bits(n: int, bits: int) -> Graph:
    """Inverse of canonical_form's bit layout for a given n."""
    total_bits = n * (n - 1) // 2
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits >> (total_bits - 1 - k) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def canonical_graph(g: Graph) -> Graph:
    return graph_from_canonical_bits(g.n, canonical_form(g))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and canonical_form(g) == canonical_form(h)


def enumerate_nonisomorphic(n: int):
    """Yield one canonical representative per isomorphism class on n vertices.

    Grown by vertex extension from the (n-1)-vertex classes; every class is
    covered because deleting any vertex of an n-vertex graph leaves an
    (n-1)-vertex graph.  Output is sorted by canonical bitstring.
    """
    if not 1 <= n <= ENUMERATION_CAP:
        raise ValueError(f"enumeration supports 1 <= n <= {ENUMERATION_CAP}, got {n}")
    reps = {0}  # K1
    for k in range(2, n + 1):
        grown = set()
        for bits in reps:
            base = graph_from_canonical_bits(k - 1, bits)
            for mask in range(1 << (k - 1)):
                adj = list(base.adj) + [mask]
                for u in range(k - 1):
                    if mask >> u & 1:
                        adj[u] |= 1 << (k - 1)
                grown.add(canonical_form(Graph(k, tuple(adj))))
        reps = grown
    for bits in sorted(reps):
        yield graph_from_canonical_bits(n, bits)
