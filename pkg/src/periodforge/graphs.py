"""Exact multigraphs with vertex weights.

Vertices are numbered 1..nv, edges 1..ne; the edge *order* is part of the
data (it carries the orientation used by the graph complex).  Self-edges and
parallel edges are allowed everywhere; a self-edge contributes 2 to the
degree of its vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    pass


def _root(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@dataclass(frozen=True)
class Graph:
    """Finite multigraph with non-negative integer vertex weights.

    ``weights[i]`` is the weight of vertex ``i+1``; ``edges[k]`` is the pair
    of endpoints of edge ``k+1`` (``u == v`` encodes a self-edge).
    """

    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        nv = len(self.weights)
        if nv == 0:
            raise GraphError("graph needs at least one vertex")
        for w in self.weights:
            if w < 0:
                raise GraphError("vertex weights must be non-negative")
        for u, v in self.edges:
            if not (1 <= u <= nv and 1 <= v <= nv):
                raise GraphError("edge endpoint out of range")

    # -- basic data -------------------------------------------------------

    @property
    def nv(self) -> int:
        return len(self.weights)

    @property
    def ne(self) -> int:
        return len(self.edges)

    @property
    def edge_ids(self) -> range:
        return range(1, self.ne + 1)

    def endpoints(self, e: int) -> tuple[int, int]:
        if not 1 <= e <= self.ne:
            raise GraphError(f"unknown edge id {e}")
        return self.edges[e - 1]

    def weight(self, v: int) -> int:
        return self.weights[v - 1]

    def degree(self, v: int) -> int:
        d = 0
        for u, w in self.edges:
            if u == v:
                d += 1
            if w == v:
                d += 1
        return d

    def degrees(self) -> tuple[int, ...]:
        d = [0] * self.nv
        for u, w in self.edges:
            d[u - 1] += 1
            d[w - 1] += 1
        return tuple(d)

    # -- connectivity -----------------------------------------------------

    def component_count(self) -> int:
        parent = list(range(self.nv + 1))
        for u, v in self.edges:
            ru, rv = _root(parent, u), _root(parent, v)
            if ru != rv:
                parent[ru] = rv
        return len({_root(parent, v) for v in range(1, self.nv + 1)})

    @property
    def is_connected(self) -> bool:
        return self.component_count() == 1

    def loop_number(self) -> int:
        """First Betti number |E| - |V| + #components."""
        return self.ne - self.nv + self.component_count()

    def genus(self) -> int:
        """Loop number plus total vertex weight (connected graphs only)."""
        if not self.is_connected:
            raise GraphError("genus requires a connected graph")
        return self.loop_number() + sum(self.weights)

    def total_weight(self) -> int:
        return sum(self.weights)

    def is_stable(self) -> bool:
        """Weight-0 vertices need degree >= 3, weight-1 vertices degree >= 1."""
        degs = self.degrees()
        for v in range(1, self.nv + 1):
            w = self.weights[v - 1]
            if w == 0 and degs[v - 1] < 3:
                return False
            if w == 1 and degs[v - 1] < 1:
                return False
        return True

    # -- structure queries --------------------------------------------------

    def has_self_edge(self) -> bool:
        return any(u == v for u, v in self.edges)

    def has_parallel_edges(self) -> bool:
        seen = set()
        for u, v in self.edges:
            key = (u, v) if u <= v else (v, u)
            if key in seen:
                return True
            seen.add(key)
        return False

    def min_degree(self) -> int:
        return min(self.degrees())

    def parallel_class(self, e: int) -> list[int]:
        """Edge ids sharing both endpoints with e (including e itself)."""
        u, v = self.endpoints(e)
        key = (u, v) if u <= v else (v, u)
        out = []
        for k, (a, b) in enumerate(self.edges):
            if ((a, b) if a <= b else (b, a)) == key:
                out.append(k + 1)
        return out

    # -- surgery ------------------------------------------------------------

    def delete_edge(self, e: int) -> "Graph":
        """Remove edge e; vertices untouched, remaining edge order inherited.

        The result may be disconnected; check ``component_count``.
        """
        self.endpoints(e)
        return Graph(self.weights, self.edges[: e - 1] + self.edges[e:])

    def contract_edge(self, e: int, mode: str = "weighted") -> "Graph | None":
        """Contract edge e.

        A non-self edge merges its endpoints (weights add).  For a self-edge
        the two conventions diverge: ``mode="weighted"`` removes the edge and
        increments the base vertex weight, ``mode="zero"`` returns None (the
        distinguished zero graph of the polynomial/complex calculus).
        """
        if mode not in ("weighted", "zero"):
            raise GraphError(f"unknown contraction mode {mode!r}")
        u, v = self.endpoints(e)
        rest = self.edges[: e - 1] + self.edges[e:]
        if u == v:
            if mode == "zero":
                return None
            weights = list(self.weights)
            weights[u - 1] += 1
            return Graph(tuple(weights), rest)
        # merge v into u, then renumber vertices above v down by one
        lo, hi = (u, v) if u < v else (v, u)
        weights = list(self.weights)
        weights[lo - 1] += weights[hi - 1]
        del weights[hi - 1]

        def ren(x: int) -> int:
            if x == hi:
                return lo
            return x - 1 if x > hi else x

        edges = tuple((ren(a), ren(b)) for a, b in rest)
        return Graph(tuple(weights), edges)

    def delete_vertex(self, v: int) -> "Graph":
        """Remove vertex v together with all incident edges."""
        if not 1 <= v <= self.nv:
            raise GraphError(f"unknown vertex {v}")
        if self.nv == 1:
            raise GraphError("cannot delete the only vertex")
        weights = self.weights[: v - 1] + self.weights[v:]

        def ren(x: int) -> int:
            return x - 1 if x > v else x

        edges = tuple((ren(a), ren(b)) for a, b in self.edges
                      if a != v and b != v)
        return Graph(weights, edges)

    def permuted_vertices(self, perm: dict[int, int]) -> "Graph":
        """Relabel vertices by the bijection perm (edge order kept)."""
        if sorted(perm) != list(range(1, self.nv + 1)) or \
                sorted(perm.values()) != list(range(1, self.nv + 1)):
            raise GraphError("perm is not a vertex bijection")
        weights = [0] * self.nv
        for v, t in perm.items():
            weights[t - 1] = self.weights[v - 1]
        edges = tuple((perm[a], perm[b]) for a, b in self.edges)
        return Graph(tuple(weights), edges)

    def reordered_edges(self, order: Sequence[int]) -> "Graph":
        """New graph whose k-th edge is the old edge order[k]."""
        if sorted(order) != list(self.edge_ids):
            raise GraphError("order is not a permutation of the edge ids")
        return Graph(self.weights, tuple(self.edges[e - 1] for e in order))

    # -- misc ----------------------------------------------------------------

    def unweighted(self) -> "Graph":
        return Graph((0,) * self.nv, self.edges)

    def __repr__(self):
        ws = "" if not any(self.weights) else f", weights={self.weights}"
        return f"Graph(nv={self.nv}, edges={list(self.edges)}{ws})"


@dataclass(frozen=True)
class EdgePermutation:
    """Bijection on edge ids 1..n; mapping[i-1] is the image of edge i."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(1, len(self.mapping) + 1)):
            raise GraphError("not a permutation of 1..n")

    def __call__(self, e: int) -> int:
        return self.mapping[e - 1]

    @property
    def parity(self) -> int:
        """Sign of the permutation."""
        n = len(self.mapping)
        seen = [False] * n
        sign = 1
        for i in range(n):
            if seen[i]:
                continue
            j, clen = i, 0
            while not seen[j]:
                seen[j] = True
                j = self.mapping[j] - 1
                clen += 1
            if clen % 2 == 0:
                sign = -sign
        return sign

    def inverse(self) -> "EdgePermutation":
        inv = [0] * len(self.mapping)
        for i, m in enumerate(self.mapping):
            inv[m - 1] = i + 1
        return EdgePermutation(tuple(inv))

    def compose(self, other: "EdgePermutation") -> "EdgePermutation":
        """self after other: (self.compose(other))(e) = self(other(e))."""
        return EdgePermutation(tuple(self(other(e))
                                     for e in range(1, len(self.mapping) + 1)))


def identity_permutation(n: int) -> EdgePermutation:
    return EdgePermutation(tuple(range(1, n + 1)))


# ---------------------------------------------------------------------------
# operations mirroring the module surface
# ---------------------------------------------------------------------------

def loop_number(g: Graph) -> int:
    return g.loop_number()


def genus(g: Graph) -> int:
    return g.genus()


def is_stable(g: Graph) -> bool:
    return g.is_stable()


def contract_edge(g: Graph, e: int, mode: str = "weighted") -> Graph | None:
    return g.contract_edge(e, mode)


def delete_edge(g: Graph, e: int) -> Graph:
    return g.delete_edge(e)


def two_vertex_join(g1: Graph, e1: int, g2: Graph, e2: int,
                    flip: bool = False) -> Graph:
    """Glue g1 and g2 along the endpoints of e1 and e2, dropping both edges.

    The endpoints of e1 = (v1, w1) are identified with those of e2 =
    (v2, w2); ``flip`` matches v1 with w2 instead.  Edge order: g1's edges
    (minus e1) followed by g2's (minus e2).
    """
    v1, w1 = g1.endpoints(e1)
    v2, w2 = g2.endpoints(e2)
    if v1 == w1 or v2 == w2:
        raise GraphError("two_vertex_join needs edges with distinct endpoints")
    if flip:
        v2, w2 = w2, v2
    # vertices: g1's 1..n1, then g2's except v2, w2
    n1 = g1.nv
    ren2: dict[int, int] = {v2: v1, w2: w1}
    nxt = n1 + 1
    for x in range(1, g2.nv + 1):
        if x not in ren2:
            ren2[x] = nxt
            nxt += 1
    weights = list(g1.weights) + [0] * (g2.nv - 2)
    for x in range(1, g2.nv + 1):
        weights[ren2[x] - 1] += g2.weights[x - 1] if x not in (v2, w2) else 0
    weights[v1 - 1] += g2.weights[v2 - 1]
    weights[w1 - 1] += g2.weights[w2 - 1]
    edges = [g1.edges[k] for k in range(g1.ne) if k != e1 - 1]
    edges += [(ren2[a], ren2[b]) for k, (a, b) in enumerate(g2.edges)
              if k != e2 - 1]
    return Graph(tuple(weights), tuple(edges))


def completion(g: Graph) -> Graph:
    """Join a new apex vertex to the four degree-3 vertices of g.

    Requires exactly four vertices of degree 3 and all others of degree 4.
    """
    degs = g.degrees()
    three = [v for v in range(1, g.nv + 1) if degs[v - 1] == 3]
    four = [v for v in range(1, g.nv + 1) if degs[v - 1] == 4]
    if len(three) != 4 or len(three) + len(four) != g.nv:
        raise GraphError("completion needs degree profile (3,3,3,3,4,...,4)")
    apex = g.nv + 1
    edges = g.edges + tuple((v, apex) for v in three)
    return Graph(g.weights + (0,), edges)


def decompletions(gh: Graph) -> list[Graph]:
    """Canonical forms of gh minus each vertex, deduplicated.

    gh must be 4-regular.
    """
    from .canonical import canonical_form

    if any(d != 4 for d in gh.degrees()):
        raise GraphError("decompletions needs a 4-regular graph")
    out: dict[tuple, Graph] = {}
    for v in range(1, gh.nv + 1):
        h = gh.delete_vertex(v)
        if not h.is_connected:
            continue
        rep, _ = canonical_form(h)
        out.setdefault(_graph_key(rep), rep)
    return [out[k] for k in sorted(out)]


def _graph_key(g: Graph) -> tuple:
    return (g.weights, g.edges)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def wheel(n: int) -> Graph:
    """Wheel with n spokes: rim vertices 1..n, hub n+1.

    Edges 1..n are the spokes (vertex i to the hub), edges n+1..2n the rim.
    """
    if n < 3:
        raise GraphError("wheel needs n >= 3")
    hub = n + 1
    edges = [(i, hub) for i in range(1, n + 1)]
    edges += [(i, i % n + 1) for i in range(1, n + 1)]
    return Graph((0,) * (n + 1), tuple(edges))


def zigzag(n: int) -> Graph:
    """Zig-zag with n loops: a chain of triangles on vertices 1..n+1 closed
    by an edge joining the two ends of the chain."""
    if n < 3:
        raise GraphError("zigzag needs n >= 3")
    edges = [(i, i + 1) for i in range(1, n + 1)]
    edges += [(i, i + 2) for i in range(1, n)]
    edges.append((1, n + 1))
    return Graph((0,) * (n + 1), tuple(edges))


def cycle(n: int) -> Graph:
    if n < 1:
        raise GraphError("cycle needs n >= 1")
    if n == 1:
        return Graph((0,), ((1, 1),))
    edges = tuple((i, i % n + 1) for i in range(1, n + 1))
    return Graph((0,) * n, edges)


def banana(n: int) -> Graph:
    """Two vertices joined by n parallel edges (n=3 is the sunrise)."""
    if n < 1:
        raise GraphError("banana needs n >= 1")
    return Graph((0, 0), tuple((1, 2) for _ in range(n)))


def sunrise() -> Graph:
    return banana(3)


def bubble() -> Graph:
    return banana(2)


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete needs n >= 1")
    edges = tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
    return Graph((0,) * n, edges)


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("complete_bipartite needs positive part sizes")
    edges = tuple((i, a + j) for i in range(1, a + 1) for j in range(1, b + 1))
    return Graph((0,) * (a + b), edges)


def dumbbell() -> Graph:
    """Two self-loops joined by a bridge."""
    return Graph((0, 0), ((1, 1), (1, 2), (2, 2)))


_FAMILIES = {
    "wheel": (wheel, 1),
    "zigzag": (zigzag, 1),
    "cycle": (cycle, 1),
    "sunrise": (banana, 1),
    "banana": (banana, 1),
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
}


def builtin_graph(name: str, *sizes: int) -> Graph:
    """Deterministic labeled instance of a named family."""
    if name not in _FAMILIES:
        raise GraphError(f"unknown family {name!r}; have {sorted(_FAMILIES)}")
    fn, arity = _FAMILIES[name]
    if len(sizes) != arity:
        raise GraphError(f"{name} takes {arity} size argument(s)")
    return fn(*sizes)


# ---------------------------------------------------------------------------
# enumeration: degree-sequence driven multigraph generation
# ---------------------------------------------------------------------------

def _degree_sequences(nv: int, total: int, min_deg: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing degree sequences of length nv summing to total."""

    def rec(prefix: list[int], remaining: int, slots: int, cap: int):
        if slots == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        lo = max(min_deg, remaining - cap * (slots - 1))
        hi = min(cap, remaining - min_deg * (slots - 1))
        for d in range(hi, lo - 1, -1):
            prefix.append(d)
            yield from rec(prefix, remaining - d, slots - 1, d)
            prefix.pop()

    yield from rec([], total, nv, total)


def _fill_matrices(degs: tuple[int, ...], max_mult: int,
                   allow_loops: bool) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Symmetric multiplicity matrices realising a degree sequence.

    Rows are filled one at a time with a lexicographic-descent constraint
    between equal-degree vertices whose earlier columns agree; duplicates are
    still possible and must be removed by canonical form downstream.
    """
    nv = len(degs)
    loops = [0] * nv                       # self-edge count (2 per degree)
    m = [[0] * nv for _ in range(nv)]
    rem = list(degs)

    def feasible(i: int) -> bool:
        # remaining degrees on vertices > i must form a loopless multigraph
        tail = rem[i + 1:]
        s = sum(tail)
        if s % 2:
            return allow_loops
        if not tail:
            return s == 0
        if not allow_loops and max(tail) > s - max(tail):
            return False
        return True

    def row_options(i: int) -> Iterator[tuple[int, ...]]:
        # distribute rem[i] over loops (if allowed) and columns i+1..nv-1
        cols = nv - 1 - i
        budget = rem[i]

        def rec(j: int, left: int, row: list[int]):
            if j == cols:
                if left == 0:
                    yield tuple(row)
                return
            cap = min(left, rem[i + 1 + j], max_mult)
            for k in range(cap, -1, -1):
                row.append(k)
                yield from rec(j + 1, left - k, row)
                row.pop()

        if allow_loops:
            for nl in range(budget // 2, -1, -1):
                for tail in rec(0, budget - 2 * nl, []):
                    yield (nl,) + tail
        else:
            for tail in rec(0, budget, []):
                yield (0,) + tail

    def rec_rows(i: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if i == nv:
            yield tuple(tuple(r) for r in m)
            return
        entry_rem = rem[i]
        for opt in row_options(i):
            nl, tail = opt[0], opt[1:]
            # symmetry prune: equal-degree neighbour rows with equal prefix
            if i > 0 and degs[i] == degs[i - 1]:
                same_prefix = all(m[a][i] == m[a][i - 1] for a in range(i - 1))
                if same_prefix:
                    # swapping i-1 and i fixes m[i-1][i]; compare the rest
                    prev_key = (loops[i - 1],) + tuple(
                        m[i - 1][j] for j in range(i + 1, nv))
                    cur_key = (nl,) + tail
                    if cur_key > prev_key:
                        continue
            loops[i] = nl
            for j, k in enumerate(tail):
                m[i][i + 1 + j] = k
                m[i + 1 + j][i] = k
                rem[i + 1 + j] -= k
            m[i][i] = nl
            rem[i] = 0
            if feasible(i):
                yield from rec_rows(i + 1)
            # undo
            rem[i] = entry_rem
            for j, k in enumerate(tail):
                rem[i + 1 + j] += k
                m[i][i + 1 + j] = 0
                m[i + 1 + j][i] = 0
            m[i][i] = 0
            loops[i] = 0

    yield from rec_rows(0)


def _matrix_to_graph(mat: Sequence[Sequence[int]],
                     weights: Sequence[int] | None = None) -> Graph:
    nv = len(mat)
    edges = []
    for i in range(nv):
        for _ in range(mat[i][i]):
            edges.append((i + 1, i + 1))
        for j in range(i + 1, nv):
            for _ in range(mat[i][j]):
                edges.append((i + 1, j + 1))
    w = tuple(weights) if weights is not None else (0,) * nv
    return Graph(w, tuple(edges))


def _connected_multigraphs(nv: int, ne: int, min_deg: int, max_mult: int,
                           allow_loops: bool) -> list[Graph]:
    """All connected multigraphs up to isomorphism, deduplicated."""
    from .canonical import canonical_form

    seen: dict[tuple, Graph] = {}
    for degs in _degree_sequences(nv, 2 * ne, min_deg):
        if not allow_loops and max_mult == 1 and degs[0] > nv - 1:
            continue
        for mat in _fill_matrices(degs, max_mult, allow_loops):
            g = _matrix_to_graph(mat)
            if not g.is_connected:
                continue
            rep, _ = canonical_form(g)
            seen.setdefault(_graph_key(rep), rep)
    return [seen[k] for k in sorted(seen)]


def _vertex_splits(g: Graph, v: int) -> Iterator[Graph]:
    """All graphs obtained by splitting vertex v into two vertices of degree
    >= 3 joined by a new edge (the inverse of edge contraction)."""
    slots = []  # (edge index, which endpoint)
    for k, (a, b) in enumerate(g.edges):
        if a == v:
            slots.append((k, 0))
        if b == v:
            slots.append((k, 1))
    d = len(slots)
    if d < 4:
        return
    w = g.nv + 1  # the new vertex
    # unordered bipartitions with both sides >= 2; fix slots[0] on side A
    for r in range(1, d - 2):
        for rest in itertools.combinations(range(1, d), r):
            stay = {0} | set(rest)
            if not 2 <= len(stay) <= d - 2:
                continue
            edges = [list(e) for e in g.edges]
            for idx, (k, side) in enumerate(slots):
                if idx not in stay:
                    edges[k][side] = w
            edges.append([v, w])
            yield Graph(g.weights + (0,), tuple(tuple(e) for e in edges))


def _all_parallel_gc_graphs(loops: int, edges: int) -> list[Graph]:
    """Min-degree-3 loopless multigraphs in which *every* parallel class has
    multiplicity >= 2.  These force edges <= 2*loops, so the underlying
    simple graph is tiny and can be enumerated directly."""
    from .canonical import canonical_form

    if edges > 2 * loops:
        return []
    nv = edges - loops + 1
    out: dict[tuple, Graph] = {}
    for ne_s in range(nv - 1, edges // 2 + 1):
        for skel in _connected_multigraphs(nv, ne_s, 1, 1, allow_loops=False):
            pairs = skel.edges
            for mults in _compositions(edges, len(pairs), 2):
                edge_list = []
                for (u, v), m in zip(pairs, mults):
                    edge_list.extend([(u, v)] * m)
                g = Graph((0,) * nv, tuple(edge_list))
                if g.min_degree() < 3:
                    continue
                rep, _ = canonical_form(g)
                out.setdefault(_graph_key(rep), rep)
    return list(out.values())


def _compositions(total: int, parts: int, lo: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(lo, total - lo * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, lo):
            yield (first,) + rest


_GC_CACHE: dict[int, dict[int, list[tuple]]] = {}


def _gc_level(loops: int, edges: int) -> list[tuple]:
    """Canonical keys of all GC graphs at the bigrade, built bottom-up.

    Level g+1 is the (g+1)-fold banana.  Every graph one level up either has
    an edge in a parallel class of size one -- and is then a vertex split of
    the level below -- or is covered by the all-parallel enumeration.
    """
    from .canonical import canonical_form

    levels = _GC_CACHE.setdefault(loops, {})
    if edges in levels:
        return levels[edges]
    n0 = loops + 1
    if n0 not in levels:
        rep, _ = canonical_form(banana(n0))
        levels[n0] = [_graph_key(rep)]
    n = max(k for k in levels if k <= edges)
    while n < edges:
        nxt: set[tuple] = set()
        for key in levels[n]:
            g = Graph(*key)
            for v in range(1, g.nv + 1):
                for h in _vertex_splits(g, v):
                    rep, _ = canonical_form(h)
                    nxt.add(_graph_key(rep))
        for g in _all_parallel_gc_graphs(loops, n + 1):
            nxt.add(_graph_key(g))
        n += 1
        levels[n] = sorted(nxt)
    return levels[edges]


def enumerate_gc_graphs(loops: int, edges: int,
                        simple_only: bool = False) -> list[Graph]:
    """Connected multigraphs with the given loop number and edge count,
    no self-edges, minimum degree 3, up to isomorphism.

    With ``simple_only`` parallel-edged graphs are filtered out; that is the
    variant the graph complex consumes (parallel edges only ever produce
    zero classes).
    """
    if loops < 2:
        raise GraphError("graph complex enumeration needs loops >= 2")
    if not loops <= edges <= 3 * loops - 3:
        raise GraphError(
            f"edge count {edges} outside feasible band [{loops}, {3 * loops - 3}]")
    nv = edges - loops + 1
    if nv < 2:
        return []
    out = [Graph(*k) for k in _gc_level(loops, edges)]
    if simple_only:
        out = [g for g in out if not g.has_parallel_edges()]
    return out


def enumerate_stable_weighted(genus_: int, _vertex_cap: int | None = None) -> list[Graph]:
    """All stable weighted graphs of the given genus up to isomorphism."""
    from .canonical import canonical_form

    if genus_ < 0:
        raise GraphError("genus must be non-negative")
    if genus_ == 0:
        return []
    out: dict[tuple, Graph] = {}
    for w_total in range(genus_ + 1):
        h = genus_ - w_total
        # degree counting: 2h + 2v - 2 >= 3*(weight-0) + (weighted) forces
        # v <= 2h + 2*w - 2 for multi-vertex graphs
        vmax = max(1, 2 * h + 2 * w_total - 2)
        if _vertex_cap is not None:
            vmax = min(vmax, _vertex_cap)
        for nv in range(1, vmax + 1):
            ne = h + nv - 1
            for degs in _degree_sequences(nv, 2 * ne, 0):
                if degs and degs[-1] == 0 and nv > 1:
                    continue  # isolated vertex in a multi-vertex graph
                for mat in _fill_matrices(degs, max(1, ne), allow_loops=True):
                    g0 = _matrix_to_graph(mat)
                    if not g0.is_connected:
                        continue
                    degs_g = g0.degrees()
                    # weight assignments: weight>=1 wherever degree < 3
                    for ws in _weightings(degs_g, w_total):
                        g = Graph(ws, g0.edges)
                        if not g.is_stable():
                            continue
                        rep, _ = canonical_form(g)
                        out.setdefault(_graph_key(rep), rep)
    return [out[k] for k in sorted(out)]


def _weightings(degs: tuple[int, ...], total: int) -> Iterator[tuple[int, ...]]:
    nv = len(degs)

    def rec(i: int, left: int, acc: list[int]):
        if i == nv:
            if left == 0:
                yield tuple(acc)
            return
        lo = 0
        if degs[i] < 3:
            lo = 1  # weight-0 vertices need degree >= 3
        if degs[i] == 0:
            lo = 2 if nv == 1 else max(lo, 2)
        for w in range(lo, left + 1):
            acc.append(w)
            yield from rec(i + 1, left - w, acc)
            acc.pop()

    yield from rec(0, total, [])
