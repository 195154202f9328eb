"""Graph polynomials, cycle bases and graph Laplacian matrices, all exact.

The spanning-tree polynomial of a graph is multilinear with unit
coefficients; it is stored as a map from edge-id subsets to integers.
General sparse polynomials (needed for determinants of symbolic matrices)
live in :class:`Poly`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .graphs import Graph, GraphError, _root


class PolynomialError(ValueError):
    pass


# ---------------------------------------------------------------------------
# multilinear polynomials over the edge variables
# ---------------------------------------------------------------------------

class MultilinearPoly:
    """Exact integer polynomial, at most degree one in each edge variable.

    Monomials are frozensets of edge ids.  The zero polynomial is the empty
    map; the constant 1 is {frozenset(): 1}.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[frozenset, int] | None = None):
        self.coeffs = {}
        if coeffs:
            for k, c in coeffs.items():
                if c:
                    self.coeffs[frozenset(k)] = c

    @classmethod
    def zero(cls) -> "MultilinearPoly":
        return cls()

    @classmethod
    def one(cls) -> "MultilinearPoly":
        return cls({frozenset(): 1})

    @classmethod
    def monomial(cls, edge_ids: Iterable[int], coeff: int = 1) -> "MultilinearPoly":
        return cls({frozenset(edge_ids): coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, MultilinearPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return MultilinearPoly(out)

    def __sub__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) - c
        return MultilinearPoly(out)

    def scale(self, c: int) -> "MultilinearPoly":
        return MultilinearPoly({k: c * v for k, v in self.coeffs.items()})

    def times_var(self, e: int) -> "MultilinearPoly":
        out = {}
        for k, c in self.coeffs.items():
            if e in k:
                raise PolynomialError(f"variable x{e} already present")
            out[k | {e}] = c
        return MultilinearPoly(out)

    def relabel(self, mapping: Mapping[int, int]) -> "MultilinearPoly":
        return MultilinearPoly(
            {frozenset(mapping[e] for e in k): c for k, c in self.coeffs.items()})

    def restrict_zero(self, e: int) -> "MultilinearPoly":
        """Set x_e = 0."""
        return MultilinearPoly({k: c for k, c in self.coeffs.items() if e not in k})

    def degrees(self) -> set[int]:
        return {len(k) for k in self.coeffs}

    def is_homogeneous(self, degree: int) -> bool:
        return all(len(k) == degree for k in self.coeffs)

    def evaluate(self, point: Mapping[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for k, c in self.coeffs.items():
            term = Fraction(c)
            for e in k:
                term *= point[e]
            total += term
        return total

    def evaluate_floats(self, xs) -> "object":
        """Vectorised evaluation; xs has shape (batch, nvars), 1-based ids."""
        import numpy as np

        out = np.zeros(xs.shape[0])
        for k, c in self.coeffs.items():
            term = np.full(xs.shape[0], float(c))
            for e in k:
                term = term * xs[:, e - 1]
            out += term
        return out

    def terms(self) -> list[tuple[int, tuple[int, ...]]]:
        """(coefficient, sorted edge ids), monomials in lexicographic order."""
        items = [(tuple(sorted(k)), c) for k, c in self.coeffs.items()]
        items.sort()
        return [(c, k) for k, c in items]

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for c, k in self.terms():
            factors = [f"x{e}" for e in k]
            if c != 1 or not factors:
                factors = [str(c)] + factors
            parts.append("*".join(factors))
        return " + ".join(parts)

    def to_json(self) -> list:
        return [[c, list(k)] for c, k in self.terms()]

    def __repr__(self):
        return f"MultilinearPoly({self.to_text()})"


# ---------------------------------------------------------------------------
# general sparse polynomials (exponent vectors)
# ---------------------------------------------------------------------------

def _num(c):
    """Normalise an exact coefficient: integral Fractions become ints."""
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    return c


class Poly:
    """Sparse exact polynomial; coefficients are ints or Fractions."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: Mapping[tuple, Fraction] | None = None):
        self.nvars = nvars
        self.coeffs: dict[tuple, Fraction] = {}
        if coeffs:
            for k, c in coeffs.items():
                c = _num(c)
                if c:
                    self.coeffs[tuple(k)] = c

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        """x_i with 1-based index."""
        e = [0] * nvars
        e[i - 1] = 1
        return cls(nvars, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.nvars == other.nvars
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return Poly(self.nvars, out)

    def __sub__(self, other: "Poly") -> "Poly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) - c
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {k: -c for k, c in self.coeffs.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict[tuple, Fraction] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return Poly(self.nvars, out)

    def scale(self, c) -> "Poly":
        c = _num(c)
        return Poly(self.nvars, {k: c * v for k, v in self.coeffs.items()})

    def total_degree(self) -> int:
        return max((sum(k) for k in self.coeffs), default=0)

    def leading(self) -> tuple[tuple, Fraction]:
        k = max(self.coeffs)
        return k, self.coeffs[k]

    def divide_exact(self, divisor: "Poly") -> "Poly | None":
        """Exact quotient self / divisor, or None if it does not divide."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = dict(self.coeffs)
        quot: dict[tuple, Fraction] = {}
        dk, dc = divisor.leading()
        d_items = list(divisor.coeffs.items())
        while rem:
            rk = max(rem)
            rc = rem[rk]
            qk = tuple(a - b for a, b in zip(rk, dk))
            if any(x < 0 for x in qk):
                return None
            if isinstance(rc, int) and isinstance(dc, int) and rc % dc == 0:
                qc = rc // dc
            else:
                qc = Fraction(rc) / Fraction(dc)
            quot[qk] = quot.get(qk, 0) + qc
            for k2, c2 in d_items:
                k = tuple(a + b for a, b in zip(qk, k2))
                nc = rem.get(k, 0) - qc * c2
                if nc:
                    rem[k] = nc
                else:
                    rem.pop(k, None)
        return Poly(self.nvars, quot)

    def derivative(self, i: int) -> "Poly":
        """d/dx_i, 1-based."""
        out: dict[tuple, Fraction] = {}
        for k, c in self.coeffs.items():
            if k[i - 1]:
                k2 = list(k)
                k2[i - 1] -= 1
                out[tuple(k2)] = out.get(tuple(k2), 0) + c * k[i - 1]
        return Poly(self.nvars, out)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for k, c in self.coeffs.items():
            term = Fraction(c)
            for i, e in enumerate(k):
                if e:
                    term *= Fraction(point[i]) ** e
            total += term
        return total

    def evaluate_floats(self, xs):
        import numpy as np

        out = np.zeros(xs.shape[0])
        for k, c in self.coeffs.items():
            term = np.full(xs.shape[0], float(c))
            for i, e in enumerate(k):
                if e:
                    term = term * xs[:, i] ** e
            out += term
        return out

    def to_multilinear(self) -> MultilinearPoly:
        out = {}
        for k, c in self.coeffs.items():
            if any(e > 1 for e in k):
                raise PolynomialError("polynomial is not multilinear")
            if c != int(c):
                raise PolynomialError("polynomial is not integral")
            out[frozenset(i + 1 for i, e in enumerate(k) if e)] = int(c)
        return MultilinearPoly(out)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            mono = "*".join(f"x{i+1}^{e}" if e > 1 else f"x{i+1}"
                            for i, e in enumerate(k) if e)
            parts.append(f"{c}" + ("*" + mono if mono else ""))
        return "Poly(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# linear forms and matrices of linear forms
# ---------------------------------------------------------------------------

class LinearForm:
    """c0 + sum_e c_e x_e with exact rational coefficients."""

    __slots__ = ("const", "coeffs")

    def __init__(self, coeffs: Mapping[int, Fraction] | None = None, const=0):
        self.const = Fraction(const)
        self.coeffs = {e: Fraction(c) for e, c in (coeffs or {}).items() if c}

    def __add__(self, other: "LinearForm") -> "LinearForm":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LinearForm(out, self.const + other.const)

    def scale(self, c) -> "LinearForm":
        c = Fraction(c)
        return LinearForm({e: c * v for e, v in self.coeffs.items()},
                          c * self.const)

    def __eq__(self, other):
        return (isinstance(other, LinearForm) and self.const == other.const
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.const, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs and self.const == 0

    def evaluate(self, point: Mapping[int, Fraction]) -> Fraction:
        return self.const + sum((c * Fraction(point[e])
                                 for e, c in self.coeffs.items()), Fraction(0))

    def to_poly(self, nvars: int) -> Poly:
        p = Poly.const(nvars, self.const)
        for e, c in self.coeffs.items():
            p = p + Poly.var(nvars, e).scale(c)
        return p

    def __repr__(self):
        parts = [] if self.const == 0 else [str(self.const)]
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            parts.append(f"x{e}" if c == 1 else f"-x{e}" if c == -1 else f"{c}*x{e}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


@dataclass(frozen=True)
class LinearFormMatrix:
    """Square matrix whose entries are degree <= 1 exact polynomials."""

    entries: tuple[tuple[LinearForm, ...], ...]
    nvars: int
    symmetric: bool = False

    def __post_init__(self):
        m = len(self.entries)
        for row in self.entries:
            if len(row) != m:
                raise PolynomialError("matrix is not square")
        if self.symmetric:
            for i in range(m):
                for j in range(i):
                    if self.entries[i][j] != self.entries[j][i]:
                        raise PolynomialError("matrix is not symmetric")

    @property
    def size(self) -> int:
        return len(self.entries)

    def evaluate(self, point: Mapping[int, Fraction]) -> list[list[Fraction]]:
        return [[f.evaluate(point) for f in row] for row in self.entries]

    def assemble_batch(self, xs):
        """(batch, size, size) float array at the rows of xs (1-based vars)."""
        import numpy as np

        b = xs.shape[0]
        m = self.size
        out = np.zeros((b, m, m))
        for i in range(m):
            for j in range(m):
                f = self.entries[i][j]
                acc = np.full(b, float(f.const))
                for e, c in f.coeffs.items():
                    acc = acc + float(c) * xs[:, e - 1]
                out[:, i, j] = acc
        return out

    def transpose(self) -> "LinearFormMatrix":
        m = self.size
        return LinearFormMatrix(
            tuple(tuple(self.entries[j][i] for j in range(m)) for i in range(m)),
            self.nvars, self.symmetric)


def generic_matrix(m: int, symmetric: bool = False) -> LinearFormMatrix:
    """Matrix of independent variables; symmetric uses m(m+1)/2 of them.

    Variables are numbered along the diagonal first, then the upper triangle
    row by row, matching the displays used in the worked examples.
    """
    if symmetric:
        # x1..xm on the diagonal, then x_{m+1}.. in the upper triangle
        idx = {}
        nxt = m + 1
        for i in range(m):
            idx[(i, i)] = i + 1
        for i in range(m):
            for j in range(i + 1, m):
                idx[(i, j)] = nxt
                idx[(j, i)] = nxt
                nxt += 1
        nvars = m * (m + 1) // 2
        rows = tuple(tuple(LinearForm({idx[(i, j)]: 1}) for j in range(m))
                     for i in range(m))
        return LinearFormMatrix(rows, nvars, symmetric=True)
    rows = tuple(tuple(LinearForm({i * m + j + 1: 1}) for j in range(m))
                 for i in range(m))
    return LinearFormMatrix(rows, m * m, symmetric=False)


def generic_2x2() -> LinearFormMatrix:
    """[[x1, x3], [x4, x2]]; the numbering makes the signs tidy."""
    rows = ((LinearForm({1: 1}), LinearForm({3: 1})),
            (LinearForm({4: 1}), LinearForm({2: 1})))
    return LinearFormMatrix(rows, 4, symmetric=False)


def generic_symmetric(m: int) -> LinearFormMatrix:
    """Symmetric matrix with diagonal x1..xm, off-diagonals x_{m+1}..."""
    return generic_matrix(m, symmetric=True)


# ---------------------------------------------------------------------------
# cycle space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleBasis:
    """Signed edge-incidence vectors spanning the cycle space.

    Edge orientation convention: source is the smaller endpoint.  Vectors
    are maps edge id -> coefficient in {-1, 0, +1} (stored sparsely).
    """

    vectors: tuple[tuple[tuple[int, int], ...], ...]  # ((edge, coeff), ...)
    ne: int

    def as_dicts(self) -> list[dict[int, int]]:
        return [dict(v) for v in self.vectors]

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def transformed(self, p: Sequence[Sequence[int]]) -> "CycleBasis":
        """New basis c'_j = sum_i p[i][j] * c_i (integer matrix p)."""
        h = self.rank
        old = self.as_dicts()
        new = []
        for j in range(h):
            acc: dict[int, int] = {}
            for i in range(h):
                for e, c in old[i].items():
                    acc[e] = acc.get(e, 0) + p[i][j] * c
            new.append(tuple(sorted((e, c) for e, c in acc.items() if c)))
        return CycleBasis(tuple(new), self.ne)


def edge_orientation(g: Graph, e: int) -> tuple[int, int]:
    u, v = g.endpoints(e)
    return (u, v) if u <= v else (v, u)


def cycle_basis(g: Graph) -> CycleBasis:
    """Fundamental cycles of the greedy lowest-edge-id spanning tree.

    Each non-tree edge appears in exactly one vector, with coefficient +1;
    a self-edge forms the one-element cycle {e: +1}.
    """
    if not g.is_connected:
        raise GraphError("cycle_basis needs a connected graph")
    parent = list(range(g.nv + 1))
    tree: list[int] = []
    rest: list[int] = []
    for e in g.edge_ids:
        u, v = g.endpoints(e)
        if u == v:
            rest.append(e)
            continue
        ru, rv = _root(parent, u), _root(parent, v)
        if ru == rv:
            rest.append(e)
        else:
            parent[ru] = rv
            tree.append(e)
    # tree adjacency for path finding
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, g.nv + 1)}
    for e in tree:
        s, t = edge_orientation(g, e)
        adj[s].append((t, e))
        adj[t].append((s, e))

    def tree_path(a: int, b: int) -> list[tuple[int, int]]:
        """Edges (edge id, direction) walking a -> b; direction +1 means the
        walk agrees with the edge orientation."""
        prev: dict[int, tuple[int, int, int]] = {a: (0, 0, 0)}
        stack = [a]
        while stack:
            x = stack.pop()
            if x == b:
                break
            for y, e in adj[x]:
                if y not in prev:
                    s, t = edge_orientation(g, e)
                    prev[y] = (x, e, 1 if (s, t) == (x, y) else -1)
                    stack.append(y)
        path = []
        x = b
        while x != a:
            px, e, d = prev[x]
            path.append((e, d))
            x = px
        path.reverse()
        return path

    vectors = []
    for e in sorted(rest):
        u, v = g.endpoints(e)
        if u == v:
            vectors.append(((e, 1),))
            continue
        s, t = edge_orientation(g, e)
        coeffs = {e: 1}
        for te, d in tree_path(t, s):
            coeffs[te] = coeffs.get(te, 0) + d
        vectors.append(tuple(sorted((k, c) for k, c in coeffs.items() if c)))
    return CycleBasis(tuple(vectors), g.ne)


def explicit_basis(vectors: Sequence[Mapping[int, int]], ne: int) -> CycleBasis:
    """Build a CycleBasis from explicit coefficient maps."""
    return CycleBasis(tuple(tuple(sorted(v.items())) for v in vectors), ne)


def validate_cycle_basis(g: Graph, b: CycleBasis) -> None:
    """Check b lies in the kernel of the boundary map and is independent."""
    if b.ne != g.ne:
        raise PolynomialError("basis/graph edge count mismatch")
    for vec in b.as_dicts():
        boundary: dict[int, int] = {}
        for e, c in vec.items():
            s, t = edge_orientation(g, e)
            boundary[t] = boundary.get(t, 0) + c
            boundary[s] = boundary.get(s, 0) - c
        if any(boundary.values()):
            raise PolynomialError("vector is not a cycle")
    # rank over Q
    rows = [[Fraction(vec.get(e, 0)) for e in g.edge_ids] for vec in b.as_dicts()]
    if _rank_fraction(rows) != len(rows):
        raise PolynomialError("cycle vectors are dependent")
    if len(rows) != g.loop_number():
        raise PolynomialError("basis does not span the cycle space")


def _rank_fraction(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        rank += 1
    return rank


def laplacian(g: Graph, basis: CycleBasis | None = None,
              validate: bool = True) -> LinearFormMatrix:
    """Gram matrix of the cycle basis under <e_i, e_j> = delta_ij x_i."""
    if basis is None:
        basis = cycle_basis(g)
    if validate:
        validate_cycle_basis(g, basis)
    vecs = basis.as_dicts()
    h = len(vecs)
    rows = []
    for i in range(h):
        row = []
        for j in range(h):
            coeffs: dict[int, int] = {}
            for e, ci in vecs[i].items():
                cj = vecs[j].get(e, 0)
                if cj:
                    coeffs[e] = coeffs.get(e, 0) + ci * cj
            row.append(LinearForm(coeffs))
        rows.append(tuple(row))
    return LinearFormMatrix(tuple(rows), g.ne, symmetric=True)


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------

def det_poly_general(m: LinearFormMatrix) -> Poly:
    """Exact determinant by fraction-free Bareiss elimination over Poly."""
    n = m.size
    a = [[m.entries[i][j].to_poly(m.nvars) for j in range(n)] for i in range(n)]
    if n == 0:
        return Poly.const(m.nvars, 1)
    sign = 1
    prev = Poly.const(m.nvars, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            piv = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if piv is None:
                return Poly.zero(m.nvars)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                q = num.divide_exact(prev)
                if q is None:
                    raise PolynomialError("Bareiss division failed")
                a[i][j] = q
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det.scale(sign) if sign < 0 else det


def det_poly(m: LinearFormMatrix) -> MultilinearPoly:
    """Determinant of a Laplacian-type matrix as a multilinear polynomial."""
    return det_poly_general(m).to_multilinear()


# ---------------------------------------------------------------------------
# the graph polynomial
# ---------------------------------------------------------------------------

_PSI_CACHE: dict[tuple, MultilinearPoly] = {}
_DIRECT_LIMIT = 12


def spanning_trees(g: Graph) -> list[frozenset]:
    """Edge sets of all spanning trees (self-edges excluded automatically)."""
    non_self = [e for e in g.edge_ids if g.edges[e - 1][0] != g.edges[e - 1][1]]
    want = g.nv - 1
    trees = []
    for combo in itertools.combinations(non_self, want):
        parent = list(range(g.nv + 1))
        ok = True
        for e in combo:
            u, v = g.endpoints(e)
            ru, rv = _root(parent, u), _root(parent, v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            trees.append(frozenset(combo))
    return trees


def _psi_direct(g: Graph) -> MultilinearPoly:
    all_edges = frozenset(g.edge_ids)
    coeffs = {all_edges - t: 1 for t in spanning_trees(g)}
    return MultilinearPoly(coeffs)


def _edge_rank_map(ids: Sequence[int], removed: int) -> dict[int, int]:
    """new id -> old id after deleting `removed` and renumbering densely."""
    kept = [e for e in ids if e != removed]
    return {k + 1: old for k, old in enumerate(kept)}


def _psi_recursive(g: Graph) -> MultilinearPoly:
    from .canonical import canonical_form

    if not g.is_connected:
        return MultilinearPoly.zero()
    if g.ne <= _DIRECT_LIMIT:
        return _psi_direct(g)
    rep, perm = canonical_form(g)
    key = (rep.weights, rep.edges)
    cached = _PSI_CACHE.get(key)
    if cached is None:
        # pick a self-edge if any, else the first edge
        e = next((i for i in rep.edge_ids
                  if rep.edges[i - 1][0] == rep.edges[i - 1][1]), 1)
        back = _edge_rank_map(list(rep.edge_ids), e)
        deleted = rep.delete_edge(e)
        psi_del = _psi_recursive(deleted).relabel(back).times_var(e) \
            if deleted.component_count() == 1 else MultilinearPoly.zero()
        contracted = rep.contract_edge(e, mode="zero")
        psi_con = (_psi_recursive(contracted).relabel(back)
                   if contracted is not None else MultilinearPoly.zero())
        cached = psi_del + psi_con
        _PSI_CACHE[key] = cached
    inv = perm.inverse()
    return cached.relabel({e: inv(e) for e in rep.edge_ids})


def graph_polynomial(g: Graph) -> MultilinearPoly:
    """Sum over spanning trees of the complementary edge monomials.

    Vertex weights are ignored; a disconnected graph gives the zero
    polynomial.
    """
    if not g.is_connected:
        return MultilinearPoly.zero()
    return _psi_recursive(g)


def contraction_deletion_split(g: Graph, e: int) -> tuple[MultilinearPoly, MultilinearPoly]:
    """(psi of g minus e, psi of g contract e), in g's edge variables.

    The deletion part is zero when deletion disconnects; the contraction
    part is zero when e is a self-edge.
    """
    u, v = g.endpoints(e)
    back = _edge_rank_map(list(g.edge_ids), e)
    deleted = g.delete_edge(e)
    psi_del = (graph_polynomial(deleted).relabel(back)
               if deleted.component_count() == 1 else MultilinearPoly.zero())
    if u == v:
        return psi_del, MultilinearPoly.zero()
    contracted = g.contract_edge(e, mode="zero")
    psi_con = graph_polynomial(contracted).relabel(back)
    return psi_del, psi_con


# ---------------------------------------------------------------------------
# subdivergences
# ---------------------------------------------------------------------------

def _subset_loop_number(g: Graph, edge_subset: Sequence[int]) -> int:
    verts = set()
    for e in edge_subset:
        u, v = g.endpoints(e)
        verts.update((u, v))
    idx = {v: i for i, v in enumerate(verts)}
    parent = list(range(len(verts)))
    comps = len(verts)
    for e in edge_subset:
        u, v = g.endpoints(e)
        ru, rv = _root(parent, idx[u]), _root(parent, idx[v])
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return len(edge_subset) - len(verts) + comps


def divergent_subgraphs(g: Graph) -> list[tuple[int, ...]]:
    """Strict edge subsets gamma with |gamma| <= 2 h(gamma).

    Empty iff the graph is subdivergence-free.  Exhaustive over subsets,
    capped at 16 edges.
    """
    if g.ne > 16:
        raise GraphError("subdivergence scan capped at 16 edges")
    out = []
    ids = list(g.edge_ids)
    for mask in range(1, (1 << g.ne) - 1):
        subset = [ids[i] for i in range(g.ne) if mask >> i & 1]
        if len(subset) <= 2 * _subset_loop_number(g, subset):
            out.append(tuple(subset))
    out.sort(key=lambda s: (len(s), s))
    return out


def is_subdivergence_free(g: Graph) -> bool:
    return not divergent_subgraphs(g)
