"""Bi-invariant forms tr((X^-1 dX)^n), their wedges and graph pullbacks.

Symbolic computations run over the polynomial ring (adjugate matrices, so
no rational functions appear before the final reduction by powers of the
determinant).  Numeric evaluation decomposes each coefficient matrix
dX/dx_v into rank-one terms a b^T; a trace of a product of such terms is a
cycle product of scalars b^T X^-1 a, which turns coefficient extraction
into a subset dynamic programme over the variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .graphs import Graph
from .polynomials import (CycleBasis, LinearForm, LinearFormMatrix, Poly,
                          PolynomialError, cycle_basis, det_poly_general,
                          laplacian)


class FormError(ValueError):
    pass


@dataclass(frozen=True)
class FormSpec:
    """Wedge word omega^{n1} ^ omega^{n2} ^ ...; entries 1 mod 4, >= 5."""

    components: tuple[int, ...]

    def __init__(self, components):
        comps = tuple(int(n) for n in components)
        if not comps:
            raise FormError("empty form specification")
        for n in comps:
            if n < 5 or n % 4 != 1:
                raise FormError(
                    f"component {n}: generators are 1 mod 4 and at least 5")
        if any(a >= b for a, b in zip(comps, comps[1:])):
            raise FormError("components must be strictly increasing")
        object.__setattr__(self, "components", comps)

    @property
    def degree(self) -> int:
        return sum(self.components)

    def __iter__(self):
        return iter(self.components)


def _merge_sign(s1: frozenset, s2: frozenset) -> int:
    inv = 0
    for a in s1:
        for b in s2:
            if b < a:
                inv += 1
    return -1 if inv % 2 else 1


class RationalForm:
    """Differential form Numerator / det^k with polynomial coefficients.

    The numerator maps ascending wedge keys (frozensets of variable ids) to
    polynomials; the determinant is carried along so the object is
    self-contained.  Stored in lowest terms with respect to det.
    """

    __slots__ = ("nvars", "degree", "k", "numer", "det")

    def __init__(self, nvars: int, degree: int, k: int,
                 numer: Mapping[frozenset, Poly], det: Poly,
                 reduce: bool = True):
        self.nvars = nvars
        self.degree = degree
        self.k = k
        self.numer = {frozenset(s): p for s, p in numer.items()
                      if not p.is_zero()}
        for s in self.numer:
            if len(s) != degree:
                raise FormError("wedge key of wrong degree")
        self.det = det
        if reduce:
            self._reduce()

    def _reduce(self):
        if not self.numer:
            self.k = 0
            return
        while self.k > 0:
            divided = {}
            for s, p in self.numer.items():
                q = p.divide_exact(self.det)
                if q is None:
                    return
                divided[s] = q
            self.numer = divided
            self.k -= 1

    def is_zero(self) -> bool:
        return not self.numer

    def __eq__(self, other):
        return (isinstance(other, RationalForm)
                and self.nvars == other.nvars and self.degree == other.degree
                and self.k == other.k and self.numer == other.numer)

    def scale(self, c) -> "RationalForm":
        return RationalForm(self.nvars, self.degree, self.k,
                            {s: p.scale(c) for s, p in self.numer.items()},
                            self.det, reduce=False)

    def wedge(self, other: "RationalForm") -> "RationalForm":
        if self.nvars != other.nvars:
            raise FormError("wedge of forms over different variable sets")
        if self.det != other.det:
            raise FormError("wedge of forms over different denominators")
        out: dict[frozenset, Poly] = {}
        for s1, p1 in self.numer.items():
            for s2, p2 in other.numer.items():
                if s1 & s2:
                    continue
                key = s1 | s2
                term = (p1 * p2).scale(_merge_sign(s1, s2))
                out[key] = out.get(key, Poly.zero(self.nvars)) + term
        return RationalForm(self.nvars, self.degree + other.degree,
                            self.k + other.k, out, self.det)

    def is_closed(self) -> bool:
        """Exterior derivative of numer/det^k vanishes identically."""
        acc: dict[frozenset, Poly] = {}
        ddet = [self.det.derivative(v) for v in range(1, self.nvars + 1)]
        for s, p in self.numer.items():
            for v in range(1, self.nvars + 1):
                if v in s:
                    continue
                term = p.derivative(v) * self.det - ddet[v - 1] * p.scale(self.k)
                if term.is_zero():
                    continue
                sign = _merge_sign(frozenset({v}), s)
                key = s | {v}
                acc[key] = acc.get(key, Poly.zero(self.nvars)) + term.scale(sign)
        return all(p.is_zero() for p in acc.values())

    def coefficient(self, s) -> Poly:
        return self.numer.get(frozenset(s), Poly.zero(self.nvars))

    def evaluate_coefficient(self, s, point: Sequence[Fraction]) -> Fraction:
        """Numerator coefficient of dx_s over det^k, at an exact point."""
        num = self.coefficient(s).evaluate(point)
        den = self.det.evaluate(point) ** self.k
        return num / den

    def chart_top_coefficient(self, point: Sequence[Fraction],
                              chart: int | None = None) -> Fraction:
        """Coefficient against the ascending top wedge of the chart."""
        chart = self.nvars if chart is None else chart
        s = frozenset(v for v in range(1, self.nvars + 1) if v != chart)
        if len(s) != self.degree:
            raise FormError("form degree does not match the chart dimension")
        return self.evaluate_coefficient(s, point)

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "degree": self.degree,
            "det_power": self.k,
            "terms": [[sorted(s), [[list(k), str(c)] for k, c in
                                   sorted(p.coeffs.items())]]
                      for s, p in sorted(self.numer.items(),
                                         key=lambda t: sorted(t[0]))],
        }

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        lines = []
        for s, p in sorted(self.numer.items(), key=lambda t: sorted(t[0])):
            key = "^".join(f"dx{v}" for v in sorted(s))
            lines.append(f"({p!r}) {key}")
        lines.append(f"all over det^{self.k}")
        return "\n".join(lines)

    def __repr__(self):
        return (f"RationalForm(degree={self.degree}, k={self.k}, "
                f"{len(self.numer)} wedge terms)")


# ---------------------------------------------------------------------------
# symbolic path
# ---------------------------------------------------------------------------

def _adjugate(x: LinearFormMatrix) -> list[list[Poly]]:
    m = x.size
    if m == 1:
        return [[Poly.const(x.nvars, 1)]]
    out = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            rows = [r for r in range(m) if r != j]
            cols = [c for c in range(m) if c != i]
            sub = LinearFormMatrix(
                tuple(tuple(x.entries[r][c] for c in cols) for r in rows),
                x.nvars)
            minor = det_poly_general(sub)
            out[i][j] = minor if (i + j) % 2 == 0 else -minor
    return out


def _coefficient_matrices(x: LinearFormMatrix) -> dict[int, list[list[Fraction]]]:
    """A_v = dX/dx_v as constant matrices, for the variables that occur."""
    m = x.size
    out: dict[int, list[list[Fraction]]] = {}
    for i in range(m):
        for j in range(m):
            for v, c in x.entries[i][j].coeffs.items():
                mat = out.setdefault(v, [[Fraction(0)] * m for _ in range(m)])
                mat[i][j] += c
    return out


def _wedge_mat_mul(a, b, m, nvars):
    """Product of matrices with form-valued entries {key: Poly}."""
    out = [[dict() for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for k in range(m):
            aik = a[i][k]
            if not aik:
                continue
            for j in range(m):
                bkj = b[k][j]
                if not bkj:
                    continue
                dest = out[i][j]
                for s1, p1 in aik.items():
                    for s2, p2 in bkj.items():
                        if s1 & s2:
                            continue
                        key = s1 | s2
                        term = (p1 * p2).scale(_merge_sign(s1, s2))
                        if key in dest:
                            dest[key] = dest[key] + term
                        else:
                            dest[key] = term
    for i in range(m):
        for j in range(m):
            out[i][j] = {s: p for s, p in out[i][j].items() if not p.is_zero()}
    return out


def canonical_form_symbolic(x: LinearFormMatrix, n: int) -> RationalForm:
    """tr((X^-1 dX)^n), exactly, reduced to lowest det power.

    Internally computes tr((adj(X) dX)^n) / det^n so every intermediate is
    polynomial.
    """
    if n < 1:
        raise FormError("form degree must be positive")
    det = det_poly_general(x)
    if det.is_zero():
        raise FormError("matrix determinant is identically zero")
    m = x.size
    adj = _adjugate(x)
    coeffs = _coefficient_matrices(x)
    # M = adj(X) dX, entries are 1-forms with polynomial coefficients
    base = [[dict() for _ in range(m)] for _ in range(m)]
    for v, av in coeffs.items():
        for i in range(m):
            for j in range(m):
                p = Poly.zero(x.nvars)
                for k in range(m):
                    if av[k][j]:
                        p = p + adj[i][k].scale(av[k][j])
                if not p.is_zero():
                    base[i][j][frozenset({v})] = p
    acc = base
    for _ in range(n - 1):
        acc = _wedge_mat_mul(acc, base, m, x.nvars)
    tr: dict[frozenset, Poly] = {}
    for i in range(m):
        for s, p in acc[i][i].items():
            tr[s] = tr.get(s, Poly.zero(x.nvars)) + p
    return RationalForm(x.nvars, n, n, tr, det)


def wedge(a: RationalForm, b: RationalForm) -> RationalForm:
    return a.wedge(b)


def graph_canonical_form(g: Graph, spec: FormSpec,
                         basis: CycleBasis | None = None) -> RationalForm:
    """Pullback of the canonical form word to the graph's Laplacian.

    Bi-invariance makes the result independent of the cycle basis.
    """
    lam = laplacian(g, basis)
    form = None
    for n in spec:
        f = canonical_form_symbolic(lam, n)
        form = f if form is None else form.wedge(f)
    return form


# ---------------------------------------------------------------------------
# numeric path: rank-one cycle products
# ---------------------------------------------------------------------------

def _rank_one_terms(mat: Sequence[Sequence[Fraction]]):
    """Decompose a constant matrix as sum of outer products a b^T."""
    m = len(mat)
    a = [list(map(Fraction, row)) for row in mat]
    terms = []
    while True:
        piv = None
        for i in range(m):
            for j in range(m):
                if a[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            return terms
        i0, j0 = piv
        col = [a[i][j0] for i in range(m)]
        row = [a[i0][j] / a[i0][j0] for j in range(m)]
        terms.append((col, row))
        for i in range(m):
            if col[i]:
                for j in range(m):
                    a[i][j] -= col[i] * row[j]


def _invert_exact(mat: Sequence[Sequence[Fraction]]):
    m = len(mat)
    a = [[Fraction(mat[i][j]) for j in range(m)]
         + [Fraction(1) if k == i else Fraction(0) for k in range(m)]
         for i in range(m)]
    for c in range(m):
        piv = next((r for r in range(c, m) if a[r][c]), None)
        if piv is None:
            raise FormError("matrix is singular at the evaluation point")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for r in range(m):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [u - f * w for u, w in zip(a[r], a[c])]
    return [row[m:] for row in a]


class FormEvaluator:
    """Pointwise evaluator for canonical form words on a matrix family.

    Works in exact rational arithmetic (Fraction points) or floats.  The
    chart variable's differential is set to zero; coefficients are taken
    against ascending wedge monomials of the remaining variables.
    """

    def __init__(self, x: LinearFormMatrix, chart: int | None = None):
        self.x = x
        self.nvars = x.nvars
        # chart=None: fix the last variable; chart=0: no chart (all
        # differentials kept, for coefficient dictionaries on full space)
        self.chart = self.nvars if chart is None else chart
        self.m = x.size
        coeffs = _coefficient_matrices(x)
        self.atoms = []  # (var, a, b)
        for v in sorted(coeffs):
            if v == self.chart:
                continue
            for a, b in _rank_one_terms(coeffs[v]):
                self.atoms.append((v, a, b))
        self.variables = sorted({v for v, _, _ in self.atoms})

    # -- scalar Gram data --------------------------------------------------

    def _gram(self, point, exact: bool):
        xp = self.x.evaluate({e: point[e - 1] for e in range(1, self.nvars + 1)})
        if exact:
            xinv = _invert_exact(xp)
        else:
            import numpy as np

            xinv = np.linalg.inv(np.array([[float(c) for c in row]
                                           for row in xp]))
        na = len(self.atoms)
        g = [[None] * na for _ in range(na)]
        for i, (_, _, bi) in enumerate(self.atoms):
            if exact:
                tmp = [sum(Fraction(bi[r]) * xinv[r][c] for r in range(self.m))
                       for c in range(self.m)]
            else:
                import numpy as np

                tmp = np.array([float(v) for v in bi]) @ xinv
            for j, (_, aj, _) in enumerate(self.atoms):
                if exact:
                    g[i][j] = sum(tmp[c] * Fraction(aj[c]) for c in range(self.m))
                else:
                    g[i][j] = float(sum(tmp[c] * float(aj[c])
                                        for c in range(self.m)))
        return g

    # -- coefficients of tr((X^-1 dX)^n) ------------------------------------

    def coefficients(self, n: int, point, exact: bool = False,
                     subsets: Sequence[frozenset] | None = None) -> dict:
        """Map frozenset S (|S| = n) -> coefficient of dx_S at the point.

        Sums cyclic products of Gram scalars over orderings of S, an
        anchored subset DP; the n-fold rotation symmetry is factored out.
        """
        if n % 2 == 0:
            return {s: (Fraction(0) if exact else 0.0)
                    for s in (subsets or [])}
        g = self._gram(point, exact)
        atoms = self.atoms
        na = len(atoms)
        by_var: dict[int, list[int]] = {}
        for i, (v, _, _) in enumerate(atoms):
            by_var.setdefault(v, []).append(i)
        vars_ = self.variables
        zero = Fraction(0) if exact else 0.0
        want = None if subsets is None else {frozenset(s) for s in subsets}
        out: dict[frozenset, object] = {}
        # anchored DP per anchor variable
        for anchor in vars_:
            bigger = [v for v in vars_ if v > anchor]
            if len(bigger) < n - 1:
                continue
            for alpha in by_var[anchor]:
                # paths: dict[(frozenset vars beyond anchor, last atom)] -> value
                paths = {(frozenset(), alpha): 1 if exact else 1.0}
                for _step in range(n - 1):
                    nxt: dict = {}
                    for (tset, last), val in paths.items():
                        for w in bigger:
                            if w in tset:
                                continue
                            flips = sum(1 for t in tset if t > w)
                            sign = -1 if flips % 2 else 1
                            for beta in by_var[w]:
                                gv = g[last][beta]
                                if not gv:
                                    continue
                                key = (tset | {w}, beta)
                                add = val * gv * sign
                                if key in nxt:
                                    nxt[key] = nxt[key] + add
                                else:
                                    nxt[key] = add
                    paths = nxt
                for (tset, last), val in paths.items():
                    s = frozenset({anchor}) | tset
                    if want is not None and s not in want:
                        continue
                    closing = g[last][alpha]
                    if not closing:
                        continue
                    out[s] = out.get(s, zero) + val * closing * n
        if want is not None:
            for s in want:
                out.setdefault(s, zero)
        return out

    def word_top_coefficient(self, spec: FormSpec, point,
                             exact: bool = False):
        """Top chart coefficient of the wedge word at the point."""
        allvars = frozenset(self.variables)
        if len(allvars) != spec.degree:
            raise FormError(
                f"word degree {spec.degree} does not match chart dimension "
                f"{len(allvars)}")
        comps = list(spec.components)
        per = {n: self.coefficients(n, point, exact) for n in set(comps)}
        zero = Fraction(0) if exact else 0.0

        def split(rest: frozenset, idx: int):
            n = comps[idx]
            if idx == len(comps) - 1:
                if len(rest) == n:
                    yield (rest,), per[n].get(rest, zero)
                return
            for combo in itertools.combinations(sorted(rest), n):
                s = frozenset(combo)
                c1 = per[n].get(s, zero)
                if not c1:
                    continue
                for tail, cval in split(rest - s, idx + 1):
                    yield (s,) + tail, c1 * cval

        total = zero
        for parts, val in split(allvars, 0):
            sign = 1
            placed: list[int] = []
            for s in parts:
                sign *= _merge_sign(frozenset(placed), s)
                placed.extend(s)
            total = total + val * sign
        return total


def canonical_form_numeric(x: LinearFormMatrix, spec: FormSpec,
                           point: Sequence, chart: int | None = None,
                           exact: bool = False):
    """Chart coefficient of the spec word at the point.

    The chart variable (default: the last one) is fixed; its differential
    drops out and the coefficient is taken against the ascending top wedge
    of the remaining variables.
    """
    ev = FormEvaluator(x, chart)
    pt = [Fraction(p) for p in point] if exact else [float(p) for p in point]
    return ev.word_top_coefficient(spec, pt, exact=exact)


# ---------------------------------------------------------------------------
# dense oracle (slow, for cross-checks)
# ---------------------------------------------------------------------------

def dense_coefficients(x: LinearFormMatrix, n: int, point,
                       exact: bool = True) -> dict:
    """tr((X^-1 dX)^n) coefficients by direct exterior-algebra products.

    Entirely independent of the cycle-product evaluator: entries of
    X^-1 dX are expanded as 1-forms and multiplied with wedge bookkeeping.
    """
    m = x.size
    pt = {e: Fraction(point[e - 1]) for e in range(1, x.nvars + 1)}
    xp = x.evaluate(pt)
    xinv = _invert_exact(xp)
    coeffs = _coefficient_matrices(x)
    base = [[dict() for _ in range(m)] for _ in range(m)]
    for v, av in coeffs.items():
        for i in range(m):
            for j in range(m):
                val = sum(xinv[i][k] * av[k][j] for k in range(m))
                if val:
                    base[i][j][frozenset({v})] = val

    def mul(a, b):
        out = [[dict() for _ in range(m)] for _ in range(m)]
        for i in range(m):
            for k in range(m):
                if not a[i][k]:
                    continue
                for j in range(m):
                    if not b[k][j]:
                        continue
                    dest = out[i][j]
                    for s1, c1 in a[i][k].items():
                        for s2, c2 in b[k][j].items():
                            if s1 & s2:
                                continue
                            key = s1 | s2
                            dest[key] = dest.get(key, Fraction(0)) + \
                                c1 * c2 * _merge_sign(s1, s2)
        return out

    acc = base
    for _ in range(n - 1):
        acc = mul(acc, base)
    tr: dict[frozenset, Fraction] = {}
    for i in range(m):
        for s, c in acc[i][i].items():
            tr[s] = tr.get(s, Fraction(0)) + c
    result = {s: c for s, c in tr.items() if c}
    if not exact:
        result = {s: float(c) for s, c in result.items()}
    return result


# ---------------------------------------------------------------------------
# batched evaluator for graph Laplacian words (Monte-Carlo hot path)
# ---------------------------------------------------------------------------

class BatchedGraphFormEvaluator:
    """Vectorised chart coefficients of a form word on a graph Laplacian.

    The Laplacian's coefficient matrices are the rank-one cycle outer
    products q_e q_e^T, so one Gram tensor per batch feeds the same subset
    dynamic programme as the scalar evaluator, with numpy arrays over the
    sample axis.
    """

    def __init__(self, g: Graph, spec: FormSpec, chart: int | None = None,
                 basis: CycleBasis | None = None):
        import numpy as np

        self.graph = g
        self.spec = spec
        self.chart = g.ne if chart is None else chart
        if spec.degree != g.ne - 1:
            raise FormError(
                f"word degree {spec.degree} needs {spec.degree + 1} edges, "
                f"graph has {g.ne}")
        if g.ne > 16:
            raise FormError("numeric form evaluation capped at 16 edges")
        b = cycle_basis(g) if basis is None else basis
        lam = laplacian(g, b)
        h = lam.size
        q = np.zeros((g.ne, h))
        for i, vec in enumerate(b.as_dicts()):
            for e, c in vec.items():
                q[e - 1, i] = c
        self.q = q
        self.h = h
        self.chart_vars = [v for v in range(1, g.ne + 1) if v != self.chart]

    def _gram(self, xs):
        """Gram tensor q_e^T Lambda^-1 q_f, diagonally preconditioned.

        Rows where the Laplacian is singular in floats (extreme corner
        samples) are redone in exact rational arithmetic.
        """
        import numpy as np

        lam = np.einsum("be,ei,ej->bij", xs, self.q, self.q)
        d = np.sqrt(np.einsum("bii->bi", lam))
        scaled = lam / d[:, :, None] / d[:, None, :]
        try:
            inv = np.linalg.inv(scaled)
            bad = ~np.isfinite(inv).all(axis=(1, 2))
        except np.linalg.LinAlgError:
            inv = np.empty_like(scaled)
            bad = np.zeros(xs.shape[0], dtype=bool)
            for i in range(xs.shape[0]):
                try:
                    inv[i] = np.linalg.inv(scaled[i])
                except np.linalg.LinAlgError:
                    bad[i] = True
        qd = self.q[None, :, :] / d[:, None, :]
        gram = np.einsum("bei,bij,bfj->bef", qd, inv, qd)
        if bad.any():
            for i in np.flatnonzero(bad):
                gram[i] = self._gram_exact(xs[i])
        return gram

    def _gram_exact(self, x):
        import numpy as np

        from fractions import Fraction

        h = self.h
        pt = [Fraction(float(c)) for c in x]
        lam = [[sum(pt[e] * Fraction(self.q[e, i]) * Fraction(self.q[e, j])
                    for e in range(len(pt))) for j in range(h)]
               for i in range(h)]
        inv = _invert_exact(lam)
        ne = len(pt)
        out = np.zeros((ne, ne))
        for e in range(ne):
            for f in range(ne):
                val = sum(Fraction(self.q[e, i]) * inv[i][j]
                          * Fraction(self.q[f, j])
                          for i in range(h) for j in range(h))
                out[e, f] = float(val)
        return out

    def _component_coefficients(self, n: int, gram):
        """dict frozenset -> (B,) coefficient arrays for tr((X^-1 dX)^n)."""
        import numpy as np

        B = gram.shape[0]
        vars_ = self.chart_vars
        vpos = {v: i for i, v in enumerate(vars_)}
        out: dict[frozenset, np.ndarray] = {}
        for ai, anchor in enumerate(vars_):
            bigger = vars_[ai + 1:]
            if len(bigger) < n - 1:
                continue
            ga = anchor - 1
            # paths keyed by (mask over `bigger`, last var index in graph)
            paths = {(0, ga): np.ones(B)}
            for _ in range(n - 1):
                nxt: dict = {}
                for (mask, last), val in paths.items():
                    for wi, w in enumerate(bigger):
                        bitw = 1 << wi
                        if mask & bitw:
                            continue
                        flips = bin(mask >> (wi + 1)).count("1")
                        term = val * gram[:, last, w - 1]
                        if flips % 2:
                            term = -term
                        key = (mask | bitw, w - 1)
                        if key in nxt:
                            nxt[key] = nxt[key] + term
                        else:
                            nxt[key] = term
                paths = nxt
            for (mask, last), val in paths.items():
                s = frozenset({anchor}) | {bigger[i] for i in range(len(bigger))
                                           if mask >> i & 1}
                closing = gram[:, last, ga]
                acc = val * closing * n
                if s in out:
                    out[s] = out[s] + acc
                else:
                    out[s] = acc
        return out

    def evaluate(self, xs):
        """(B,) array: coefficient of the ascending top chart wedge.

        ``xs`` holds full edge coordinate rows (chart column included).
        """
        import numpy as np

        gram = self._gram(xs)
        comps = list(self.spec.components)
        per = {n: self._component_coefficients(n, gram) for n in set(comps)}
        allvars = frozenset(self.chart_vars)
        B = xs.shape[0]

        def split(rest: frozenset, idx: int):
            n = comps[idx]
            if idx == len(comps) - 1:
                if len(rest) == n and rest in per[n]:
                    yield (rest,), per[n][rest]
                return
            for combo in itertools.combinations(sorted(rest), n):
                s = frozenset(combo)
                c1 = per[n].get(s)
                if c1 is None:
                    continue
                for tail, cval in split(rest - s, idx + 1):
                    yield (s,) + tail, c1 * cval

        total = np.zeros(B)
        for parts, val in split(allvars, 0):
            sign = 1
            placed: list[int] = []
            for s in parts:
                sign *= _merge_sign(frozenset(placed), s)
                placed.extend(s)
            total = total + sign * val
        return total

    def integrand_values(self, xs):
        """f with word = f * Omega: (-1)^chart * top coefficient / x_chart."""
        sign = (-1) ** self.chart
        return sign * self.evaluate(xs) / xs[:, self.chart - 1]
