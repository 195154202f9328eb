"""Tropical importance sampling on the projective simplex of a graph.

The tropical graph polynomial max_T prod_{e not in T} x_e is piecewise
monomial on the simplicial sectors x_{pi(1)} >= ... >= x_{pi(n)}.  The
normalisation of the density x^nu / (Psi^tr)^k against the projective
volume form decomposes over sectors into products of 1/omega(gamma) over
the tails gamma of pi, where

    omega(gamma) = nu(gamma) + |gamma| - k * h(gamma)

and h is the loop number of the edge subset.  A subset table of these
partial sums both computes the normalisation exactly (a rational, the
tropical period) and drives the sampler: sectors are drawn by walking the
subset lattice, the coordinates by power-law draws.

Positivity of omega on proper nonempty subsets is exactly the convergence
criterion; for nu = 0 and k = 2 it is subdivergence-freeness.
"""

from __future__ import annotations

import math

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graphs import Graph, GraphError, _root


class DivergentIntegrandError(ValueError):
    """The tropical normalisation diverges; carries one offending subset."""

    def __init__(self, subset, omega):
        self.subset = tuple(subset)
        self.omega = omega
        super().__init__(
            f"edge subset {self.subset} has omega = {omega} <= 0; "
            "the tropical measure diverges")


def _subset_loop_numbers(g: Graph) -> np.ndarray:
    """Loop number of every edge subset, indexed by bitmask."""
    n = g.ne
    ends = [(u, v) for u, v in g.edges]
    h = np.zeros(1 << n, dtype=np.int8)
    for mask in range(1, 1 << n):
        parent = list(range(g.nv + 1))
        edges = 0
        verts = set()
        loops = 0
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            u, v = ends[i]
            verts.add(u)
            verts.add(v)
            edges += 1
            ru, rv = _root(parent, u), _root(parent, v)
            if ru == rv:
                loops += 1
            else:
                parent[ru] = rv
        h[mask] = loops
    return h


@dataclass
class TropicalMeasure:
    """Exact subset tables for one density x^nu / (Psi^tr)^k."""

    graph: Graph
    nu: tuple[int, ...]
    k: Fraction
    tropical_period: Fraction
    omegas: list[Fraction]            # by bitmask
    subset_weights: list[Fraction]    # T-table by bitmask
    h: np.ndarray

    @property
    def n(self) -> int:
        return self.graph.ne


def build_measure(g: Graph, nu: Sequence[int] | None = None,
                  k: Fraction | int | None = None) -> TropicalMeasure:
    """Exact preprocessing pass; k defaults to the projective exponent.

    Raises DivergentIntegrandError when some proper subset makes the
    tropical measure infinite, and GraphError when the density is not
    projectively homogeneous.
    """
    n = g.ne
    if n > 16:
        raise GraphError("tropical preprocessing capped at 16 edges")
    if n < 2:
        raise GraphError("need at least two edges to integrate")
    nu = tuple(int(x) for x in (nu if nu is not None else [0] * n))
    if len(nu) != n or any(x < 0 for x in nu):
        raise GraphError("nu needs one non-negative exponent per edge")
    hloop = g.loop_number()
    if k is None:
        k = Fraction(sum(nu) + n, hloop)
    k = Fraction(k)
    h = _subset_loop_numbers(g)
    full = (1 << n) - 1
    if Fraction(sum(nu) + n) - k * int(h[full]) != 0:
        raise GraphError(
            f"density x^nu/(Psi^tr)^{k} is not projectively homogeneous")
    nusum = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        nusum[mask] = nusum[mask & (mask - 1)] + nu[low]
    omegas = [Fraction(0)] * (1 << n)
    for mask in range(1, 1 << n):
        om = nusum[mask] + bin(mask).count("1") - k * int(h[mask])
        omegas[mask] = om
        if mask != full and om <= 0:
            subset = tuple(i + 1 for i in range(n) if mask >> i & 1)
            raise DivergentIntegrandError(subset, om)
    T = [Fraction(0)] * (1 << n)
    T[0] = Fraction(1)
    for mask in range(1, 1 << n):
        acc = Fraction(0)
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            acc += T[mask & ~(1 << i)]
        T[mask] = acc if mask == full else acc / omegas[mask]
    return TropicalMeasure(g, nu, k, T[full], omegas, T, h)


class TropicalSampler:
    """Vectorised sampler for a tropical measure.

    Draws are deterministic functions of the numpy Generator handed in;
    points come back as log-coordinates normalised to max log x = 0,
    together with log Psi^tr at the point.
    """

    def __init__(self, measure: TropicalMeasure):
        self.measure = measure
        n = measure.n
        size = 1 << n
        self.n = n
        T = measure.subset_weights
        self.cum = np.zeros((size, n))
        self.bit = np.zeros((size, n), dtype=np.int8)
        self.hdrop = np.zeros((size, n), dtype=np.int8)
        self.omega_f = np.ones(size)
        h = measure.h
        for mask in range(1, size):
            bits = [i for i in range(n) if mask >> i & 1]
            weights = [float(T[mask & ~(1 << i)]) for i in bits]
            total = sum(weights)
            acc = 0.0
            for j, (i, w) in enumerate(zip(bits, weights)):
                acc += w / total
                self.cum[mask, j] = acc
                self.bit[mask, j] = i
                self.hdrop[mask, j] = h[mask] - h[mask & ~(1 << i)]
            self.cum[mask, len(bits):] = 1.0
            self.omega_f[mask] = float(measure.omegas[mask])

    def sample(self, rng: np.random.Generator, count: int):
        """Returns (logx (count, n), log_psi_tr (count,))."""
        n = self.n
        full = (1 << n) - 1
        state = np.full(count, full, dtype=np.int64)
        logx = np.zeros(count)
        logxs = np.zeros((count, n))
        logpsitr = np.zeros(count)
        rows = np.arange(count)
        for step in range(n):
            if step > 0:
                u = rng.random(count)
                logx = logx + np.log(u) / self.omega_f[state]
            r = rng.random(count)
            idx = (r[:, None] > self.cum[state]).sum(axis=1)
            e = self.bit[state, idx].astype(np.int64)
            logxs[rows, e] = logx
            logpsitr += np.where(self.hdrop[state, idx] == 1, logx, 0.0)
            state = state & ~(1 << e)
        return logxs, logpsitr


def tropical_sample(g: Graph, k, seed: int, count: int,
                    nu: Sequence[int] | None = None):
    """Convenience wrapper: (points on the simplex, importance weights).

    Points are normalised to sum 1.  The weight of a point x is the
    reciprocal density  tropical_period * (Psi^tr(x))^k / x^nu,  so that
    mean(weight * f(points)) estimates the projective integral of f.

    k = 0 with trivial nu falls back to the plain uniform (Dirichlet)
    sampler; its constant weight 1/(n-1)! is the volume of the simplex
    against the projective form.
    """
    if (k == 0 or k is None) and not (nu and any(nu)):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
        xs = rng.dirichlet(np.ones(g.ne), size=count)
        return xs, np.full(count, 1.0 / math.factorial(g.ne - 1))
    measure = build_measure(g, nu, k)
    sampler = TropicalSampler(measure)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    logxs, logpsitr = sampler.sample(rng, count)
    xs = np.exp(logxs)
    total = xs.sum(axis=1, keepdims=True)
    xs = xs / total
    # psi_tr is homogeneous of degree h: shift its log to the simplex scale
    scale = -np.log(total[:, 0])
    hfull = int(measure.h[(1 << measure.n) - 1])
    logpsitr_simplex = logpsitr + hfull * scale
    lognu = (np.log(xs) * np.array(measure.nu)).sum(axis=1)
    weights = np.exp(float(measure.k) * logpsitr_simplex - lognu) \
        * float(measure.tropical_period)
    return xs, weights
