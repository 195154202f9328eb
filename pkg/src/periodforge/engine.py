"""Monte-Carlo evaluation of Feynman residues and canonical integrals.

Estimates are importance-weighted means under the tropical measure, split
into shards with independently seeded streams; the reduction is fixed in
shard order, so results are bit-identical for a given (seed, samples,
sampler) regardless of thread count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graphs import Graph, GraphError
from .polynomials import MultilinearPoly, cycle_basis, laplacian
from .forms import BatchedGraphFormEvaluator, FormSpec
from .tropical import TropicalSampler, build_measure
from .graphcomplex import ChainVector

_SHARD = 65536


class IntegrationError(RuntimeError):
    pass


class NonFinitePointError(IntegrationError):
    """A sampled point produced NaN/overflow; carries the point."""

    def __init__(self, point):
        self.point = point
        super().__init__(
            "non-finite integrand value at x = "
            f"{[float(c) for c in point]}")


@dataclass(frozen=True)
class Integrand:
    """N(x)/Psi(x)^k against the projective volume form, or a form word.

    Polynomial integrands must be projectively homogeneous: deg N - k*h =
    -|E|.  Form-word integrands evaluate pointwise through the batched
    Laplacian evaluator.
    """

    graph: Graph
    numerator: MultilinearPoly | None = None
    psi_power: int = 0
    form_spec: FormSpec | None = None
    chart: int | None = None
    label: str = ""

    def __post_init__(self):
        g = self.graph
        if not g.is_connected:
            raise GraphError("integrands need a connected graph")
        if (self.numerator is None) == (self.form_spec is None):
            raise GraphError("integrand is either polynomial or a form word")
        if self.numerator is not None:
            degs = self.numerator.degrees()
            if len(degs) != 1:
                raise GraphError("numerator must be homogeneous")
            d = degs.pop()
            if d - self.psi_power * g.loop_number() != -g.ne:
                raise GraphError(
                    "non-projective integrand: deg N - k h != -|E|")
        else:
            if self.form_spec.degree != g.ne - 1:
                raise GraphError("form degree must be |E| - 1")

    def sampler_parameters(self) -> tuple[tuple[int, ...], Fraction]:
        """(nu, k) of the matched tropical density."""
        g = self.graph
        if self.form_spec is not None:
            return (0,) * g.ne, Fraction(g.ne, g.loop_number())
        mono = None
        if len(self.numerator.coeffs) == 1:
            (mono_set, _), = self.numerator.coeffs.items()
            mono = mono_set
        nu = [0] * g.ne
        if mono:
            for e in mono:
                nu[e - 1] = 1
        return tuple(nu), Fraction(self.psi_power) if mono is not None else \
            Fraction(sum(nu) + g.ne, g.loop_number())


def residue_integrand(g: Graph) -> Integrand:
    """1/Psi^2 against Omega; requires the projective count |E| = 2h."""
    if g.ne != 2 * g.loop_number():
        raise GraphError(
            f"non-projective residue: |E| = {g.ne} != 2h = {2 * g.loop_number()}")
    return Integrand(g, numerator=MultilinearPoly.one(), psi_power=2,
                     label="residue")


def canonical_integrand(g: Graph, spec: FormSpec,
                        chart: int | None = None) -> Integrand:
    return Integrand(g, form_spec=spec, chart=chart,
                     label="canonical " + "^".join(map(str, spec)))


def monomial_integrand(g: Graph, edge_ids: Sequence[int], psi_power: int,
                       coeff: int = 1, label: str = "") -> Integrand:
    return Integrand(g, numerator=MultilinearPoly.monomial(edge_ids, coeff),
                     psi_power=psi_power, label=label or "monomial")


@dataclass(frozen=True)
class IntegralEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int
    sampler: str

    def z(self, target: float) -> float:
        if self.stderr == 0:
            if self.mean == target:
                return 0.0
            raise IntegrationError("zero standard error with mean != target")
        return (self.mean - target) / self.stderr

    def abs_z(self, target: float) -> float:
        """z-score of |mean| against a positive target (the orientation of
        a single-graph integral is a convention)."""
        if self.stderr == 0:
            return 0.0 if abs(self.mean) == target else math.inf
        return (abs(self.mean) - target) / self.stderr

    def scaled(self, c: float) -> "IntegralEstimate":
        return IntegralEstimate(c * self.mean, abs(c) * self.stderr,
                                self.samples, self.seed, self.sampler)

    def to_json(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr,
                "samples": self.samples, "seed": self.seed,
                "sampler": self.sampler}


def compare_constant(estimate: IntegralEstimate, target: float) -> float:
    return estimate.z(target)


def _threads() -> int:
    env = os.environ.get("PERIODFORGE_THREADS")
    if env:
        return max(1, int(env))
    return 1


class _Evaluator:
    """Shared per-integrand state: Laplacian incidence + form evaluator."""

    def __init__(self, ig: Integrand):
        self.ig = ig
        g = ig.graph
        b = cycle_basis(g)
        h = g.loop_number()
        q = np.zeros((g.ne, h))
        for i, vec in enumerate(b.as_dicts()):
            for e, c in vec.items():
                q[e - 1, i] = c
        self.q = q
        self.chart = g.ne if ig.chart is None else ig.chart
        self.form = None
        if ig.form_spec is not None:
            self.form = BatchedGraphFormEvaluator(g, ig.form_spec, self.chart)

    def psi(self, xs):
        lam = np.einsum("be,ei,ej->bij", xs, self.q, self.q)
        return np.linalg.det(lam)

    def values(self, xs):
        """Integrand f with I = integral of f * Omega, at simplex points.

        f is homogeneous of degree -|E|; the chart route evaluates at
        x/x_chart and compensates by x_chart^-|E|, so different charts give
        the same value along different floating-point paths.
        """
        ig = self.ig
        if ig.form_spec is not None:
            return self.form.integrand_values(xs)
        xc = xs[:, self.chart - 1]
        ys = xs / xc[:, None]
        psi = self.psi(ys)
        num = ig.numerator.evaluate_floats(ys)
        return num / psi ** ig.psi_power * xc ** (-ig.graph.ne)


def _run_shard(ev: _Evaluator, sampler: TropicalSampler | None,
               nu: np.ndarray, kf: float, log_period: float,
               seed: int, shard_index: int, count: int, dirichlet: bool):
    rng = np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(entropy=seed, spawn_key=(shard_index,))))
    g = ev.ig.graph
    if dirichlet:
        xs = rng.dirichlet(np.ones(g.ne), size=count)
        logw = -math.lgamma(g.ne) * np.ones(count)  # 1/(n-1)!
    else:
        logxs, logpsitr = sampler.sample(rng, count)
        xs = np.exp(logxs)
        total = xs.sum(axis=1, keepdims=True)
        xs = xs / total
        scale = -np.log(total[:, 0])
        hfull = g.loop_number()
        logpsitr = logpsitr + hfull * scale
        lognu = (np.log(xs) * nu).sum(axis=1)
        logw = log_period + kf * logpsitr - lognu
    vals = ev.values(xs)
    w = vals * np.exp(logw)
    bad = ~np.isfinite(w)
    if bad.any():
        raise NonFinitePointError(xs[int(np.argmax(bad))])
    return float(w.sum()), float((w * w).sum()), count


def integrate(ig: Integrand, samples: int, seed: int,
              sampler: str = "tropical", threads: int | None = None,
              shard_size: int = _SHARD) -> IntegralEstimate:
    """Importance-weighted estimate of the projective integral of ig.

    Deterministic for fixed (seed, samples, sampler, shard_size); shards
    have independent substreams and are reduced in index order.
    """
    if samples < 2:
        raise IntegrationError("need at least two samples")
    g = ig.graph
    nu, k = ig.sampler_parameters()
    dirichlet = sampler == "dirichlet"
    samp = None
    log_period = 0.0
    if not dirichlet:
        if sampler != "tropical":
            raise IntegrationError(f"unknown sampler {sampler!r}")
        measure = build_measure(g, nu, k)
        samp = TropicalSampler(measure)
        log_period = math.log(float(measure.tropical_period))
    ev = _Evaluator(ig)
    nuv = np.array(nu, dtype=float)
    shards = [(i, min(shard_size, samples - i * shard_size))
              for i in range((samples + shard_size - 1) // shard_size)]
    nthreads = _threads() if threads is None else max(1, threads)
    args = [(ev, samp, nuv, float(k), log_period, seed, i, c, dirichlet)
            for i, c in shards]
    if nthreads == 1:
        results = [_run_shard(*a) for a in args]
    else:
        with ThreadPoolExecutor(max_workers=nthreads) as ex:
            results = list(ex.map(lambda a: _run_shard(*a), args))
    total = math.fsum(r[0] for r in results)
    total2 = math.fsum(r[1] for r in results)
    n = sum(r[2] for r in results)
    mean = total / n
    var = max(total2 / n - mean * mean, 0.0)
    stderr = math.sqrt(var / (n - 1)) if n > 1 else float("inf")
    return IntegralEstimate(mean, stderr, n, seed, sampler)


def integrate_residue(g: Graph, samples: int, seed: int, **kw) -> IntegralEstimate:
    return integrate(residue_integrand(g), samples, seed, **kw)


def integrate_canonical(g: Graph, spec: FormSpec, samples: int, seed: int,
                        chart: int | None = None, **kw) -> IntegralEstimate:
    """Canonical integral of the form word, in the chart orientation.

    The sign is a convention (the simplex is oriented so single-graph
    integrals come out positive); compare against positive targets with
    ``abs_z``.  The matched sampler runs at exponent |E|/h, so graphs whose
    subgraphs defeat that tropical density raise DivergentIntegrandError
    even though canonical integrals are always finite; such cases need a
    hand-picked nu.
    """
    return integrate(canonical_integrand(g, spec, chart), samples, seed, **kw)


def integrate_chain(chain: ChainVector, spec: FormSpec, samples: int,
                    seed: int, **kw) -> IntegralEstimate:
    """Coefficient-weighted sum of canonical integrals over a chain.

    Each class is integrated over its canonical representative in the
    chart orientation; the chain coefficients already carry the edge-order
    parities relative to those representatives.
    """
    if chain.is_zero():
        return IntegralEstimate(0.0, 0.0, 0, seed, "tropical")
    for cls in chain.coeffs:
        if cls.graph.ne != spec.degree + 1:
            raise GraphError("chain graphs must have degree + 1 edges")
    mean = 0.0
    var = 0.0
    n = 0
    for idx, (cls, coeff) in enumerate(
            sorted(chain.coeffs.items(), key=lambda t: t[0].key())):
        est = integrate_canonical(cls.graph, spec, samples,
                                  seed + 7919 * idx, **kw)
        mean += float(coeff) * est.mean
        var += float(coeff) ** 2 * est.stderr ** 2
        n += est.samples
    return IntegralEstimate(mean, math.sqrt(var), n, seed, "tropical")


def tolerance(target: float, stderr: float, sigmas: float = 3.0,
              floor: float = 0.005) -> float:
    """Acceptance tolerance: 3 standard errors plus a 0.5% systematic floor."""
    return sigmas * stderr + floor * abs(target)
