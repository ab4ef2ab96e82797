"""Randomized structural property checks, shared by the test suite and CLI.

Each property draws random connected topologies and angle profiles from a
seeded generator, so a run is fully reproducible from (seed, trials).  On
failure the offending setup is serialized as a scenario document for
replay.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import scenarios, spectrum
from .graph import Graph, new_undirected
from .laplacian import build, even_ones, odd_ones
from .rotation import AngleProfile
from .simulator import Scenario

NULL_TOL = 1e-10
ROW_SUM_TOL = 1e-10
FACTORIZATION_TOL = 1e-12
GERSHGORIN_SLACK = 1e-8
REGION_ZERO_TOL = 1e-8
ORACLE_TOL = 1e-9
MAX_REPORTED_FAILURES = 3


@dataclass
class PropertyResult:
    name: str
    trials: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def random_connected_graph(rng: np.random.Generator, min_n: int = 2, max_n: int = 8) -> Graph:
    """Random spanning tree plus extra edges: always connected."""
    n = int(rng.integers(min_n, max_n + 1))
    edges = [(int(rng.integers(0, i)), i) for i in range(1, n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.25:
                edges.append((i, j))
    return new_undirected(n, edges)


def random_profile(rng: np.random.Generator, n: int) -> AngleProfile:
    return AngleProfile(rng.uniform(-math.pi, math.pi, n))


def cosine_bounded_profile(
    rng: np.random.Generator, n: int, cos_min: float
) -> AngleProfile:
    """Profile with cos(theta_i) > cos_min for every agent."""
    bound = math.acos(cos_min) - 1e-3
    return AngleProfile(rng.uniform(-bound, bound, n))


def flipped_profile(profile: AngleProfile) -> AngleProfile:
    """Mirror every angle across the imaginary axis: theta -> pi - theta."""
    return AngleProfile([math.pi - t for t in profile.theta])


def _replay_json(g: Graph, profile: AngleProfile, label: str) -> str:
    s = Scenario(
        graph=g,
        profile=profile,
        initial=scenarios.default_initial(g.n),
        label=label,
    )
    return json.dumps(scenarios.to_document(s), separators=(",", ":"))


def _record(result: PropertyResult, trial: int, detail: str, g: Graph, profile: AngleProfile) -> None:
    if len(result.failures) < MAX_REPORTED_FAILURES:
        replay = _replay_json(g, profile, f"counterexample-{result.name}-{trial}")
        result.failures.append(f"trial {trial}: {detail}; replay: {replay}")
    else:
        result.failures.append(f"trial {trial}: {detail}")


def _check_null_directions(rng, trials):
    res = PropertyResult("null-directions", trials)
    for k in range(trials):
        g = random_connected_graph(rng)
        profile = random_profile(rng, g.n)
        m = build(g, profile).matrix
        worst = max(
            np.max(np.abs(m @ even_ones(g.n))), np.max(np.abs(m @ odd_ones(g.n)))
        )
        if worst > NULL_TOL:
            _record(res, k, f"translation residual {worst:.3e}", g, profile)
    return res


def _check_row_sums(rng, trials):
    res = PropertyResult("row-sums", trials)
    for k in range(trials):
        g = random_connected_graph(rng)
        profile = random_profile(rng, g.n)
        worst = np.max(np.abs(build(g, profile).matrix.sum(axis=1)))
        if worst > ROW_SUM_TOL:
            _record(res, k, f"row-sum residual {worst:.3e}", g, profile)
    return res


def _check_factorization(rng, trials):
    res = PropertyResult("factorization", trials)
    for k in range(trials):
        g = random_connected_graph(rng)
        profile = random_profile(rng, g.n)
        L = build(g, profile)
        worst = np.max(np.abs(L.matrix - L.factor_rotation @ L.factor_topology))
        if worst > FACTORIZATION_TOL:
            _record(res, k, f"factorization residual {worst:.3e}", g, profile)
    return res


def _check_rank(rng, trials):
    res = PropertyResult("rank-deficiency", trials)
    for k in range(trials):
        g = random_connected_graph(rng)
        profile = random_profile(rng, g.n)
        r = spectrum.rank(build(g, profile))
        if r != 2 * g.n - 2:
            _record(res, k, f"rank {r}, expected {2 * g.n - 2}", g, profile)
    return res


def _check_gershgorin(rng, trials):
    res = PropertyResult("gershgorin-containment", trials)
    for k in range(trials):
        g = random_connected_graph(rng)
        profile = random_profile(rng, g.n)
        region = spectrum.gershgorin(g, profile)
        eigs = spectrum.eigenvalues(build(g, profile)).eigenvalues
        outside = [z for z in eigs if not region.contains(z, GERSHGORIN_SLACK)]
        if outside:
            _record(res, k, f"eigenvalue {outside[0]} outside disk union", g, profile)
    return res


def _check_positive_region(rng, trials):
    res = PropertyResult("positive-cosine-region", trials)
    for k in range(trials):
        g = random_connected_graph(rng)
        profile = cosine_bounded_profile(rng, g.n, 0.01)
        eigs = spectrum.eigenvalues(build(g, profile)).eigenvalues
        zeros = int(np.sum(np.abs(eigs) <= REGION_ZERO_TOL))
        rest = eigs[np.abs(eigs) > REGION_ZERO_TOL]
        if zeros != 2:
            _record(res, k, f"{zeros} zero eigenvalues, expected 2", g, profile)
        elif np.any(rest.real <= 0):
            _record(res, k, f"non-positive real part {rest.real.min():.3e}", g, profile)
    return res


def _check_negative_region(rng, trials):
    res = PropertyResult("negative-cosine-region", trials)
    for k in range(trials):
        g = random_connected_graph(rng)
        profile = flipped_profile(cosine_bounded_profile(rng, g.n, 0.01))
        eigs = spectrum.eigenvalues(build(g, profile)).eigenvalues
        zeros = int(np.sum(np.abs(eigs) <= REGION_ZERO_TOL))
        rest = eigs[np.abs(eigs) > REGION_ZERO_TOL]
        if zeros != 2:
            _record(res, k, f"{zeros} zero eigenvalues, expected 2", g, profile)
        elif np.any(rest.real >= 0):
            _record(res, k, f"non-negative real part {rest.real.max():.3e}", g, profile)
    return res


def _check_common_angle(rng, trials):
    res = PropertyResult("common-angle-rotation", trials)
    for k in range(trials):
        g = random_connected_graph(rng)
        theta = float(rng.uniform(-math.pi, math.pi))
        profile = AngleProfile([theta] * g.n)
        computed = spectrum.eigenvalues(build(g, profile)).eigenvalues
        predicted = spectrum.common_angle_spectrum(g, theta)
        err = spectrum.match_eigenvalues(computed, predicted)
        if err > ORACLE_TOL:
            _record(res, k, f"spectrum mismatch {err:.3e}", g, profile)
    return res


def _check_two_agent(rng, trials):
    res = PropertyResult("two-agent-oracle", trials)
    g = new_undirected(2, [(0, 1)])
    for k in range(trials):
        t1, t2 = rng.uniform(-math.pi, math.pi, 2)
        profile = AngleProfile([t1, t2])
        computed = spectrum.eigenvalues(build(g, profile)).eigenvalues
        err = spectrum.match_eigenvalues(computed, spectrum.two_agent_exact(t1, t2))
        if err > ORACLE_TOL:
            _record(res, k, f"spectrum mismatch {err:.3e}", g, profile)
    return res


def _check_three_agent(rng, trials):
    res = PropertyResult("three-agent-oracle", trials)
    g = new_undirected(3, [(0, 1), (0, 2), (1, 2)])
    for k in range(trials):
        t1, t2 = rng.uniform(-math.pi, math.pi, 2)
        profile = AngleProfile([t1, t2, t2])
        computed = spectrum.eigenvalues(build(g, profile)).eigenvalues
        err = spectrum.match_eigenvalues(computed, spectrum.three_agent_exact(t1, t2))
        if err > ORACLE_TOL:
            _record(res, k, f"spectrum mismatch {err:.3e}", g, profile)
    return res


PROPERTIES = (
    _check_null_directions,
    _check_row_sums,
    _check_factorization,
    _check_rank,
    _check_gershgorin,
    _check_positive_region,
    _check_negative_region,
    _check_common_angle,
    _check_two_agent,
    _check_three_agent,
)


def run_suite(seed: int = 42, trials: int = 200) -> list[PropertyResult]:
    """Run every property with per-property seeds derived from ``seed``."""
    children = np.random.SeedSequence(seed).spawn(len(PROPERTIES))
    return [
        prop(np.random.default_rng(child), trials)
        for prop, child in zip(PROPERTIES, children)
    ]
