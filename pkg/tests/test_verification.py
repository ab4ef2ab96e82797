import numpy as np
import pytest

from misalign_consensus import run_suite
from misalign_consensus.verification import (
    cosine_bounded_profile,
    random_connected_graph,
    _check_gershgorin,
)


class TestSuite:
    def test_all_properties_pass(self):
        results = run_suite(seed=42, trials=25)
        assert len(results) == 10
        for r in results:
            assert r.passed, f"{r.name}: {r.failures[:1]}"

    def test_deterministic_given_seed(self):
        a = run_suite(seed=7, trials=5)
        b = run_suite(seed=7, trials=5)
        assert [(r.name, r.failures) for r in a] == [(r.name, r.failures) for r in b]

    def test_failure_reports_replay_scenario(self, monkeypatch):
        # Negative control: corrupt the rotation used during construction
        # (one flipped sine entry turns it into a reflection).  The disk
        # containment property must catch it and serialize a counterexample.
        import misalign_consensus.rotation as rotation_mod

        def broken_rot(theta):
            c, s = np.cos(theta), np.sin(theta)
            return np.array([[c, s], [s, c]])

        monkeypatch.setattr(rotation_mod, "rot", broken_rot)
        res = _check_gershgorin(np.random.default_rng(3), 25)
        assert not res.passed
        assert "replay" in res.failures[0]
        assert '"format_version":1' in res.failures[0]


class TestGenerators:
    def test_graphs_are_connected(self, rng):
        from misalign_consensus import is_connected

        for _ in range(50):
            g = random_connected_graph(rng)
            assert 2 <= g.n <= 8
            assert is_connected(g)

    def test_cosine_bound_respected(self, rng):
        for _ in range(50):
            profile = cosine_bounded_profile(rng, 6, 0.01)
            assert np.all(np.cos(profile.theta) > 0.01)
