import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import itertools
import json
import tempfile
import unittest
from unittest import mock

import numpy as np
from scipy.optimize import linprog

from core.errors import ConfigurationError, DataValidationError
from models.lexicon import Lexicon, MassVector, make_mass_vector
from models.transport import GroundDistance
from models.vocabulary import MODAL, split_modal_term
from utils.ground import build_modal_ground_distance, ground_to_document, load_ground
from utils.transport import transport_distance, transport_plan


def lp_oracle(a, b, cost):
    """Transportation problem as a plain LP over the full n x n plan."""
    n = len(a)
    rows = np.zeros((n, n * n))
    cols = np.zeros((n, n * n))
    for i in range(n):
        rows[i, i * n:(i + 1) * n] = 1.0
        cols[i, i::n] = 1.0
    result = linprog(
        c=np.asarray(cost).ravel(),
        A_eq=np.vstack([rows, cols]),
        b_eq=np.concatenate([a, b]),
        bounds=(0, None),
        method="highs",
    )
    assert result.success, result.message
    return result.fun


def random_metric_ground(rng, lexicon: Lexicon) -> GroundDistance:
    points = rng.uniform(0.0, 2.0, size=(lexicon.size, 3))
    matrix = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1)
    matrix = (matrix + matrix.T) / 2.0
    np.fill_diagonal(matrix, 0.0)
    return GroundDistance(lexicon=lexicon, matrix=tuple(tuple(float(v) for v in row) for row in matrix))


def random_mass(rng, lexicon: Lexicon, sparsity: float = 0.3) -> MassVector:
    masses = rng.uniform(0.0, 1.0, size=lexicon.size)
    masses[rng.uniform(size=lexicon.size) < sparsity] = 0.0
    if masses.sum() == 0.0:
        masses[rng.integers(lexicon.size)] = 1.0
    return make_mass_vector(lexicon, masses)


class TestModalGroundDistance(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.ground = build_modal_ground_distance()

    def test_constraints_over_all_pairs(self):
        terms = MODAL.terms
        pairs = list(itertools.combinations(range(len(terms)), 2))
        self.assertEqual(len(pairs), 276)

        arm_only, forearm_only, everything = [], [], []
        for i, j in pairs:
            d = self.ground.matrix[i][j]
            everything.append(d)
            arm_i, fore_i = split_modal_term(terms[i])
            arm_j, fore_j = split_modal_term(terms[j])
            if fore_i == fore_j:
                arm_only.append(d)
            elif arm_i == arm_j:
                forearm_only.append(d)

        self.assertEqual(max(everything), 3.0)
        self.assertEqual(min(arm_only), 1.0)
        self.assertEqual(min(forearm_only), 0.5)
        self.assertGreater(min(everything), 0.0)

    def test_front_to_frontfolded(self):
        self.assertEqual(self.ground.distance("front", "frontfolded"), 0.5)

    def test_default_ground_is_metric(self):
        self.assertTrue(self.ground.is_metric)

    def test_custom_parameters_still_hit_constraints(self):
        ground = build_modal_ground_distance(max_dist=4.0, shoulder_min=1.2, elbow_min=0.4)
        d = ground.as_array()
        self.assertAlmostEqual(d.max(), 4.0, places=12)
        self.assertAlmostEqual(ground.distance("down", "front"), 1.2, places=12)
        self.assertAlmostEqual(ground.distance("down", "downfolded"), 0.4, places=12)

    def test_parameter_ordering_violations(self):
        with self.assertRaises(ConfigurationError):
            build_modal_ground_distance(max_dist=3.0, shoulder_min=0.5, elbow_min=1.0)
        with self.assertRaises(ConfigurationError):
            build_modal_ground_distance(max_dist=1.2, shoulder_min=1.0, elbow_min=0.5)
        with self.assertRaises(ConfigurationError):
            build_modal_ground_distance(max_dist=3.0, shoulder_min=1.0, elbow_min=0.0)

    def test_ground_file_reordered_onto_modal_lexicon(self):
        doc = ground_to_document(self.ground)
        order = list(reversed(range(MODAL.size)))
        doc["lexicon"] = [doc["lexicon"][i] for i in order]
        doc["matrix"] = [[self.ground.matrix[i][j] for j in order] for i in order]
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "ground.json")
            with open(path, "w") as f:
                json.dump(doc, f)
            loaded = load_ground(path)
        self.assertEqual(loaded.lexicon, MODAL)
        self.assertEqual(loaded.matrix, self.ground.matrix)

    def test_export_tool_writes_loadable_ground(self):
        from tools import export_ground

        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "ground.json")
            with mock.patch.object(sys, "argv", ["export_ground.py", path]):
                export_ground.main()
            self.assertEqual(load_ground(path).matrix, self.ground.matrix)

    def test_non_metric_ground_is_accepted_with_warning(self):
        lexicon = Lexicon(name="abc", terms=("a", "b", "c"))
        ground = GroundDistance(lexicon=lexicon, matrix=((0, 1, 5), (1, 0, 1), (5, 1, 0)))
        self.assertFalse(ground.is_metric)
        self.assertIn((0, 1, 2), ground.triangle_violations())

        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "ground.json")
            with open(path, "w") as f:
                json.dump({"name": "abc", "lexicon": ["a", "b", "c"], "matrix": [[0, 1, 5], [1, 0, 1], [5, 1, 0]]}, f)
            with self.assertLogs(level="WARNING") as logs:
                loaded = load_ground(path, expected=None)
        self.assertEqual(loaded.lexicon.terms, ("a", "b", "c"))
        self.assertEqual(loaded.distance("a", "c"), 5.0)
        self.assertTrue(any("triangle inequality" in line for line in logs.output))

    def test_asymmetric_matrix_rejected(self):
        lexicon = Lexicon(name="ab", terms=("a", "b"))
        with self.assertRaises(ValueError):
            GroundDistance(lexicon=lexicon, matrix=((0, 1), (2, 0)))


class TestTransportDistance(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.ground = build_modal_ground_distance()

    def test_singleton_coincidence(self):
        singletons = [MassVector.singleton(MODAL, t) for t in MODAL.terms]
        for i, a in enumerate(singletons):
            for j, b in enumerate(singletons):
                self.assertEqual(transport_distance(a, b, self.ground), self.ground.matrix[i][j])

    def test_identical_vectors_cost_nothing(self):
        rng = np.random.default_rng(3)
        a = random_mass(rng, MODAL)
        plan = transport_plan(a, a, self.ground)
        self.assertEqual(plan.total_cost, 0.0)
        self.assertTrue(all(i == j for i, j, _ in plan.flows))

    def test_singleton_plan_is_single_flow(self):
        a = MassVector.singleton(MODAL, "up")
        b = MassVector.singleton(MODAL, "downfolded")
        plan = transport_plan(a, b, self.ground)
        self.assertEqual(plan.named_flows(), [("up", "downfolded", 1.0)])
        self.assertEqual(plan.total_cost, self.ground.distance("up", "downfolded"))

    def test_lexicon_mismatch(self):
        other = Lexicon(name="ab", terms=("a", "b"))
        with self.assertRaises(DataValidationError):
            transport_distance(MassVector.singleton(MODAL, "up"), MassVector.singleton(other, "a"), self.ground)

        ground = random_metric_ground(np.random.default_rng(0), other)
        with self.assertRaises(DataValidationError):
            transport_distance(MassVector.singleton(MODAL, "up"), MassVector.singleton(MODAL, "down"), ground)

    def test_matches_lp_oracle(self):
        rng = np.random.default_rng(2024)
        checked = 0
        for size in range(2, 7):
            lexicon = Lexicon(name=f"l{size}", terms=tuple(f"t{i}" for i in range(size)))
            for _ in range(210):
                ground = random_metric_ground(rng, lexicon)
                a = random_mass(rng, lexicon)
                b = random_mass(rng, lexicon)
                expected = lp_oracle(np.array(a.masses), np.array(b.masses), ground.as_array())
                self.assertAlmostEqual(transport_distance(a, b, ground), expected, delta=1e-7)
                checked += 1
        self.assertGreaterEqual(checked, 1000)

    def test_plan_marginals_and_cost(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            a = random_mass(rng, MODAL, sparsity=0.6)
            b = random_mass(rng, MODAL, sparsity=0.6)
            plan = transport_plan(a, b, self.ground)
            matrix = plan.as_matrix()
            np.testing.assert_allclose(matrix.sum(axis=1), a.masses, atol=1e-9)
            np.testing.assert_allclose(matrix.sum(axis=0), b.masses, atol=1e-9)
            self.assertAlmostEqual(plan.total_cost, float((matrix * self.ground.as_array()).sum()), delta=1e-9)
            self.assertTrue(all(mass >= 0.0 for _, _, mass in plan.flows))

    def test_metric_properties(self):
        rng = np.random.default_rng(17)
        grounds = [self.ground] + [
            random_metric_ground(rng, Lexicon(name=f"l{n}", terms=tuple(f"t{i}" for i in range(n))))
            for n in (3, 4, 5, 6)
        ]
        triples = 0
        for ground in grounds:
            for _ in range(250):
                a, b, c = (random_mass(rng, ground.lexicon) for _ in range(3))
                ab = transport_distance(a, b, ground)
                ba = transport_distance(b, a, ground)
                bc = transport_distance(b, c, ground)
                ac = transport_distance(a, c, ground)
                self.assertGreaterEqual(ab, 0.0)
                self.assertAlmostEqual(ab, ba, delta=1e-9)
                self.assertLessEqual(ac, ab + bc + 1e-9)
                if ab == 0.0:
                    np.testing.assert_allclose(a.masses, b.masses, atol=1e-9)
                triples += 1
        self.assertGreaterEqual(triples, 1000)


if __name__ == "__main__":
    unittest.main()
