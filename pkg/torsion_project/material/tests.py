import math

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from torsion_project.exceptions import DomainError
from .models import MaterialModel
from .utils import prestress_from_lambda, lambda_from_prestress

UNIT = MaterialModel(mu=1.0, rho=1.0)


class MaterialModelTests(SimpleTestCase):

    def test_derived_quantities(self):
        model = MaterialModel(mu=3.2e10, rho=2150.0, gamma=40.0, a=0.25)
        self.assertEqual(model.beta, math.sqrt(3.2e10 / 2150.0))
        self.assertEqual(model.delta, 40.0 * 0.25)
        self.assertAlmostEqual(model.delta_hat, 10.0 / (2150.0 * model.beta), delta=1e-18)

    def test_undamped_default(self):
        model = MaterialModel(mu=1.0, rho=2.15)
        self.assertEqual(model.delta, 0.0)
        self.assertEqual(model.delta_hat, 0.0)

    def test_invalid_constants(self):
        for kwargs in ({'mu': 0.0, 'rho': 1.0}, {'mu': 1.0, 'rho': -1.0},
                       {'mu': 1.0, 'rho': 1.0, 'gamma': -0.1}, {'mu': 1.0, 'rho': 1.0, 'a': 0.0}):
            with self.subTest(**kwargs), self.assertRaises(DomainError):
                MaterialModel(**kwargs)


class PrestressFromLambdaTests(SimpleTestCase):

    def test_unstressed_isotropic_limit(self):
        state = prestress_from_lambda(UNIT, 1.0)
        self.assertEqual(state.P, 0.0)
        self.assertEqual(state.Q1, 1.0)
        self.assertEqual(state.Q2, 1.0)
        self.assertFalse(state.is_compressive)

    def test_isotropy_is_exact_for_any_modulus(self):
        model = MaterialModel(mu=3.7, rho=1.0)
        state = prestress_from_lambda(model, 1.0)
        self.assertEqual(state.Q1, model.mu)
        self.assertEqual(state.Q2, model.mu)
        self.assertEqual(state.P, 0.0)

    def test_compression(self):
        state = prestress_from_lambda(UNIT, 0.8)
        self.assertAlmostEqual(state.P, 0.61, delta=1e-14)
        self.assertAlmostEqual(state.Q1, 1.25, delta=1e-14)
        self.assertAlmostEqual(state.Q2, 0.945, delta=1e-14)
        self.assertTrue(state.is_compressive)

    def test_tension(self):
        state = prestress_from_lambda(UNIT, 1.1)
        self.assertAlmostEqual(state.P, (1 / 1.1) * (1 - 1.331), delta=1e-14)
        self.assertAlmostEqual(state.P, -0.3009, delta=1e-4)
        self.assertFalse(state.is_compressive)

    def test_extension_ratio_triple(self):
        for lam in (0.3, 0.7, 0.8, 1.0, 1.4, 2.0):
            state = prestress_from_lambda(UNIT, lam)
            self.assertAlmostEqual(state.lambda_r ** 2, 1 / lam, delta=1e-14)
            self.assertAlmostEqual(state.lambda_theta ** 2, 1 / lam, delta=1e-14)
            self.assertEqual(state.lambda_z, lam)
            self.assertAlmostEqual(state.volume_ratio(), 1.0, delta=1e-14)

    def test_coefficients_follow_the_extension_ratios(self):
        model = MaterialModel(mu=2.5, rho=1.0)
        state = prestress_from_lambda(model, 0.75)
        self.assertAlmostEqual(state.Q1, model.mu / 2 * (state.lambda_r ** 2 + state.lambda_theta ** 2), delta=1e-13)
        self.assertAlmostEqual(state.Q2, model.mu / 2 * (state.lambda_theta ** 2 + state.lambda_z ** 2), delta=1e-13)

    def test_nonpositive_lambda(self):
        for lam in (0.0, -0.5, float('nan')):
            with self.assertRaises(DomainError):
                prestress_from_lambda(UNIT, lam)

    def test_stress_decreases_with_lambda(self):
        stresses = [prestress_from_lambda(UNIT, 0.1 * i).P for i in range(1, 31)]
        for previous, current in zip(stresses, stresses[1:]):
            self.assertGreater(previous, current)


class LambdaFromPrestressTests(SimpleTestCase):

    def test_unstressed(self):
        self.assertEqual(lambda_from_prestress(UNIT, 0.0), 1.0)

    def test_inverse_of_compression_example(self):
        self.assertAlmostEqual(lambda_from_prestress(UNIT, 0.61), 0.8, delta=1e-9)
        model = MaterialModel(mu=4.0, rho=1.0)
        self.assertAlmostEqual(lambda_from_prestress(model, 0.61 * 4.0), 0.8, delta=1e-9)

    def test_large_compression_drives_lambda_to_zero(self):
        lambdas = [lambda_from_prestress(UNIT, P) for P in (1.0, 10.0, 100.0, 1e3, 1e4)]
        for previous, current in zip(lambdas, lambdas[1:]):
            self.assertGreater(previous, current)
            self.assertGreater(current, 0.0)
        self.assertLess(lambdas[-1], 1e-3)

    def test_strong_tension_falls_back_to_bracketing(self):
        with self.assertLogs('material', level='WARNING'):
            lam = lambda_from_prestress(UNIT, -10.0)
        self.assertLessEqual(abs(lam ** 3 - 10.0 * lam - 1.0), 1e-12 * lam ** 3)
        self.assertAlmostEqual(prestress_from_lambda(UNIT, lam).P, -10.0, delta=1e-9)

    def test_nonfinite_stress(self):
        with self.assertRaises(DomainError):
            lambda_from_prestress(UNIT, float('inf'))

    @settings(max_examples=1000, deadline=None)
    @given(st.floats(min_value=0.3, max_value=2.0))
    def test_round_trip_through_stress(self, lam):
        stress = prestress_from_lambda(UNIT, lam).P
        self.assertAlmostEqual(lambda_from_prestress(UNIT, stress), lam, delta=1e-9)

    @settings(max_examples=300, deadline=None)
    @given(st.floats(min_value=-3.0, max_value=1e3))
    def test_round_trip_through_lambda(self, stress):
        lam = lambda_from_prestress(UNIT, stress)
        self.assertLessEqual(abs(lam ** 3 + stress * lam - 1.0), 1e-12 * max(1.0, lam ** 3))
        self.assertLessEqual(abs(prestress_from_lambda(UNIT, lam).P - stress), 1e-10 * max(1.0, abs(stress)))
