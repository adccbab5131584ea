import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from scipy import special

from material.models import MaterialModel
from special_functions.utils import find_mode_roots
from torsion_project.exceptions import DomainError
from .models import DispersionInput, DampingMode, Classification, ModeShape
from .utils import (build_I, build_R, solve_velocity, other_root, velocity_nondissipative, velocity_unstressed,
                    eta_from_c, mode_shape, mode_shape_for, ode_residual)

XI_1 = 5.136
XI_2 = 8.418
J2_ZEROS = (5.1356223, 8.4172441)
COMPRESSION_LAMBDAS = (0.7, 0.8, 0.9, 1.0)
KA_GRID = [round(0.5 + 0.05 * i, 12) for i in range(51)]

ka_values = st.floats(min_value=0.5, max_value=10.0)
lambda_values = st.floats(min_value=0.5, max_value=1.5)
xi_values = st.sampled_from([0.0, XI_1, XI_2])
delta_values = st.floats(min_value=0.0, max_value=0.5)
modes = st.sampled_from(DampingMode.values)


def point(ka=1.0, lambda_=1.0, delta=0.0, xi=0.0, mode=DampingMode.PAPER_LITERAL, rho=2.15) -> DispersionInput:
    return DispersionInput(ka=ka, lambda_=lambda_, delta_hat=delta, xi=xi, rho_num=rho, damping_mode=mode)


class DispersionInputTests(SimpleTestCase):

    def test_invalid_inputs(self):
        for kwargs in ({'ka': 0.0}, {'lambda_': -1.0}, {'delta': -0.01}, {'xi': -5.0}, {'rho': 0.0},
                       {'ka': float('inf')}, {'mode': 'literal'}):
            with self.subTest(**kwargs), self.assertRaises(DomainError):
                point(**kwargs)

    def test_damping_coefficient_per_mode(self):
        self.assertEqual(point(delta=0.1, rho=2.0).damping_coefficient, 0.05)
        self.assertEqual(point(delta=0.1, rho=2.0, mode=DampingMode.CONSISTENT).damping_coefficient, 0.1)

    def test_from_physical_normalizes_at_the_boundary(self):
        model = MaterialModel(mu=4.0, rho=1.0, gamma=0.3, a=2.0)
        consistent = DispersionInput.from_physical(model, k=1.5, lambda_=0.9, xi=XI_1)
        self.assertEqual(consistent.ka, 3.0)
        self.assertAlmostEqual(consistent.delta_hat, 0.3 * 2.0 / (1.0 * 2.0), delta=1e-15)
        literal = DispersionInput.from_physical(model, k=1.5, lambda_=0.9, xi=XI_1,
                                                damping_mode=DampingMode.PAPER_LITERAL)
        self.assertEqual(literal.delta_hat, model.delta)
        self.assertEqual(literal.rho_num, model.rho)

    def test_dimensional_velocities(self):
        model = MaterialModel(mu=9.0, rho=1.0)
        solution = solve_velocity(DispersionInput.from_physical(model, k=1.0, lambda_=1.0))
        self.assertEqual(solution.phase_velocity(model.beta), 3.0)
        self.assertEqual(solution.damping_velocity(model.beta), 0.0)


class QuadraticTermTests(SimpleTestCase):

    def test_undamped_I_vanishes(self):
        for mode in DampingMode.values:
            self.assertEqual(build_I(point(delta=0.0, mode=mode)), 0)

    def test_paper_literal_I(self):
        value = build_I(point(delta=0.1, ka=1.0, rho=2.15))
        self.assertEqual(value.real, 0.0)
        self.assertAlmostEqual(value.imag, -0.0465116279, delta=1e-10)

    def test_consistent_I(self):
        self.assertEqual(build_I(point(delta=0.1, ka=2.0, mode=DampingMode.CONSISTENT)), -0.05j)

    def test_R_examples(self):
        self.assertEqual(build_R(point(xi=0.0, lambda_=1.0)), 1.0)
        self.assertEqual(build_R(point(xi=XI_1, ka=XI_1, lambda_=1.0)), 2.0)
        self.assertAlmostEqual(build_R(point(xi=XI_1, ka=1.0, lambda_=0.8)), 5.136 ** 2 / 0.8 + 0.64, delta=1e-12)
        self.assertAlmostEqual(build_R(point(xi=XI_1, ka=1.0, lambda_=0.8)), 33.61312, delta=1e-9)

    def test_fundamental_R_is_lambda_squared(self):
        for lam in COMPRESSION_LAMBDAS:
            self.assertEqual(build_R(point(xi=0.0, lambda_=lam, ka=2.0)), lam * lam)


class SolveVelocityTests(SimpleTestCase):

    def test_fundamental_unstressed_is_nondispersive(self):
        for ka in (0.1, 1.0, 3.3, 25.0):
            self.assertEqual(solve_velocity(point(ka=ka)).c_over_beta, 1.0)

    def test_unit_ratio_gives_root_two(self):
        solution = solve_velocity(point(ka=XI_1, xi=XI_1))
        self.assertAlmostEqual(solution.c_over_beta.real, math.sqrt(2.0), delta=1e-15)
        self.assertEqual(solution.c_over_beta.imag, 0.0)
        self.assertTrue(solution.is_propagating)

    def test_damped_paper_literal_point(self):
        solution = solve_velocity(point(ka=1.0, delta=0.1, xi=XI_1))
        self.assertAlmostEqual(solution.c_over_beta.real, 5.232396, delta=5e-6)
        self.assertAlmostEqual(solution.c_over_beta.imag, -0.0232558, delta=1e-7)
        self.assertAlmostEqual(solution.R, 27.378496, delta=1e-12)
        self.assertAlmostEqual(solution.Omega.real, 109.51182, delta=1e-5)
        #   independent quadratic formula
        roots = np.roots([1.0, -solution.I, -solution.R])
        expected = max(roots, key=lambda root: root.real)
        self.assertAlmostEqual(abs(solution.c_over_beta - expected), 0.0, delta=1e-12)
        self.assertLessEqual(solution.quadratic_residual(), 1e-12 * solution.R)

    def test_fundamental_mode_closed_form(self):
        for lam, delta in ((0.8, 0.0), (0.7, 0.2), (1.0, 0.05)):
            pt = point(ka=2.0, lambda_=lam, delta=delta)
            i_term = build_I(pt)
            expected = 0.5 * (i_term + np.sqrt(i_term * i_term + 4 * lam * lam))
            self.assertAlmostEqual(abs(solve_velocity(pt).c_over_beta - expected), 0.0, delta=1e-14)

    def test_overdamped_point_is_evanescent(self):
        solution = solve_velocity(point(ka=1.0, delta=3.0, mode=DampingMode.CONSISTENT))
        self.assertEqual(solution.classification, Classification.EVANESCENT)
        self.assertEqual(solution.c_over_beta.real, 0.0)
        self.assertLess(solution.c_over_beta.imag, 0.0)
        self.assertAlmostEqual(solution.c_over_beta.imag, 0.5 * (math.sqrt(5.0) - 3.0), delta=1e-15)
        self.assertLessEqual(solution.quadratic_residual(), 1e-12)

    def test_other_root(self):
        pt = point(ka=1.0, delta=0.1, xi=XI_1)
        first, second = solve_velocity(pt), other_root(pt)
        self.assertLess(second.c_over_beta.real, 0.0)
        self.assertAlmostEqual(abs(first.c_over_beta + second.c_over_beta - first.I), 0.0, delta=1e-14)
        self.assertLessEqual(second.quadratic_residual(), 1e-12 * second.R)

    @settings(max_examples=1000, deadline=None)
    @given(ka_values, lambda_values, xi_values, delta_values, modes)
    def test_solution_invariants(self, ka, lam, xi, delta, mode):
        solution = solve_velocity(point(ka=ka, lambda_=lam, xi=xi, delta=delta, mode=mode))
        scale = max(1.0, solution.R)
        self.assertLessEqual(solution.quadratic_residual(), 1e-12 * scale)
        self.assertEqual(solution.I.real, 0.0)
        self.assertLessEqual(solution.I.imag, 0.0)
        self.assertAlmostEqual(solution.R, (xi / ka) ** 2 / lam + lam ** 2, delta=1e-14 * scale)
        self.assertAlmostEqual(abs(solution.Omega - (solution.I ** 2 + 4 * solution.R)), 0.0, delta=1e-14 * scale)
        self.assertGreaterEqual(solution.c_over_beta.real, 0.0)
        self.assertLessEqual(solution.c_over_beta.imag, 0.0)

    @settings(max_examples=1000, deadline=None)
    @given(ka_values, lambda_values, xi_values)
    def test_undamped_limit(self, ka, lam, xi):
        pt = point(ka=ka, lambda_=lam, xi=xi)
        c = solve_velocity(pt).c_over_beta
        self.assertLessEqual(abs(c.real - velocity_nondissipative(pt)), 1e-13)
        self.assertLessEqual(abs(c.real - math.sqrt((xi / ka) ** 2 / lam + lam ** 2)), 1e-13)
        self.assertEqual(c.imag, 0.0)

    @settings(max_examples=300, deadline=None)
    @given(ka_values, xi_values)
    def test_unstressed_limit(self, ka, xi):
        pt = point(ka=ka, xi=xi)
        c = solve_velocity(pt).c_over_beta
        self.assertLessEqual(abs(c - velocity_unstressed(pt)), 1e-13)
        self.assertLessEqual(abs(c.real - math.sqrt((xi / ka) ** 2 + 1)), 1e-13)

    def test_damped_root_structure(self):
        for xi in (XI_1, XI_2):
            for delta in (0.05, 0.1, 0.15, 0.2):
                for ka in KA_GRID:
                    solution = solve_velocity(point(ka=ka, xi=xi, delta=delta))
                    self.assertAlmostEqual(solution.c_over_beta.real, 0.5 * math.sqrt(solution.Omega.real),
                                           delta=1e-12)
                    self.assertAlmostEqual(solution.c_over_beta.imag, -delta / (2 * 2.15 * ka), delta=1e-12)


class LimitingCaseTests(SimpleTestCase):

    def test_nondissipative_examples(self):
        self.assertEqual(velocity_nondissipative(point()), 1.0)
        self.assertAlmostEqual(velocity_nondissipative(point(lambda_=0.8, xi=XI_1, ka=XI_1)), math.sqrt(1.89),
                               delta=1e-15)
        self.assertAlmostEqual(velocity_nondissipative(point(lambda_=0.8, xi=XI_1, ka=XI_1)), 1.3747727, delta=1e-7)

    def test_nondissipative_requires_no_damping(self):
        with self.assertRaises(DomainError):
            velocity_nondissipative(point(delta=0.1))

    def test_unstressed_examples(self):
        self.assertEqual(velocity_unstressed(point()), 1.0)
        self.assertAlmostEqual(abs(velocity_unstressed(point(xi=XI_2, ka=XI_2)) - math.sqrt(2.0)), 0.0, delta=1e-15)
        self.assertAlmostEqual(velocity_unstressed(point(xi=XI_1, ka=2.0)).real, math.sqrt(6.594624 + 1), delta=1e-14)
        self.assertAlmostEqual(velocity_unstressed(point(xi=XI_1, ka=2.0)).real, 2.7559, delta=1e-4)

    def test_damped_unstressed_case(self):
        pt = point(xi=XI_1, ka=1.0, delta=0.1)
        self.assertEqual(velocity_unstressed(pt), solve_velocity(pt).c_over_beta)

    def test_unstressed_requires_lambda_one(self):
        with self.assertRaises(DomainError):
            velocity_unstressed(point(lambda_=0.9))


class TrendTests(SimpleTestCase):

    def test_damping_velocity_grows_with_damping(self):
        for ka in KA_GRID:
            magnitudes = [abs(solve_velocity(point(ka=ka, xi=XI_1, delta=delta)).c_over_beta.imag)
                          for delta in (0.0, 0.05, 0.1, 0.15, 0.2)]
            for previous, current in zip(magnitudes, magnitudes[1:]):
                self.assertLess(previous, current)

    def test_compression_raises_the_velocity(self):
        for xi in (XI_1, XI_2):
            for ka in KA_GRID:
                velocities = [solve_velocity(point(ka=ka, xi=xi, lambda_=lam)).c_over_beta.real
                              for lam in COMPRESSION_LAMBDAS]
                for previous, current in zip(velocities, velocities[1:]):
                    self.assertGreater(previous, current, msg=f"xi={xi}, ka={ka}")

    def test_higher_mode_is_faster(self):
        for ka in KA_GRID:
            for lam in COMPRESSION_LAMBDAS:
                for delta in (0.0, 0.1):
                    low = solve_velocity(point(ka=ka, lambda_=lam, xi=XI_1, delta=delta)).c_over_beta.real
                    high = solve_velocity(point(ka=ka, lambda_=lam, xi=XI_2, delta=delta)).c_over_beta.real
                    self.assertGreater(high, low)


class EtaFromCTests(SimpleTestCase):

    def test_unstressed_undamped_closure(self):
        for xi in (XI_1, XI_2):
            for ka in (0.5, 1.0, 3.0, 10.0):
                pt = point(ka=ka, xi=xi)
                self.assertAlmostEqual(abs(eta_from_c(pt, velocity_unstressed(pt)) - xi), 0.0, delta=1e-12)

    def test_prestressed_undamped_closure(self):
        pt = point(ka=3.0, lambda_=0.8, xi=XI_1)
        self.assertAlmostEqual(abs(eta_from_c(pt, velocity_nondissipative(pt)) - XI_1), 0.0, delta=1e-10)

    def test_damped_closure_on_figure_grids(self):
        for mode in DampingMode.values:
            for xi in (XI_1, XI_2):
                for lam in COMPRESSION_LAMBDAS:
                    for delta in (0.0, 0.05, 0.1, 0.15, 0.2):
                        for ka in KA_GRID:
                            pt = point(ka=ka, lambda_=lam, xi=xi, delta=delta, mode=mode)
                            self.assertAlmostEqual(abs(solve_velocity(pt).eta_a - xi), 0.0, delta=1e-10)

    def test_principal_branch(self):
        pt = point(ka=1.0, xi=XI_1, delta=0.2)
        self.assertGreaterEqual(eta_from_c(pt, 0.3 - 2.0j).real, 0.0)


class ModeShapeTests(SimpleTestCase):

    def test_vanishes_on_the_axis(self):
        for eta_a in (1.0, J2_ZEROS[0], 3 + 0.1j):
            self.assertEqual(mode_shape(eta_a, 0.0, 1.0), 0)

    def test_surface_value_at_first_root(self):
        value = mode_shape(J2_ZEROS[0], 1.0, 1.0)
        self.assertAlmostEqual(value.real, special.j1(J2_ZEROS[0]), delta=1e-12)
        self.assertAlmostEqual(value.real, -0.33967, delta=1e-5)

    def test_linear_in_amplitude(self):
        for amplitude in (1.0, 0.3 - 2j, 7.25):
            for r in (0.1, 0.5, 1.0):
                self.assertEqual(mode_shape(4.2 + 0.01j, r, 2 * amplitude), 2 * mode_shape(4.2 + 0.01j, r, amplitude))

    def test_radius_outside_cylinder(self):
        with self.assertRaises(DomainError):
            mode_shape(1.0, -0.01, 1.0)
        with self.assertRaises(DomainError):
            mode_shape(1.0, 1.01, 1.0)

    def test_traction_free_at_mode_roots(self):
        for root in find_mode_roots(3, 20.0):
            self.assertLessEqual(ModeShape(eta_a=root.xi).traction_residual(), 1e-8)

    def test_profile(self):
        profile = ModeShape(eta_a=J2_ZEROS[1], amplitude=2.0).profile(8)
        self.assertEqual(len(profile), 9)
        self.assertEqual(profile[0], (0.0, 0j))
        self.assertEqual(profile[-1][0], 1.0)

    def test_mode_shape_of_a_solved_point(self):
        shape = mode_shape_for(point(ka=2.0, lambda_=0.9, xi=XI_2, delta=0.1, mode=DampingMode.CONSISTENT))
        self.assertAlmostEqual(abs(shape.eta_a - XI_2), 0.0, delta=1e-10)
        self.assertLessEqual(ode_residual(shape.eta_a, 256), 1e-6)


class OdeResidualTests(SimpleTestCase):

    def test_residual_is_small_for_mode_shapes(self):
        for eta_a in (1.0, J2_ZEROS[0], J2_ZEROS[1]):
            with self.subTest(eta_a=eta_a):
                self.assertLessEqual(ode_residual(eta_a, 256), 1e-6)

    def test_fourth_order_convergence(self):
        coarse = ode_residual(J2_ZEROS[0], 32)
        fine = ode_residual(J2_ZEROS[0], 64)
        self.assertGreater(coarse / fine, 8.0)

    def test_damped_complex_eta(self):
        self.assertLessEqual(ode_residual(5.2 - 0.05j, 256), 1e-6)

    def test_too_few_points(self):
        with self.assertRaises(DomainError):
            ode_residual(1.0, 8)
