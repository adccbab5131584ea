import time

import mpmath
import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from scipy import optimize, special

from torsion_project.exceptions import DomainError, InsufficientScanRangeError
from .bessel import bessel_j, bessel_j1_prime, MAX_ARGUMENT
from .models import ModeRoot
from .utils import frequency_equation, find_mode_roots, bracket_sign_changes, scan_nodes

J2_ZEROS = (5.135622301840683, 8.417244140399865, 11.619841172149059)


def reference_j(order: int, z: complex) -> complex:
    """
    :return: J_order(z) evaluated by mpmath at 30 digits
    """
    with mpmath.workdps(30):
        return complex(mpmath.besselj(order, mpmath.mpc(z.real, z.imag)))


class BesselValueTests(SimpleTestCase):

    def test_values_at_origin(self):
        self.assertEqual(bessel_j(0, 0), 1)
        self.assertEqual(bessel_j(1, 0), 0)
        self.assertEqual(bessel_j(2, 0), 0)

    def test_j2_vanishes_at_its_first_zero(self):
        self.assertLessEqual(abs(bessel_j(2, J2_ZEROS[0])), 1e-10)

    def test_real_axis_against_high_precision_reference(self):
        for x in np.linspace(0.0, MAX_ARGUMENT, 251):
            for order in (0, 1, 2):
                with self.subTest(order=order, x=x):
                    value = bessel_j(order, float(x))
                    self.assertLessEqual(abs(value - reference_j(order, complex(x))), 1e-12)
                    self.assertEqual(value.imag, 0.0)

    def test_real_axis_against_scipy(self):
        xs = np.linspace(0.05, MAX_ARGUMENT, 97)
        for order in (0, 1, 2):
            expected = special.jv(order, xs)
            for x, reference in zip(xs, expected):
                self.assertAlmostEqual(bessel_j(order, float(x)).real, reference, delta=1e-11)

    def test_relative_accuracy_away_from_zeros(self):
        for x in (0.5, 1.0, 2.5, 6.0, 14.0, 33.0, 47.5):
            for order in (0, 1, 2):
                reference = reference_j(order, complex(x))
                self.assertLessEqual(abs(bessel_j(order, x) - reference), 1e-12 * abs(reference))

    def test_relative_accuracy_between_series_and_recurrence(self):
        #   on 8 < x < 12 the ascending series alone loses several digits
        for x in np.linspace(5.5, 12.5, 141):
            for order in (0, 1, 2):
                reference = reference_j(order, complex(x))
                if abs(reference) < 0.05:
                    continue
                with self.subTest(order=order, x=x):
                    self.assertLessEqual(abs(bessel_j(order, float(x)) - reference), 1e-12 * abs(reference))

    def test_complex_arguments(self):
        #   both series and recurrence, both recurrence normalizations
        for z in (5.1356 + 0.02j, 3 - 1j, 8.4 + 0.5j, 10j, 15 - 0.5j, 20 + 3j, 30 + 5j, 49 - 1.5j):
            for order in (0, 1, 2):
                with self.subTest(order=order, z=z):
                    reference = reference_j(order, z)
                    self.assertLessEqual(abs(bessel_j(order, z) - reference), 1e-10 * max(1.0, abs(reference)))

    def test_unsupported_order(self):
        with self.assertRaises(DomainError):
            bessel_j(3, 1.0)

    def test_argument_outside_supported_range(self):
        with self.assertRaisesMessage(DomainError, '|z| <= 50'):
            bessel_j(0, 50.5)
        with self.assertRaises(DomainError):
            bessel_j(1, 40 + 40j)
        with self.assertRaises(DomainError):
            bessel_j1_prime(60.0)


class BesselDerivativeTests(SimpleTestCase):

    def test_limit_at_origin(self):
        self.assertEqual(bessel_j1_prime(0), 0.5)

    def test_defining_identity(self):
        for z in (0.3, 2.0, 12.5, 5 + 1j, 44.0):
            self.assertEqual(bessel_j1_prime(z), bessel_j(0, z) - bessel_j(1, z) / z)

    def test_at_first_mode_root(self):
        xi = J2_ZEROS[0]
        self.assertAlmostEqual(bessel_j1_prime(xi).real, bessel_j(1, xi).real / xi, delta=1e-10)

    def test_against_scipy_derivative(self):
        for x in (0.1, 1.84, 6.0, 13.0, 25.0):
            self.assertAlmostEqual(bessel_j1_prime(x).real, special.jvp(1, x), delta=1e-11)

    @settings(max_examples=1000, deadline=None)
    @given(st.floats(min_value=1e-6, max_value=MAX_ARGUMENT, allow_nan=False, allow_infinity=False))
    def test_recurrence_consistency(self, xi):
        lhs = xi * bessel_j1_prime(xi) - bessel_j(1, xi)
        self.assertLessEqual(abs(lhs + xi * bessel_j(2, xi)), 1e-10)


class InterlacingTests(SimpleTestCase):

    @staticmethod
    def real_zeros(order: int, upper: float = MAX_ARGUMENT):
        def f(x):
            return bessel_j(order, x).real

        nodes = scan_nodes(upper)
        return [optimize.brentq(f, left, right, xtol=1e-13)
                for left, right in zip(nodes, nodes[1:]) if f(left) * f(right) < 0]

    def test_j0_and_j1_zeros_interlace(self):
        j0_zeros = self.real_zeros(0)
        j1_zeros = self.real_zeros(1)
        self.assertEqual(len(j0_zeros), 16)
        for left, right in zip(j0_zeros, j0_zeros[1:]):
            inside = [zero for zero in j1_zeros if left < zero < right]
            self.assertEqual(len(inside), 1, msg=f"between {left} and {right}")


class FrequencyEquationTests(SimpleTestCase):

    def test_trivial_root(self):
        self.assertEqual(frequency_equation(0.0), 0.0)

    def test_published_root_is_nearly_a_root(self):
        self.assertLessEqual(abs(frequency_equation(5.136)), 5e-3)

    def test_equals_minus_xi_j2(self):
        for xi in (0.5, 1.0, 3.0, 5.136, 8.418, 10.0):
            self.assertAlmostEqual(frequency_equation(xi), -xi * bessel_j(2, xi).real, delta=1e-12)

    def test_negative_argument(self):
        with self.assertRaises(DomainError):
            frequency_equation(-0.1)

    def test_scan_nodes_end_at_scan_max(self):
        nodes = scan_nodes(1.05)
        self.assertEqual(len(nodes), 11)
        self.assertEqual(nodes[-1], 1.05)
        self.assertEqual(len(scan_nodes(2.0)), 20)

    def test_brackets_isolate_the_j2_zeros(self):
        brackets = bracket_sign_changes(12.0)
        self.assertEqual(len(brackets), 3)
        for (left, right), zero in zip(brackets, J2_ZEROS):
            self.assertTrue(left < zero < right)


class FindModeRootsTests(SimpleTestCase):

    def test_first_two_roots(self):
        roots = find_mode_roots(2, 20.0)
        self.assertEqual([root.index for root in roots], [1, 2])
        self.assertEqual(round(roots[0].xi, 3), 5.136)
        #   the published 8.418 is the true zero 8.41724 rounded upward
        self.assertAlmostEqual(roots[1].xi, 8.418, delta=1e-3)
        for root, zero in zip(roots, J2_ZEROS):
            self.assertAlmostEqual(root.xi, zero, delta=1e-9)

    def test_single_root_to_seven_digits(self):
        (root,) = find_mode_roots(1, 20.0)
        self.assertEqual(round(root.xi, 7), 5.1356223)

    def test_third_root(self):
        roots = find_mode_roots(3, 20.0)
        self.assertAlmostEqual(roots[2].xi, 11.6198, delta=1e-4)

    def test_roots_agree_with_scipy_zeros_of_j2(self):
        roots = find_mode_roots(6, 25.0)
        for root, zero in zip(roots, special.jn_zeros(2, 6)):
            self.assertAlmostEqual(root.xi, zero, delta=1e-9)

    def test_stored_root_invariants(self):
        roots = find_mode_roots(5, 20.0)
        for previous, current in zip(roots, roots[1:]):
            self.assertLess(previous.xi, current.xi)
        for root in roots:
            self.assertLessEqual(abs(frequency_equation(root.xi)), 1e-10)
            h = 1e-6
            self.assertNotEqual(frequency_equation(root.xi - h) < 0, frequency_equation(root.xi + h) < 0)

    def test_insufficient_scan_range(self):
        with self.assertRaises(InsufficientScanRangeError) as cm:
            find_mode_roots(3, 10.0)
        self.assertEqual(cm.exception.found, 2)
        self.assertEqual(cm.exception.requested, 3)
        self.assertIn('only 2 found', str(cm.exception))

    def test_invalid_arguments(self):
        with self.assertRaises(DomainError):
            find_mode_roots(0, 20.0)
        with self.assertRaises(DomainError):
            find_mode_roots(1, 60.0)

    def test_mode_root_type_rejects_trivial_root(self):
        with self.assertRaises(DomainError):
            ModeRoot(index=1, xi=0.0)
        with self.assertRaises(DomainError):
            ModeRoot(index=0, xi=5.0)

    def test_runtime(self):
        started = time.perf_counter()
        find_mode_roots(2, 20.0)
        self.assertLess(time.perf_counter() - started, 0.5)
