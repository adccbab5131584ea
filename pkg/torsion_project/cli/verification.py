"""
Self-verification suites run by the verify subcommand. Each suite checks one family of results against an independent
reference and reports instead of raising, so that every suite runs even when an earlier one fails.
"""
import abc
import dataclasses
import logging
import math
import typing as ty

import numpy as np
from scipy import special

from dispersion.models import DispersionInput, DampingMode
from dispersion.utils import solve_velocity, velocity_nondissipative, velocity_unstressed, eta_from_c, ode_residual
from special_functions.utils import find_mode_roots
from sweep.utils import builtin_presets, PUBLISHED_ROOTS
from torsion_project.exceptions import TorsionError

logger = logging.getLogger('cli')


class SuiteResult(ty.NamedTuple):
    name: str
    passed: bool
    checked: int
    worst: float
    detail: str
    description: str = ''


class VerificationSuite(abc.ABC):
    """
    A named check with a tolerance. execute() never raises for a numerical failure; it returns a failed SuiteResult.
    """
    name = ''
    tolerance = 0.0

    @abc.abstractmethod
    def check(self) -> ty.Tuple[int, float]:
        """
        :return: (number of values checked, worst deviation found)
        """
        raise NotImplementedError('check not defined')

    @abc.abstractmethod
    def description(self) -> str:
        raise NotImplementedError('suite description not defined')

    def execute(self) -> SuiteResult:
        try:
            checked, worst = self.check()
        except TorsionError as e:
            logger.error(f"Suite {self.name} raised {type(e).__name__}: {e}")
            return SuiteResult(self.name, False, 0, math.inf, f"{type(e).__name__}: {e}", self.description())
        passed = worst <= self.tolerance
        detail = f"{checked} checks, worst {worst:.3e} (tolerance {self.tolerance:g})"
        logger.info(f"Suite {self.name}: {'pass' if passed else 'FAIL'}, {detail}")
        return SuiteResult(self.name, passed, checked, worst, detail, self.description())


class ModeRootSuite(VerificationSuite):
    name = 'mode-roots'
    tolerance = 1e-9
    published_tolerance = 1e-3
    count = 6
    scan_max = 25.0

    def description(self):
        return f"first {self.count} roots of the frequency equation against scipy's zeros of J2"

    def check(self):
        roots = find_mode_roots(self.count, self.scan_max)
        worst = max(abs(root.xi - zero) for root, zero in zip(roots, special.jn_zeros(2, self.count)))
        #   the published values carry three decimals and the second is rounded up, so they only agree to 1e-3
        published = max(abs(root.xi - value) for root, value in zip(roots, PUBLISHED_ROOTS))
        if published > self.published_tolerance:
            worst = max(worst, published)
        return self.count, worst


class LimitingCaseSuite(VerificationSuite):
    name = 'limiting-cases'
    tolerance = 1e-13
    samples = 1000
    seed = 20240419

    def description(self):
        return f"{self.samples} seeded points: undamped and unstressed solutions against their closed forms"

    def check(self):
        rng = np.random.default_rng(self.seed)
        ka_values = rng.uniform(0.5, 10.0, self.samples)
        lambdas = rng.uniform(0.5, 1.5, self.samples)
        xis = rng.choice([0.0, *PUBLISHED_ROOTS], self.samples)
        worst = 0.0
        for ka, lam, xi in zip(ka_values, lambdas, xis):
            point = DispersionInput(ka=float(ka), lambda_=float(lam), xi=float(xi))
            c = solve_velocity(point).c_over_beta
            worst = max(worst, abs(c - velocity_nondissipative(point)),
                        abs(c.real - math.sqrt((xi / ka) ** 2 / lam + lam ** 2)))
            unstressed = point.replace(lambda_=1.0)
            worst = max(worst, abs(solve_velocity(unstressed).c_over_beta - velocity_unstressed(unstressed)))
        fundamental = solve_velocity(DispersionInput(ka=1.0, lambda_=1.0)).c_over_beta
        worst = max(worst, abs(fundamental - 1.0))
        return 2 * self.samples + 1, worst


class QuadraticResidualSuite(VerificationSuite):
    name = 'quadratic-residual'
    tolerance = 1e-12

    def description(self):
        return 'relative residual of the dispersion quadratic over every figure preset, both damping modes'

    def check(self):
        checked, worst = 0, 0.0
        for spec in builtin_presets():
            for mode in DampingMode.values:
                for point in dataclasses.replace(spec, damping_mode=mode).grid():
                    solution = solve_velocity(point)
                    worst = max(worst, solution.quadratic_residual() / max(1.0, solution.R))
                    checked += 1
        return checked, worst


class ClosureSuite(VerificationSuite):
    name = 'eta-closure'
    tolerance = 1e-10

    def description(self):
        return 'eta * a recovered from the solved velocity equals xi on the figure presets (consistent damping)'

    def check(self):
        checked, worst = 0, 0.0
        for spec in builtin_presets():
            for point in dataclasses.replace(spec, damping_mode=DampingMode.CONSISTENT).grid():
                eta_a = eta_from_c(point, solve_velocity(point).c_over_beta)
                worst = max(worst, abs(eta_a - point.xi))
                checked += 1
        return checked, worst


class OdeResidualSuite(VerificationSuite):
    name = 'mode-shape-ode'
    tolerance = 1e-6
    eta_values = (1.0, 5.1356223, 8.4172441)
    n_points = 256

    def description(self):
        return f"finite difference residual of the radial equation at {self.n_points} points"

    def check(self):
        return len(self.eta_values), max(ode_residual(eta_a, self.n_points) for eta_a in self.eta_values)


def default_suites() -> ty.List[VerificationSuite]:
    return [ModeRootSuite(), LimitingCaseSuite(), QuadraticResidualSuite(), ClosureSuite(), OdeResidualSuite()]


def run_suites(suites: ty.Optional[ty.Sequence[VerificationSuite]] = None) -> ty.List[SuiteResult]:
    return [suite.execute() for suite in (default_suites() if suites is None else suites)]
