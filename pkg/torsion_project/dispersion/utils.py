import cmath
import logging
import math

import numpy as np

from torsion_project.exceptions import DomainError
from .models import DispersionInput, DispersionSolution, ModeShape, Classification

logger = logging.getLogger('dispersion')

#   The trivial root of the frequency equation: the nondispersive fundamental torsional mode
FUNDAMENTAL_XI = 0.0


def build_I(dispersion_input: DispersionInput) -> complex:
    """
    :return: the purely imaginary damping term I = -i d / ka, d as read by the input's damping mode
    """
    return complex(0.0, -dispersion_input.damping_coefficient / dispersion_input.ka)


def build_R(dispersion_input: DispersionInput) -> float:
    """
    :return: R = (xi / ka)^2 / lambda + lambda^2
    """
    lam = dispersion_input.lambda_
    if dispersion_input.xi == FUNDAMENTAL_XI:
        return lam * lam
    ratio = dispersion_input.xi / dispersion_input.ka
    return ratio * ratio / lam + lam * lam


def _solve(dispersion_input: DispersionInput, branch: int) -> DispersionSolution:
    damping = dispersion_input.damping_coefficient / dispersion_input.ka
    i_term = complex(0.0, -damping)
    r_term = build_R(dispersion_input)
    #   I is purely imaginary, so Omega = 4R - d^2 is real; building it from reals keeps the sign of its zero
    #   imaginary part positive and the square root on the branch with Re >= 0
    omega = complex(4.0 * r_term - damping * damping, 0.0)
    c_over_beta = 0.5 * (i_term + branch * cmath.sqrt(omega))
    classification = Classification.PROPAGATING if omega.real > 0 else Classification.EVANESCENT
    return DispersionSolution(
        input=dispersion_input,
        c_over_beta=c_over_beta,
        I=i_term,
        R=r_term,
        Omega=omega,
        eta_a=eta_from_c(dispersion_input, c_over_beta),
        classification=classification,
    )


def solve_velocity(dispersion_input: DispersionInput) -> DispersionSolution:
    """
    :param dispersion_input: one point (ka, lambda, delta, xi)
    :return: c/beta = (I + sqrt(Omega)) / 2 with Re(c/beta) >= 0. When Omega <= 0 the root is purely imaginary and
    the point is classified evanescent; that is a result, not an error.
    """
    solution = _solve(dispersion_input, branch=1)
    logger.debug(f"{dispersion_input}: c/beta = {solution.c_over_beta}")
    return solution


def other_root(dispersion_input: DispersionInput) -> DispersionSolution:
    """
    :return: the second root (I - sqrt(Omega)) / 2 of the same quadratic, a wave running towards -z
    """
    return _solve(dispersion_input, branch=-1)


def velocity_nondissipative(dispersion_input: DispersionInput) -> float:
    """
    :return: c/beta = sqrt(R) of an undamped cylinder
    """
    if dispersion_input.delta_hat != 0:
        raise DomainError(f"the nondissipative velocity needs delta = 0, got {dispersion_input.delta_hat}")
    return math.sqrt(build_R(dispersion_input))


def velocity_unstressed(dispersion_input: DispersionInput) -> complex:
    """
    :return: c/beta of a cylinder free of initial stress: sqrt((xi / ka)^2 + 1) when undamped, the damped root of the
    quadratic otherwise
    """
    if dispersion_input.lambda_ != 1:
        raise DomainError(f"the unstressed velocity needs lambda = 1, got {dispersion_input.lambda_}")
    if dispersion_input.delta_hat == 0:
        ratio = dispersion_input.xi / dispersion_input.ka
        return complex(math.sqrt(ratio * ratio + 1.0), 0.0)
    return solve_velocity(dispersion_input).c_over_beta


def eta_from_c(dispersion_input: DispersionInput, c_over_beta: complex) -> complex:
    """
    :param dispersion_input: the point the velocity belongs to
    :param c_over_beta: a complex velocity in units of beta
    :return: eta * a = sqrt((ka)^2 ((c/beta)^2 lambda - lambda^3) + i ka (c/beta) lambda d), principal branch, where d is
    the damping number of the input's mode. For the root of the quadratic this gives back xi.
    """
    ka = dispersion_input.ka
    lam = dispersion_input.lambda_
    c = complex(c_over_beta)
    squared = ka * ka * (c * c * lam - lam ** 3) + 1j * ka * c * lam * dispersion_input.damping_coefficient
    return cmath.sqrt(squared)


def mode_shape(eta_a: complex, r_over_a: float, amplitude: complex = 1.0) -> complex:
    """
    :return: V(r) = A J1(eta r) at normalized radius r/a in [0, 1]
    """
    return ModeShape(eta_a=eta_a, amplitude=amplitude).evaluate(r_over_a)


def mode_shape_for(dispersion_input: DispersionInput) -> ModeShape:
    """
    :return: unit-amplitude mode shape of the solved point, eta recovered from its velocity
    """
    return ModeShape(eta_a=solve_velocity(dispersion_input).eta_a)


def ode_residual(eta_a: complex, n_points: int = 256) -> float:
    """
    :param eta_a: eta * a of the mode shape
    :param n_points: number of equal intervals on 0 <= r/a <= 1
    :return: max |r^2 V'' + r V' + ((eta_a r)^2 - 1) V| over the interior nodes, derivatives by fourth order central
    differences of mode_shape, normalized by max |V| on the grid
    """
    if n_points < 16:
        raise DomainError(f"n_points must be >= 16, got {n_points}")
    radii = np.linspace(0.0, 1.0, n_points + 1)
    h = 1.0 / n_points
    shape = ModeShape(eta_a=eta_a)
    values = np.array([shape.evaluate(float(r)) for r in radii], dtype=complex)

    scale = np.max(np.abs(values))
    if scale == 0:
        return 0.0

    v_m2, v_m1, v_0, v_p1, v_p2 = values[:-4], values[1:-3], values[2:-2], values[3:-1], values[4:]
    r = radii[2:-2]
    first = (-v_p2 + 8.0 * v_p1 - 8.0 * v_m1 + v_m2) / (12.0 * h)
    second = (-v_p2 + 16.0 * v_p1 - 30.0 * v_0 + 16.0 * v_m1 - v_m2) / (12.0 * h * h)
    residual = r * r * second + r * first + ((eta_a * r) ** 2 - 1.0) * v_0
    return float(np.max(np.abs(residual)) / scale)
