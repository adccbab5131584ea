import logging
import math

from scipy import optimize

from torsion_project.exceptions import DomainError
from .models import MaterialModel, PrestressState

logger = logging.getLogger('material')

#   Newton on the prestress cubic is accepted when |g(lambda)| is below this, relative to max(1, lambda^3)
CUBIC_TOLERANCE = 1e-12


def prestress_from_lambda(model: MaterialModel, lambda_: float) -> PrestressState:
    """
    :param model: the cylinder material, only mu is used
    :param lambda_: axial extension ratio, > 0; lambda_ < 1 is axial compression
    :return: the prestress state of an incompressible cylinder stretched by lambda_ along its axis
    """
    if not lambda_ > 0:
        raise DomainError(f"extension ratio lambda must be > 0, got {lambda_}")
    lateral = 1.0 / math.sqrt(lambda_)
    return PrestressState(
        lambda_=lambda_,
        lambda_r=lateral,
        lambda_theta=lateral,
        lambda_z=lambda_,
        P=model.mu / lambda_ * (1.0 - lambda_ ** 3),
        Q1=model.mu / lambda_,
        Q2=model.mu / 2 * (1.0 / lambda_ + lambda_ ** 2),
    )


def lambda_from_prestress(model: MaterialModel, P: float) -> float:
    """
    :param model: the cylinder material, only mu is used
    :param P: initial axial stress, compression positive
    :return: the unique positive root of lambda^3 + (P / mu) lambda - 1 = 0. Newton from lambda = 1 first; when it
    leaves the bracket (0, 1 + |P / mu|) or fails to converge, Brent's method on that bracket takes over.
    """
    if not math.isfinite(P):
        raise DomainError(f"initial stress P must be finite, got {P}")
    p = P / model.mu

    def cubic(lam: float) -> float:
        return lam * lam * lam + p * lam - 1.0

    def slope(lam: float) -> float:
        return 3.0 * lam * lam + p

    upper = 1.0 + abs(p)
    try:
        lam = optimize.newton(cubic, 1.0, fprime=slope, tol=1e-15, maxiter=50)
        accepted = 0 < lam <= upper and abs(cubic(lam)) <= CUBIC_TOLERANCE * max(1.0, lam ** 3)
    except (RuntimeError, OverflowError, ZeroDivisionError):
        accepted = False

    if not accepted:
        logger.warning(f"Newton failed on the prestress cubic for P / mu = {p:g}; falling back to bracketing")
        lam = optimize.brentq(cubic, 0.0, upper, xtol=1e-15, maxiter=500)
    return float(lam)
