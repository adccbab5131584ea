import dataclasses
import math
import typing as ty

import numpy as np
from django.db import models

from material.models import MaterialModel
from special_functions.bessel import bessel_j, bessel_j1_prime
from torsion_project.exceptions import DomainError

#   bare density number of the published numerical model
PAPER_RHO_NUM = 2.15


class DampingMode(models.TextChoices):
    """
    Two readings of the damping term of the dispersion quadratic.
    -   PAPER_LITERAL:
        I = -i delta / (rho_num ka), the published formula with beta = a = 1
    -   CONSISTENT:
        I = -i delta_hat / ka with delta_hat = gamma a / (rho beta), the grouping that follows from the eta relation
    """
    PAPER_LITERAL = 'paper-literal', 'Paper literal'
    CONSISTENT = 'consistent', 'Dimensionally consistent'


class Classification(models.TextChoices):
    PROPAGATING = 'propagating', 'Propagating'
    EVANESCENT = 'evanescent', 'Evanescent'


@dataclasses.dataclass(frozen=True)
class DispersionInput:
    """
    One point of the dispersion relation, fully nondimensional.
    -   ka:
        dimensionless wavenumber k a
    -   lambda_:
        axial extension ratio
    -   delta_hat:
        dimensionless damping; read according to damping_mode
    -   xi:
        mode root, 0 for the fundamental mode
    -   rho_num:
        the bare density number dividing the damping in paper-literal mode
    """

    ka: float
    lambda_: float
    delta_hat: float = 0.0
    xi: float = 0.0
    rho_num: float = PAPER_RHO_NUM
    damping_mode: str = DampingMode.PAPER_LITERAL

    def __post_init__(self):
        if not self.ka > 0:
            raise DomainError(f"ka must be > 0, got {self.ka}")
        if not self.lambda_ > 0:
            raise DomainError(f"lambda must be > 0, got {self.lambda_}")
        if not self.delta_hat >= 0:
            raise DomainError(f"delta must be >= 0, got {self.delta_hat}")
        if not self.xi >= 0:
            raise DomainError(f"xi must be >= 0, got {self.xi}")
        if not self.rho_num > 0:
            raise DomainError(f"rho must be > 0, got {self.rho_num}")
        if self.damping_mode not in DampingMode.values:
            raise DomainError(f"damping mode must be one of {DampingMode.values}, got {self.damping_mode!r}")
        for name in ('ka', 'lambda_', 'delta_hat', 'xi', 'rho_num'):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name.rstrip('_')} must be finite")

    @property
    def damping_coefficient(self) -> float:
        """
        :return: the damping number d such that I = -i d / ka
        """
        if self.damping_mode == DampingMode.PAPER_LITERAL:
            return self.delta_hat / self.rho_num
        return self.delta_hat

    def replace(self, **changes) -> 'DispersionInput':
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_physical(cls, model: MaterialModel, k: float, lambda_: float, xi: float = 0.0,
                      damping_mode: str = DampingMode.CONSISTENT) -> 'DispersionInput':
        """
        :param model: the cylinder material in any consistent unit system
        :param k: axial wavenumber in 1 / (length unit of model.a)
        :param lambda_: axial extension ratio
        :param xi: mode root
        :param damping_mode: CONSISTENT normalizes the damping to gamma a / (rho beta); PAPER_LITERAL passes
        delta = gamma a and the density number rho unchanged, as the published formula does
        :return: the nondimensional input
        """
        if damping_mode == DampingMode.CONSISTENT:
            return cls(ka=k * model.a, lambda_=lambda_, delta_hat=model.delta_hat, xi=xi, rho_num=model.rho,
                       damping_mode=damping_mode)
        return cls(ka=k * model.a, lambda_=lambda_, delta_hat=model.delta, xi=xi, rho_num=model.rho,
                   damping_mode=damping_mode)


@dataclasses.dataclass(frozen=True)
class DispersionSolution:
    """
    A root of (c/beta)^2 - (c/beta) I - R = 0.
    Re(c_over_beta) is the phase velocity and Im(c_over_beta) the damping velocity, both in units of beta.
    """

    input: DispersionInput
    c_over_beta: complex
    I: complex
    R: float
    Omega: complex
    eta_a: complex
    classification: str

    def quadratic_residual(self) -> float:
        c = self.c_over_beta
        return abs(c * c - c * self.I - self.R)

    def phase_velocity(self, beta: float) -> float:
        return self.c_over_beta.real * beta

    def damping_velocity(self, beta: float) -> float:
        return self.c_over_beta.imag * beta

    @property
    def is_propagating(self) -> bool:
        return self.classification == Classification.PROPAGATING


@dataclasses.dataclass(frozen=True)
class ModeShape:
    """
    Circumferential displacement amplitude V(r) = A J1(eta r); the Y1 part is dropped so V stays finite on the axis.
    Radii are normalized by a, so eta_a = eta * a.
    """

    eta_a: complex
    amplitude: complex = 1.0

    def evaluate(self, r_over_a: float) -> complex:
        if not 0.0 <= r_over_a <= 1.0:
            raise DomainError(f"normalized radius r/a must lie in [0, 1], got {r_over_a}")
        return self.amplitude * bessel_j(1, self.eta_a * r_over_a)

    def traction_residual(self) -> float:
        """
        :return: |eta_a J1'(eta_a) - J1(eta_a)|, the shear traction left on the surface r = a
        """
        return abs(self.eta_a * bessel_j1_prime(self.eta_a) - bessel_j(1, self.eta_a))

    def profile(self, intervals: int = 64) -> ty.List[ty.Tuple[float, complex]]:
        """
        :param intervals: number of equal steps between the axis and the surface
        :return: (r/a, V) pairs on intervals + 1 uniform radii
        """
        return [(float(r), self.evaluate(float(r))) for r in np.linspace(0.0, 1.0, intervals + 1)]
