import dataclasses
import math

from torsion_project.exceptions import DomainError


@dataclasses.dataclass(frozen=True)
class MaterialModel:
    """
    Physical constants of the incompressible cylinder
    -   mu:
        shear modulus of the unstressed medium (stress units)
    -   rho:
        mass density
    -   gamma:
        damping coefficient, the factor of the velocity term in the equation of motion (density / time)
    -   a:
        cylinder radius

    beta and delta are derived on every access, never stored.
    """

    mu: float
    rho: float
    gamma: float = 0.0
    a: float = 1.0

    def __post_init__(self):
        if not self.mu > 0:
            raise DomainError(f"shear modulus mu must be > 0, got {self.mu}")
        if not self.rho > 0:
            raise DomainError(f"density rho must be > 0, got {self.rho}")
        if not self.gamma >= 0:
            raise DomainError(f"damping coefficient gamma must be >= 0, got {self.gamma}")
        if not self.a > 0:
            raise DomainError(f"radius a must be > 0, got {self.a}")

    @property
    def beta(self) -> float:
        """
        :return: shear wave speed of the unstressed, undamped medium, sqrt(mu / rho)
        """
        return math.sqrt(self.mu / self.rho)

    @property
    def delta(self) -> float:
        """
        :return: the damping parameter gamma * a
        """
        return self.gamma * self.a

    @property
    def delta_hat(self) -> float:
        """
        :return: the dimensionless damping gamma * a / (rho * beta) of the dimensionally consistent dispersion relation
        """
        return self.gamma * self.a / (self.rho * self.beta)


@dataclasses.dataclass(frozen=True)
class PrestressState:
    """
    Axial prestress of the cylinder, parametrized by the axial extension ratio lambda_.
    -   lambda_r, lambda_theta, lambda_z:
        extension ratios along the principal directions; lambda_r = lambda_theta = lambda_ ** -0.5, lambda_z = lambda_
    -   P:
        initial axial stress, compression positive (S_zz = -P)
    -   Q1, Q2:
        incremental elastic coefficients governing s_r_theta and s_theta_z
    """

    lambda_: float
    lambda_r: float
    lambda_theta: float
    lambda_z: float
    P: float
    Q1: float
    Q2: float

    @property
    def is_compressive(self) -> bool:
        return self.P > 0

    def volume_ratio(self) -> float:
        """
        :return: lambda_r * lambda_theta * lambda_z, which is 1 for an incompressible medium
        """
        return self.lambda_r * self.lambda_theta * self.lambda_z
