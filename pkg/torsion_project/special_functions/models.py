import dataclasses

from torsion_project.exceptions import DomainError


@dataclasses.dataclass(frozen=True)
class ModeRoot:
    """
    A positive root of the frequency equation x J1'(x) - J1(x) = 0, i.e. a zero of J2.
    -   index:
        1-based mode number; the trivial root 0 is not a ModeRoot (it is the fundamental mode of the dispersion app)
    -   xi:
        the dimensionless root, eta * a
    """

    index: int
    xi: float

    def __post_init__(self):
        if self.index < 1:
            raise DomainError(f"mode index must be >= 1, got {self.index}")
        if not self.xi > 0:
            raise DomainError(f"mode root xi must be > 0, got {self.xi}")

    def __str__(self):
        return f"mode {self.index}: xi = {self.xi:.12g}"
