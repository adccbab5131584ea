import dataclasses
import itertools
import math
import typing as ty

from dispersion.models import DispersionInput, DampingMode, PAPER_RHO_NUM
from torsion_project.exceptions import DomainError


def _as_tuple(name: str, values: ty.Iterable[float], positive: bool) -> ty.Tuple[float, ...]:
    values = tuple(float(value) for value in values)
    if not values:
        raise DomainError(f"{name} must not be empty")
    for value in values:
        if not math.isfinite(value) or (value <= 0 if positive else value < 0):
            raise DomainError(f"every entry of {name} must be finite and {'> 0' if positive else '>= 0'}, got {value}")
    if len(set(values)) != len(values):
        raise DomainError(f"{name} contains duplicate values: {values}")
    return values


@dataclasses.dataclass(frozen=True)
class SweepSpec:
    """
    A Cartesian grid of dispersion inputs.
    -   ka_grid:
        strictly increasing dimensionless wavenumbers
    -   lambdas, deltas, xis:
        the curve parameters; stored sorted, so a spec describes a set of curves rather than a listing order
    -   damping_mode, rho_num:
        how every point reads its damping
    -   label:
        free text carried into the table provenance
    -   notes:
        where the grid choices come from
    """

    ka_grid: ty.Tuple[float, ...]
    lambdas: ty.Tuple[float, ...]
    deltas: ty.Tuple[float, ...]
    xis: ty.Tuple[float, ...]
    damping_mode: str = DampingMode.PAPER_LITERAL
    label: str = ''
    rho_num: float = PAPER_RHO_NUM
    notes: str = ''

    def __post_init__(self):
        ka_grid = _as_tuple('ka_grid', self.ka_grid, positive=True)
        for previous, current in zip(ka_grid, ka_grid[1:]):
            if not previous < current:
                raise DomainError(f"ka_grid must be strictly increasing, got {previous} before {current}")
        object.__setattr__(self, 'ka_grid', ka_grid)
        object.__setattr__(self, 'lambdas', tuple(sorted(_as_tuple('lambdas', self.lambdas, positive=True))))
        object.__setattr__(self, 'deltas', tuple(sorted(_as_tuple('deltas', self.deltas, positive=False))))
        object.__setattr__(self, 'xis', tuple(sorted(_as_tuple('xis', self.xis, positive=False))))
        if self.damping_mode not in DampingMode.values:
            raise DomainError(f"damping mode must be one of {DampingMode.values}, got {self.damping_mode!r}")
        if not (math.isfinite(self.rho_num) and self.rho_num > 0):
            raise DomainError(f"rho must be finite and > 0, got {self.rho_num}")

    @property
    def size(self) -> int:
        return len(self.ka_grid) * len(self.lambdas) * len(self.deltas) * len(self.xis)

    def grid(self) -> ty.Iterator[DispersionInput]:
        """
        :return: one DispersionInput per grid tuple, in canonical (xi, lambda, delta, ka) lexicographic order
        """
        for xi, lambda_, delta, ka in itertools.product(self.xis, self.lambdas, self.deltas, self.ka_grid):
            yield DispersionInput(ka=ka, lambda_=lambda_, delta_hat=delta, xi=xi, rho_num=self.rho_num,
                                  damping_mode=self.damping_mode)


class CurveRow(ty.NamedTuple):
    ka: float
    lambda_: float
    delta: float
    xi: float
    re_c_over_beta: float
    im_c_over_beta: float
    classification: str


@dataclasses.dataclass(frozen=True)
class CurveTable:
    """
    The evaluated grid: rows in canonical order, one per grid tuple, and the provenance needed to regenerate them
    """

    spec: SweepSpec
    rows: ty.Tuple[CurveRow, ...]
    provenance: ty.Dict[str, str]

    def curves(self) -> ty.Dict[ty.Tuple[float, float, float], ty.List[CurveRow]]:
        """
        :return: rows grouped into curves keyed by (xi, lambda, delta), each curve in increasing ka
        """
        grouped = {}
        for row in self.rows:
            grouped.setdefault((row.xi, row.lambda_, row.delta), []).append(row)
        return grouped
