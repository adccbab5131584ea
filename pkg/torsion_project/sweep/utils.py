import logging
import math
import multiprocessing as mp
import typing as ty

import numpy as np

from torsion_project import __version__
from torsion_project.exceptions import DomainError, SweepAuditError
from dispersion.models import DispersionInput, Classification, PAPER_RHO_NUM
from dispersion.utils import solve_velocity, build_I, build_R
from .models import SweepSpec, CurveRow, CurveTable

logger = logging.getLogger('sweep')
audit_logger = logging.getLogger('sweep.audit')

#   The published figures state neither their ka axis nor the compressed extension ratios; these are our choices
KA_START = 0.5
KA_STOP = 3.0
KA_STEP = 0.05
COMPRESSION_LAMBDAS = (0.7, 0.8, 0.9, 1.0)
PUBLISHED_DELTAS = (0.05, 0.1, 0.15, 0.2)
#   The first two nontrivial mode roots as published, to three decimals
PUBLISHED_ROOTS = (5.136, 8.418)
RESIDUAL_TOLERANCE = 1e-12
#   ka grid values are rounded to this many decimals so that 0.5 + 13 * 0.05 prints as 1.15
KA_DECIMALS = 12


def ka_range(start: float, stop: float, step: float) -> ty.Tuple[float, ...]:
    """
    :param start: first ka, > 0
    :param stop: last ka, included when it lies on the grid
    :param step: spacing, > 0
    :return: start, start + step, ... up to stop, every value start + i * step rounded to KA_DECIMALS
    """
    for name, value in (('start', start), ('stop', stop), ('step', step)):
        if not math.isfinite(value):
            raise DomainError(f"ka {name} must be finite, got {value}")
    if not start > 0:
        raise DomainError(f"ka start must be > 0, got {start}")
    if not step > 0:
        raise DomainError(f"ka step must be > 0, got {step}")
    if stop < start:
        raise DomainError(f"ka stop must be >= start, got {start}..{stop}")
    intervals = int(math.floor((stop - start) / step + 1e-9))
    values = np.round(start + step * np.arange(intervals + 1), KA_DECIMALS)
    return tuple(float(value) for value in values)


def builtin_presets() -> ty.List[SweepSpec]:
    """
    :return: the specs behind the three published figures, all at rho = 2.15 in paper-literal mode
    """
    ka_grid = ka_range(KA_START, KA_STOP, KA_STEP)
    grid_note = (f"ka {KA_START:g}..{KA_STOP:g} step {KA_STEP:g} chosen (axis range unpublished); "
                 f"rho_num {PAPER_RHO_NUM:g}")
    compression_note = f"lambda set {{{', '.join(f'{lam:g}' for lam in COMPRESSION_LAMBDAS)}}} chosen for 'lambda < 1'"
    fig1 = SweepSpec(ka_grid=ka_grid, lambdas=(1.0,), deltas=PUBLISHED_DELTAS, xis=(PUBLISHED_ROOTS[0],),
                     label='fig1', notes=f"damping velocity at xi = {PUBLISHED_ROOTS[0]}; {grid_note}")
    fig2 = SweepSpec(ka_grid=ka_grid, lambdas=COMPRESSION_LAMBDAS, deltas=(0.0,), xis=(PUBLISHED_ROOTS[0],),
                     label='fig2', notes=f"phase velocity at xi = {PUBLISHED_ROOTS[0]}; {compression_note}; {grid_note}")
    fig3 = SweepSpec(ka_grid=ka_grid, lambdas=COMPRESSION_LAMBDAS, deltas=(0.0,), xis=(PUBLISHED_ROOTS[1],),
                     label='fig3', notes=f"phase velocity at xi = {PUBLISHED_ROOTS[1]}; {compression_note}; {grid_note}")
    return [fig1, fig2, fig3]


def preset(name: str) -> SweepSpec:
    presets = {spec.label: spec for spec in builtin_presets()}
    if name not in presets:
        raise DomainError(f"unknown preset {name!r}; choose one of {sorted(presets)}")
    return presets[name]


def _evaluate_point(dispersion_input: DispersionInput) -> CurveRow:
    #   Module level so that worker processes can unpickle it
    solution = solve_velocity(dispersion_input)
    return CurveRow(
        ka=dispersion_input.ka,
        lambda_=dispersion_input.lambda_,
        delta=dispersion_input.delta_hat,
        xi=dispersion_input.xi,
        re_c_over_beta=solution.c_over_beta.real,
        im_c_over_beta=solution.c_over_beta.imag,
        classification=str(solution.classification),
    )


def audit_rows(inputs: ty.Sequence[DispersionInput], rows: ty.Sequence[CurveRow]):
    """
    Re-check every evaluated row against its own input: finite entries and a quadratic residual within
    RESIDUAL_TOLERANCE * max(1, R).
    :raise SweepAuditError: on the first row that fails
    """
    if len(inputs) != len(rows):
        raise SweepAuditError(f"expected {len(inputs)} rows, got {len(rows)}")
    worst = 0.0
    for dispersion_input, row in zip(inputs, rows):
        if (row.ka, row.lambda_, row.delta, row.xi) != (dispersion_input.ka, dispersion_input.lambda_,
                                                        dispersion_input.delta_hat, dispersion_input.xi):
            raise SweepAuditError(f"row {row} is out of canonical order")
        if not (math.isfinite(row.re_c_over_beta) and math.isfinite(row.im_c_over_beta)):
            raise SweepAuditError(f"non-finite velocity in row {row}")
        c = complex(row.re_c_over_beta, row.im_c_over_beta)
        r_term = build_R(dispersion_input)
        residual = abs(c * c - c * build_I(dispersion_input) - r_term) / max(1.0, r_term)
        if residual > RESIDUAL_TOLERANCE:
            audit_logger.error(f"Residual {residual:.3e} at {dispersion_input}")
            raise SweepAuditError(f"quadratic residual {residual:.3e} exceeds {RESIDUAL_TOLERANCE:g} at row {row}")
        worst = max(worst, residual)
    audit_logger.info(f"Audited {len(rows)} rows, worst relative residual {worst:.3e}")


def run_sweep(spec: SweepSpec, jobs: int = 1) -> CurveTable:
    """
    :param spec: the grid to evaluate
    :param jobs: number of worker processes; 1 evaluates in this process
    :return: the table of the full grid. Pool.map hands results back in submission order, so the table is the same
    for every value of jobs.
    """
    if jobs < 1:
        raise DomainError(f"jobs must be >= 1, got {jobs}")
    inputs = list(spec.grid())
    logger.info(f"Sweep {spec.label or '<unlabelled>'}: {len(inputs)} points, {spec.damping_mode} mode, {jobs} job(s)")

    if jobs > 1 and len(inputs) > 1:
        with mp.Pool(processes=min(jobs, len(inputs))) as pool:
            rows = pool.map(_evaluate_point, inputs)
    else:
        rows = [_evaluate_point(dispersion_input) for dispersion_input in inputs]

    audit_rows(inputs, rows)
    evanescent = sum(1 for row in rows if row.classification != Classification.PROPAGATING)
    if evanescent:
        logger.info(f"Sweep {spec.label}: {evanescent} evanescent point(s)")

    provenance = {
        'tool_version': __version__,
        'damping_mode': str(spec.damping_mode),
        'rho_num': f"{spec.rho_num:g}",
        'label': spec.label,
        'notes': spec.notes,
    }
    return CurveTable(spec=spec, rows=tuple(rows), provenance=provenance)
