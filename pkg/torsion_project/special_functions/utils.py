import logging
import math
import typing as ty

from scipy import optimize

from torsion_project.exceptions import DomainError, InsufficientScanRangeError
from . import bessel
from .models import ModeRoot

logger = logging.getLogger('special_functions')

#   Spacing of the uniform scan that brackets sign changes of the frequency equation
SCAN_STEP = 0.1
#   Bisection stops once the bracket is this narrow
BRACKET_WIDTH = 1e-12


def frequency_equation(xi: float) -> float:
    """
    :param xi: nonnegative dimensionless argument eta * a
    :return: f(xi) = xi J1'(xi) - J1(xi), the traction on a stress-free cylinder surface; f(0) = 0
    """
    if xi < 0:
        raise DomainError(f"frequency equation needs xi >= 0, got {xi}")
    if xi == 0:
        return 0.0
    return (xi * bessel.bessel_j1_prime(xi) - bessel.bessel_j(1, xi)).real


def scan_nodes(scan_max: float, step: float = SCAN_STEP) -> ty.List[float]:
    """
    :return: step, 2 step, ... up to scan_max, with scan_max itself appended when it is not a multiple of step
    """
    count = int(math.floor(scan_max / step + 1e-9))
    nodes = [i * step for i in range(1, count + 1)]
    if not nodes or nodes[-1] < scan_max:
        nodes.append(scan_max)
    return nodes


def bracket_sign_changes(scan_max: float) -> ty.List[ty.Tuple[float, float]]:
    """
    :param scan_max: right end of the scanned interval (0, scan_max]
    :return: consecutive scan nodes (left, right) between which the frequency equation changes sign, in increasing
    order. A node where f vanishes exactly is returned as the degenerate bracket (node, node).
    """
    nodes = scan_nodes(scan_max)
    values = [frequency_equation(node) for node in nodes]
    brackets = []
    for (left, f_left), (right, f_right) in zip(zip(nodes, values), zip(nodes[1:], values[1:])):
        if f_right == 0:
            brackets.append((right, right))
        elif f_left != 0 and (f_left < 0) != (f_right < 0):
            brackets.append((left, right))
    return brackets


def find_mode_roots(count: int, scan_max: float) -> ty.List[ModeRoot]:
    """
    :param count: how many positive roots to return
    :param scan_max: right end of the scan; must contain `count` roots and stay inside the Bessel domain
    :return: the first `count` positive roots of the frequency equation, increasing, each refined by bisection
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    if not 0 < scan_max <= bessel.MAX_ARGUMENT:
        raise DomainError(f"scan_max must lie in (0, {bessel.MAX_ARGUMENT:g}], got {scan_max}")

    brackets = bracket_sign_changes(scan_max)
    if len(brackets) < count:
        raise InsufficientScanRangeError(requested=count, found=len(brackets), scan_max=scan_max)

    roots = []
    for index, (left, right) in enumerate(brackets[:count], start=1):
        if left == right:
            xi = left
        else:
            xi, result = optimize.bisect(frequency_equation, left, right, xtol=BRACKET_WIDTH, full_output=True)
            if not result.converged:
                raise DomainError(f"bisection did not converge on ({left}, {right})")
        logger.debug(f"root {index}: xi = {xi!r}, |f| = {abs(frequency_equation(xi)):.3e}")
        roots.append(ModeRoot(index=index, xi=xi))
    return roots
