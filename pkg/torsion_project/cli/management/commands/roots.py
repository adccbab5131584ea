from django.conf import settings

from cli.forms import RootsForm
from special_functions.utils import find_mode_roots, frequency_equation
from ._base import TorsionCommand, logger


class Command(TorsionCommand):
    help = 'Print the first roots of the traction-free frequency equation x J1\'(x) - J1(x) = 0'
    form_class = RootsForm

    def add_parameters(self, parser):
        parser.add_argument('--count', help='number of nontrivial roots, default 2')
        parser.add_argument('--scan-max', help='upper end of the scan, at most 50')

    def defaults(self):
        return {'count': 2, 'scan_max': settings.DEFAULT_SCAN_MAX}

    def compute(self, cleaned_data):
        roots = find_mode_roots(cleaned_data['count'], cleaned_data['scan_max'])
        self.stdout.write('index,xi,residual')
        for root in roots:
            self.stdout.write(f"{root.index},{root.xi:.12g},{abs(frequency_equation(root.xi)):.3e}")
        logger.info(f"roots: {len(roots)} root(s) below {cleaned_data['scan_max']:g}")
