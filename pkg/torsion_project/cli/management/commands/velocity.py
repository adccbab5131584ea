from django.conf import settings

from cli.forms import VelocityForm
from cli.utils import format_number
from dispersion.models import DispersionInput
from dispersion.utils import solve_velocity
from ._base import TorsionCommand


class Command(TorsionCommand):
    help = 'Solve the dispersion quadratic at one point and print c/beta'
    form_class = VelocityForm

    def add_parameters(self, parser):
        parser.add_argument('--ka', help='dimensionless wavenumber k a')
        parser.add_argument('--lambda', dest='lambda_', help='axial extension ratio, default 1')
        parser.add_argument('--delta', help='damping parameter, default 0')
        parser.add_argument('--xi', help='mode root, default 0 (fundamental mode)')
        parser.add_argument('--mode', help='paper-literal or consistent')
        parser.add_argument('--rho', help='density number dividing the damping in paper-literal mode')

    def defaults(self):
        return {'lambda_': 1.0, 'delta': 0.0, 'xi': 0.0, 'mode': settings.DEFAULT_DAMPING_MODE,
                'rho': settings.DEFAULT_RHO_NUM}

    def compute(self, cleaned_data):
        solution = solve_velocity(DispersionInput(
            ka=cleaned_data['ka'],
            lambda_=cleaned_data['lambda_'],
            delta_hat=cleaned_data['delta'],
            xi=cleaned_data['xi'],
            rho_num=cleaned_data['rho'],
            damping_mode=cleaned_data['mode'],
        ))
        self.stdout.write('re_c_over_beta,im_c_over_beta,classification,quadratic_residual')
        self.stdout.write(','.join([
            format_number(solution.c_over_beta.real),
            format_number(solution.c_over_beta.imag),
            str(solution.classification),
            f"{solution.quadratic_residual():.3e}",
        ]))
