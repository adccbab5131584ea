from cli.forms import ShapeForm
from cli.utils import format_number
from dispersion.models import ModeShape
from dispersion.utils import ode_residual
from ._base import TorsionCommand

ODE_POINTS = 256


class Command(TorsionCommand):
    help = 'Print the radial mode shape V(r/a) = J1(eta_a r/a) with its surface traction and ODE residuals'
    form_class = ShapeForm

    def add_parameters(self, parser):
        parser.add_argument('--eta-a', help='eta * a, real or complex such as 5.2-0.05j')
        parser.add_argument('--points', help='number of radial intervals printed, default 16')

    def defaults(self):
        return {'points': 16}

    def compute(self, cleaned_data):
        shape = ModeShape(eta_a=cleaned_data['eta_a'])
        self.stdout.write('r_over_a,re_v,im_v')
        for r_over_a, value in shape.profile(cleaned_data['points']):
            value = complex(value)
            self.stdout.write(f"{format_number(r_over_a)},{format_number(value.real)},{format_number(value.imag)}")
        self.stdout.write(f"# traction_residual,{shape.traction_residual():.3e}")
        self.stdout.write(f"# ode_residual,{ode_residual(shape.eta_a, ODE_POINTS):.3e}")
