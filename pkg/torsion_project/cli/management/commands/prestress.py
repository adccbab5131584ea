from cli.forms import PrestressForm
from cli.utils import format_number
from material.models import MaterialModel
from material.utils import prestress_from_lambda, lambda_from_prestress
from ._base import TorsionCommand


class Command(TorsionCommand):
    help = 'Print the initial stress state of an extension ratio, or the extension ratio of an initial stress'
    form_class = PrestressForm

    def add_parameters(self, parser):
        parser.add_argument('--lambda', dest='lambda_', help='axial extension ratio')
        parser.add_argument('--pressure', help='axial initial stress P, compression positive')
        parser.add_argument('--mu', help='shear modulus, default 1')

    def defaults(self):
        return {'mu': 1.0}

    def compute(self, cleaned_data):
        #   the density does not enter the static problem
        model = MaterialModel(mu=cleaned_data['mu'], rho=1.0)
        lambda_ = cleaned_data['lambda_']
        if lambda_ is None:
            lambda_ = lambda_from_prestress(model, cleaned_data['pressure'])
        state = prestress_from_lambda(model, lambda_)
        for name, value in (('lambda', state.lambda_), ('P', state.P), ('Q1', state.Q1), ('Q2', state.Q2),
                            ('lambda_r', state.lambda_r), ('lambda_theta', state.lambda_theta),
                            ('lambda_z', state.lambda_z)):
            self.stdout.write(f"{name},{format_number(value)}")
