"""
One form per subcommand. The management commands hand every flag over as the raw string the user typed (or the value
found in a --config file) and a form decides whether the run may start.
"""
import cmath
import dataclasses
import typing as ty

from django import forms
from django.core.exceptions import ValidationError

from dispersion.models import DampingMode
from special_functions.bessel import MAX_ARGUMENT
from sweep.models import SweepSpec
from sweep.utils import builtin_presets, ka_range, preset
from torsion_project.exceptions import DomainError

OUTPUT_FORMATS = (('csv', 'CSV table'), ('csv+svg', 'CSV table and SVG chart'))
PRESET_CHOICES = [('', 'explicit grid')] + [(spec.label, spec.label) for spec in builtin_presets()]
FIGURE_CHOICES = [(str(number), f"fig{number}") for number in (1, 2, 3)]


def validate_positive(value):
    if value is not None and not value > 0:
        raise ValidationError('must be > 0, got %(value)s', params={'value': value})


class FloatListField(forms.Field):
    """
    Comma separated reals, e.g. "0.7,0.8,0.9"; a list of numbers is accepted as is
    """

    def to_python(self, value) -> ty.Optional[ty.List[float]]:
        if value in self.empty_values:
            return None
        items = value.split(',') if isinstance(value, str) else value
        try:
            return [float(item) for item in items]
        except (TypeError, ValueError):
            raise ValidationError('enter comma separated numbers, got %(value)s', params={'value': value})


class ComplexField(forms.Field):
    """
    A complex number written the Python way, "5.2-0.05j"; "i" is accepted for "j"
    """

    def to_python(self, value) -> ty.Optional[complex]:
        if value in self.empty_values:
            return None
        try:
            number = complex(str(value).replace(' ', '').replace('i', 'j'))
        except ValueError:
            raise ValidationError('enter a complex number such as 5.2-0.05j, got %(value)s', params={'value': value})
        if not cmath.isfinite(number):
            raise ValidationError('must be finite')
        return number


class DampingForm(forms.Form):
    mode = forms.ChoiceField(choices=DampingMode.choices)
    rho = forms.FloatField(validators=[validate_positive])


class RootsForm(forms.Form):
    count = forms.IntegerField(min_value=1)
    scan_max = forms.FloatField(validators=[validate_positive], max_value=MAX_ARGUMENT)


class VelocityForm(DampingForm):
    ka = forms.FloatField(validators=[validate_positive])
    lambda_ = forms.FloatField(validators=[validate_positive])
    delta = forms.FloatField(min_value=0.0)
    xi = forms.FloatField(min_value=0.0)


class SweepForm(DampingForm):
    preset = forms.ChoiceField(choices=PRESET_CHOICES, required=False)
    ka_start = forms.FloatField(required=False)
    ka_stop = forms.FloatField(required=False)
    ka_step = forms.FloatField(required=False)
    lambdas = FloatListField(required=False)
    deltas = FloatListField(required=False)
    xis = FloatListField(required=False)
    label = forms.CharField(required=False)
    jobs = forms.IntegerField(min_value=1)
    output = forms.CharField(required=False)
    format = forms.ChoiceField(choices=OUTPUT_FORMATS)

    GRID_FIELDS = ('ka_start', 'ka_stop', 'ka_step', 'lambdas', 'deltas', 'xis')

    def clean(self):
        cleaned_data = super().clean()
        if self.errors:
            return cleaned_data
        given = ['--' + name.replace('_', '-') for name in self.GRID_FIELDS if cleaned_data.get(name) is not None]
        try:
            if cleaned_data['preset']:
                if given:
                    raise ValidationError(f"--preset cannot be combined with {', '.join(given)}")
                spec = dataclasses.replace(preset(cleaned_data['preset']), damping_mode=cleaned_data['mode'],
                                           rho_num=cleaned_data['rho'])
                if cleaned_data['label']:
                    spec = dataclasses.replace(spec, label=cleaned_data['label'])
            else:
                missing = ['--' + name.replace('_', '-') for name in self.GRID_FIELDS
                           if name != 'deltas' and cleaned_data.get(name) is None]
                if missing:
                    raise ValidationError(f"either --preset or all of {', '.join(missing)} is required")
                spec = SweepSpec(
                    ka_grid=ka_range(cleaned_data['ka_start'], cleaned_data['ka_stop'], cleaned_data['ka_step']),
                    lambdas=cleaned_data['lambdas'],
                    deltas=cleaned_data['deltas'] or [0.0],
                    xis=cleaned_data['xis'],
                    damping_mode=cleaned_data['mode'],
                    label=cleaned_data['label'],
                    rho_num=cleaned_data['rho'],
                )
        except DomainError as e:
            raise ValidationError(str(e))
        if cleaned_data['format'] == 'csv+svg' and not cleaned_data['output']:
            raise ValidationError('--format csv+svg needs --output')
        cleaned_data['spec'] = spec
        return cleaned_data


class FiguresForm(forms.Form):
    which = forms.TypedMultipleChoiceField(choices=FIGURE_CHOICES, coerce=int, required=False)
    out_dir = forms.CharField()
    jobs = forms.IntegerField(min_value=1)

    def clean_which(self):
        #   nothing selected means every figure
        return sorted(set(self.cleaned_data['which'])) or [1, 2, 3]


class PrestressForm(forms.Form):
    lambda_ = forms.FloatField(required=False, validators=[validate_positive])
    pressure = forms.FloatField(required=False)
    mu = forms.FloatField(validators=[validate_positive])

    def clean(self):
        cleaned_data = super().clean()
        if self.errors:
            return cleaned_data
        if (cleaned_data.get('lambda_') is None) == (cleaned_data.get('pressure') is None):
            raise ValidationError('give exactly one of --lambda and --pressure')
        return cleaned_data


class ShapeForm(forms.Form):
    eta_a = ComplexField()
    points = forms.IntegerField(min_value=1, max_value=10000)

    def clean_eta_a(self):
        eta_a = self.cleaned_data['eta_a']
        if abs(eta_a) > MAX_ARGUMENT:
            raise ValidationError(f"|eta_a| must be <= {MAX_ARGUMENT:g}, got {abs(eta_a):g}")
        return eta_a


class VerifyForm(forms.Form):
    pass


def form_errors(form: forms.Form) -> str:
    """
    :return: the form's errors on one line, fields named by their flag
    """
    messages = []
    for field, errors in form.errors.items():
        flag = 'input' if field == '__all__' else '--' + field.rstrip('_').replace('_', '-')
        messages.append(f"{flag}: {' '.join(errors)}")
    return '; '.join(messages)
