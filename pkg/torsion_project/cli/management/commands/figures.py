from django.conf import settings

from cli.forms import FiguresForm
from cli.utils import write_figure
from sweep.utils import preset, run_sweep
from ._base import TorsionCommand, default_jobs, logger


class Command(TorsionCommand):
    help = 'Regenerate the CSV table and SVG chart of the published figures'
    form_class = FiguresForm

    def add_parameters(self, parser):
        parser.add_argument('--which', action='append', help='1, 2 or 3; repeat for several, default all')
        parser.add_argument('--out-dir', help='output directory, default FIGURES_ROOT')
        parser.add_argument('--jobs', help='worker processes, default one per logical processor')

    def defaults(self):
        return {'out_dir': settings.FIGURES_ROOT, 'jobs': default_jobs()}

    def compute(self, cleaned_data):
        for number in cleaned_data['which']:
            name = f"fig{number}"
            table = run_sweep(preset(name), jobs=cleaned_data['jobs'])
            for path in write_figure(table, cleaned_data['out_dir'], name):
                self.stdout.write(path)
            logger.info(f"figures: {name} written to {cleaned_data['out_dir']}")
