import os

from django.conf import settings

from cli.forms import SweepForm
from cli.utils import table_to_csv, write_text, render_chart, FIGURE_QUANTITIES, PHASE, AXIS_LABELS
from sweep.utils import run_sweep
from ._base import TorsionCommand, default_jobs, logger


class Command(TorsionCommand):
    help = 'Evaluate a grid of dispersion points, either a figure preset or an explicit grid, and write it as CSV'
    form_class = SweepForm

    def add_parameters(self, parser):
        parser.add_argument('--preset', help='fig1, fig2 or fig3')
        parser.add_argument('--ka-start')
        parser.add_argument('--ka-stop')
        parser.add_argument('--ka-step')
        parser.add_argument('--lambdas', help='comma separated extension ratios')
        parser.add_argument('--deltas', help='comma separated damping parameters, default 0')
        parser.add_argument('--xis', help='comma separated mode roots')
        parser.add_argument('--mode', help='paper-literal or consistent')
        parser.add_argument('--rho', help='density number dividing the damping in paper-literal mode')
        parser.add_argument('--label', help='free text kept in the table provenance')
        parser.add_argument('--jobs', help='worker processes, default one per logical processor')
        parser.add_argument('--output', help='CSV path; the table goes to standard output when omitted')
        parser.add_argument('--format', help='csv or csv+svg')

    def defaults(self):
        return {'mode': settings.DEFAULT_DAMPING_MODE, 'rho': settings.DEFAULT_RHO_NUM, 'jobs': default_jobs(),
                'format': 'csv'}

    def compute(self, cleaned_data):
        spec = cleaned_data['spec']
        table = run_sweep(spec, jobs=cleaned_data['jobs'])
        text = table_to_csv(table)
        output = cleaned_data['output']
        if not output:
            self.stdout.write(text, ending='')
            return
        write_text(output, text)
        logger.info(f"sweep: wrote {len(table.rows)} rows to {output}")
        if cleaned_data['format'] == 'csv+svg':
            quantity = FIGURE_QUANTITIES.get(spec.label, PHASE)
            svg_path = os.path.splitext(output)[0] + '.svg'
            title = f"{spec.label or 'sweep'}: {AXIS_LABELS[quantity]} versus ka"
            write_text(svg_path, render_chart(table, quantity, title))
            logger.info(f"sweep: wrote chart {svg_path}")
