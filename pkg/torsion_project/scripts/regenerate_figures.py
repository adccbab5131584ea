import logging

from django.conf import settings

from cli.management.commands._base import default_jobs
from cli.utils import write_figure
from sweep.utils import builtin_presets, run_sweep

scripts_logger = logging.getLogger('scripts')


def regenerate_figures(out_dir: str, jobs: int, logger=print) -> list:
    """
    :param out_dir: directory receiving figN.csv and figN.svg
    :param jobs: sweep worker processes
    :param logger: a function that takes a string
    :return: every path written
    """
    paths = []
    for spec in builtin_presets():
        table = run_sweep(spec, jobs=jobs)
        written = write_figure(table, out_dir, spec.label)
        logger(f"{spec.label}: {len(table.rows)} rows -> {', '.join(written)}")
        paths.extend(written)
    return paths


def run(logger=print):
    paths = regenerate_figures(settings.FIGURES_ROOT, default_jobs(), logger=logger)
    scripts_logger.info(f"regenerate_figures: {len(paths)} files in {settings.FIGURES_ROOT}")
