import logging
import typing as ty

import psutil
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from cli.forms import form_errors
from cli.utils import load_config
from torsion_project.exceptions import DomainError, SweepAuditError

logger = logging.getLogger('cli')

#   Exit statuses of every subcommand
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_VERIFICATION = 3


def default_jobs() -> int:
    return settings.SWEEP_JOBS or psutil.cpu_count(logical=True) or 1


class TorsionCommand(BaseCommand):
    """
    Shared plumbing of the subcommands.
    Subclasses declare their flags in add_parameters() with no argparse type and no default, so that a flag the user
    did not give arrives as None; name the form that validates them in form_class; and do the work in compute().
    Values are layered as settings defaults, then the --config file, then the flags given on the command line.
    """
    form_class = None

    def add_arguments(self, parser):
        parser.add_argument('--config', help='JSON file whose keys mirror the long flag names')
        self.add_parameters(parser)

    def add_parameters(self, parser):
        pass

    def defaults(self) -> ty.Dict[str, ty.Any]:
        return {}

    def compute(self, cleaned_data: ty.Dict[str, ty.Any]):
        raise NotImplementedError('compute not defined')

    @property
    def command_name(self) -> str:
        return self.__module__.rsplit('.', 1)[-1]

    def read_config(self, path: str) -> ty.Dict[str, ty.Any]:
        try:
            config = load_config(path)
        except OSError as e:
            raise self.fail(f"cannot read config {path}: {e}", EXIT_IO)
        except DomainError as e:
            raise self.fail(str(e), EXIT_VALIDATION)
        unknown = sorted(set(config) - set(self.form_class.base_fields))
        if unknown:
            raise self.fail(f"config {path} has keys {self.command_name} does not take: {', '.join(unknown)}",
                            EXIT_VALIDATION)
        return config

    def collect(self, options: ty.Dict[str, ty.Any]) -> ty.Dict[str, ty.Any]:
        data = self.defaults()
        if options.get('config'):
            data.update(self.read_config(options['config']))
        data.update({name: value for name, value in options.items()
                     if name in self.form_class.base_fields and value is not None})
        return data

    def fail(self, message: str, returncode: int) -> CommandError:
        logger.error(f"{self.command_name}: {message}")
        return CommandError(message, returncode=returncode)

    def handle(self, *args, **options):
        form = self.form_class(data=self.collect(options))
        if not form.is_valid():
            raise self.fail(form_errors(form), EXIT_VALIDATION)
        try:
            self.compute(form.cleaned_data)
        except DomainError as e:
            raise self.fail(str(e), EXIT_VALIDATION)
        except SweepAuditError as e:
            raise self.fail(str(e), EXIT_VERIFICATION)
        except OSError as e:
            raise self.fail(f"{type(e).__name__}: {e}", EXIT_IO)
