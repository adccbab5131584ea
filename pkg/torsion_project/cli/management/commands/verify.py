from cli.forms import VerifyForm
from cli.verification import run_suites
from ._base import TorsionCommand, EXIT_VERIFICATION


class Command(TorsionCommand):
    help = 'Run the self-verification suites; exits 3 when any suite fails'
    form_class = VerifyForm

    def compute(self, cleaned_data):
        results = run_suites()
        for result in results:
            self.stdout.write(f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail} | {result.description}")
        failed = [result.name for result in results if not result.passed]
        if failed:
            raise self.fail(f"{len(failed)} of {len(results)} suites failed: {', '.join(failed)}", EXIT_VERIFICATION)
