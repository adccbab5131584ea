import csv
import io
import json
import os
import tempfile
import time
import xml.etree.ElementTree as ET
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.db import connections
from django.test import SimpleTestCase

from dispersion import utils as dispersion_utils
from special_functions import bessel
from sweep.models import SweepSpec
from sweep.utils import run_sweep
from .forms import SweepForm, PrestressForm, ShapeForm, VelocityForm
from .utils import format_number, table_to_csv, tick_step, axis_range, load_config, chart_context, DAMPING, CSV_HEADER
from .verification import default_suites, run_suites, ModeRootSuite

SVG_NS = '{http://www.w3.org/2000/svg}'
_original_bessel_j = bessel.bessel_j


def run(name: str, **options) -> str:
    out = io.StringIO()
    call_command(name, stdout=out, **options)
    return out.getvalue()


def read_csv(path: str):
    with open(path, newline='', encoding='utf-8') as f:
        return list(csv.DictReader(f))


class SettingsTests(SimpleTestCase):

    def test_project_runs_without_a_database(self):
        self.assertEqual(connections['default'].settings_dict['ENGINE'], 'django.db.backends.dummy')
        run('check')


class FormattingTests(SimpleTestCase):

    def test_nine_significant_digits(self):
        self.assertEqual(format_number(1 / 3), '0.333333333')
        self.assertEqual(format_number(2 ** 0.5), '1.41421356')
        self.assertEqual(format_number(1.0), '1')
        self.assertEqual(format_number(123456789.4), '123456789')

    def test_negative_zero_prints_as_zero(self):
        self.assertEqual(format_number(-0.0), '0')

    def test_tick_steps(self):
        self.assertEqual(tick_step(2.5), 0.5)
        self.assertEqual(tick_step(1.0), 0.2)
        self.assertEqual(tick_step(0.09), 0.02)

    def test_axis_range_encloses_values(self):
        low, high, step = axis_range([0.51, 2.97])
        self.assertLessEqual(low, 0.51)
        self.assertGreaterEqual(high, 2.97)
        low, high, _ = axis_range([1.0, 1.0])
        self.assertLess(low, 1.0)
        self.assertGreater(high, 1.0)

    def test_csv_schema(self):
        table = run_sweep(SweepSpec(ka_grid=(1.0, 2.0), lambdas=(1.0,), deltas=(0.0,), xis=(0.0,)))
        self.assertEqual(table_to_csv(table), 'ka,lambda,delta,xi,re_c_over_beta,im_c_over_beta,classification\n'
                                              '1,1,0,0,1,0,propagating\n'
                                              '2,1,0,0,1,0,propagating\n')


class ConfigFileTests(SimpleTestCase):

    def test_keys_become_option_names(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'run.json')
            with open(path, 'w') as f:
                json.dump({'scan-max': 12, 'lambda': 0.8, 'ka_start': 1}, f)
            self.assertEqual(load_config(path), {'scan_max': 12, 'lambda_': 0.8, 'ka_start': 1})


class FormTests(SimpleTestCase):

    def test_velocity_form_rejects_nonpositive_ka(self):
        form = VelocityForm(data={'ka': '0', 'lambda_': '1', 'delta': '0', 'xi': '0', 'mode': 'consistent',
                                  'rho': '2.15'})
        self.assertFalse(form.is_valid())
        self.assertIn('ka', form.errors)

    def test_sweep_form_builds_the_spec(self):
        form = SweepForm(data={'ka_start': '0.5', 'ka_stop': '1', 'ka_step': '0.25', 'lambdas': '0.8,0.9',
                               'xis': '5.136', 'mode': 'paper-literal', 'rho': '2.15', 'jobs': '1', 'format': 'csv'})
        self.assertTrue(form.is_valid(), form.errors)
        spec = form.cleaned_data['spec']
        self.assertEqual(spec.ka_grid, (0.5, 0.75, 1.0))
        self.assertEqual(spec.deltas, (0.0,))

    def test_prestress_form_needs_exactly_one_input(self):
        self.assertFalse(PrestressForm(data={'mu': '1'}).is_valid())
        self.assertFalse(PrestressForm(data={'mu': '1', 'lambda_': '0.8', 'pressure': '0.61'}).is_valid())
        self.assertTrue(PrestressForm(data={'mu': '1', 'pressure': '0.61'}).is_valid())

    def test_shape_form_reads_complex_numbers(self):
        form = ShapeForm(data={'eta_a': '5.2-0.05i', 'points': '8'})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['eta_a'], 5.2 - 0.05j)


class RootsCommandTests(SimpleTestCase):

    def test_first_two_roots(self):
        lines = run('roots', count='2').splitlines()
        self.assertEqual(lines[0], 'index,xi,residual')
        values = [float(line.split(',')[1]) for line in lines[1:]]
        self.assertEqual(len(values), 2)
        self.assertAlmostEqual(values[0], 5.13562230184, delta=1e-10)
        self.assertAlmostEqual(values[1], 8.41724414040, delta=1e-10)

    def test_single_root(self):
        (line,) = run('roots', count='1').splitlines()[1:]
        self.assertEqual(round(float(line.split(',')[1]), 3), 5.136)

    def test_insufficient_scan_range(self):
        with self.assertRaises(CommandError) as cm:
            run('roots', count='3', scan_max='10')
        self.assertEqual(cm.exception.returncode, 1)
        self.assertIn('only 2 found', str(cm.exception))

    def test_invalid_count(self):
        for count in ('0', 'two', '1.5'):
            with self.subTest(count=count), self.assertRaises(CommandError) as cm:
                run('roots', count=count)
            self.assertEqual(cm.exception.returncode, 1)
            self.assertIn('--count', str(cm.exception))


class VelocityCommandTests(SimpleTestCase):

    @staticmethod
    def values(output: str):
        header, row = output.splitlines()
        return dict(zip(header.split(','), row.split(',')))

    def test_root_two_case(self):
        values = self.values(run('velocity', ka='5.136', lambda_='1', delta='0', xi='5.136'))
        self.assertEqual(values['re_c_over_beta'], '1.41421356')
        self.assertEqual(values['im_c_over_beta'], '0')
        self.assertEqual(values['classification'], 'propagating')

    def test_damped_paper_literal_point(self):
        values = self.values(run('velocity', ka='1', lambda_='1', delta='0.1', xi='5.136', mode='paper-literal',
                                 rho='2.15'))
        self.assertAlmostEqual(float(values['re_c_over_beta']), 5.232396, delta=5e-6)
        self.assertAlmostEqual(float(values['im_c_over_beta']), -0.023256, delta=1e-6)
        self.assertLessEqual(float(values['quadratic_residual']), 1e-12 * 27.4)

    def test_fundamental_mode(self):
        values = self.values(run('velocity', ka='2', lambda_='0.8', delta='0', xi='0'))
        self.assertEqual(values['re_c_over_beta'], '0.8')
        self.assertEqual(values['im_c_over_beta'], '0')

    def test_invalid_parameters_name_the_flag(self):
        for options, flag in (({'ka': '-1'}, '--ka'), ({'ka': '1', 'lambda_': '0'}, '--lambda'),
                              ({'ka': '1', 'delta': '-0.5'}, '--delta'), ({'ka': '1', 'mode': 'exact'}, '--mode'),
                              ({'ka': 'nan'}, '--ka'), ({}, '--ka')):
            with self.subTest(**options), self.assertRaises(CommandError) as cm:
                run('velocity', **options)
            self.assertEqual(cm.exception.returncode, 1)
            self.assertIn(flag, str(cm.exception))

    def test_config_file_and_flag_precedence(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'point.json')
            with open(path, 'w') as f:
                json.dump({'ka': 5.136, 'lambda': 1, 'xi': 5.136}, f)
            self.assertEqual(self.values(run('velocity', config=path))['re_c_over_beta'], '1.41421356')
            overridden = self.values(run('velocity', config=path, xi='0'))
            self.assertEqual(overridden['re_c_over_beta'], '1')

    def test_bad_config_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            unknown = os.path.join(tmp, 'unknown.json')
            with open(unknown, 'w') as f:
                json.dump({'ka': 1, 'colour': 'red'}, f)
            broken = os.path.join(tmp, 'broken.json')
            with open(broken, 'w') as f:
                f.write('{"ka": ')
            for path, returncode in ((unknown, 1), (broken, 1), (os.path.join(tmp, 'missing.json'), 2)):
                with self.subTest(path=path), self.assertRaises(CommandError) as cm:
                    run('velocity', config=path)
                self.assertEqual(cm.exception.returncode, returncode)


class SweepCommandTests(SimpleTestCase):

    def test_preset_to_standard_output(self):
        lines = run('sweep', preset='fig1', jobs='1').splitlines()
        self.assertEqual(lines[0], ','.join(CSV_HEADER))
        self.assertEqual(len(lines), 1 + 51 * 4)

    def test_explicit_grid(self):
        rows = list(csv.DictReader(io.StringIO(run('sweep', ka_start='1', ka_stop='2', ka_step='0.5',
                                                   lambdas='0.8,1', xis='0', jobs='1'))))
        self.assertEqual(len(rows), 6)
        self.assertEqual([row['ka'] for row in rows[:3]], ['1', '1.5', '2'])
        self.assertEqual(rows[0]['lambda'], '0.8')
        self.assertEqual(rows[0]['re_c_over_beta'], '0.8')

    def test_consistent_mode_preset(self):
        rows = list(csv.DictReader(io.StringIO(run('sweep', preset='fig1', mode='consistent', jobs='1'))))
        first = rows[0]
        self.assertAlmostEqual(float(first['im_c_over_beta']), -float(first['delta']) / (2 * float(first['ka'])),
                               delta=1e-9)

    def test_invalid_combinations(self):
        for options in ({'preset': 'fig1', 'lambdas': '0.8'}, {'lambdas': '0.8', 'xis': '0'},
                        {'preset': 'fig9'}, {'preset': 'fig1', 'format': 'csv+svg'},
                        {'ka_start': '1', 'ka_stop': '2', 'ka_step': '0.5', 'lambdas': '0.8,x', 'xis': '0'},
                        {'preset': 'fig1', 'jobs': '0'}):
            with self.subTest(**options), self.assertRaises(CommandError) as cm:
                run('sweep', **options)
            self.assertEqual(cm.exception.returncode, 1)

    def test_csv_and_svg_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            output = os.path.join(tmp, 'out', 'fig2.csv')
            run('sweep', preset='fig2', output=output, format='csv+svg', jobs='1')
            self.assertEqual(len(read_csv(output)), 51 * 4)
            root = ET.parse(os.path.join(tmp, 'out', 'fig2.svg')).getroot()
            self.assertEqual(len(root.findall(f'.//{SVG_NS}polyline')), 4)

    def test_parallel_output_equals_serial(self):
        self.assertEqual(run('sweep', preset='fig3', jobs='2'), run('sweep', preset='fig3', jobs='1'))

    def test_failed_audit_exits_with_verification_status(self):
        with mock.patch('sweep.utils.solve_velocity', side_effect=_skewed_solution):
            with self.assertLogs('sweep.audit', level='ERROR'), self.assertRaises(CommandError) as cm:
                run('sweep', preset='fig1', jobs='1')
        self.assertEqual(cm.exception.returncode, 3)


class FiguresCommandTests(SimpleTestCase):

    def figures(self, out_dir: str, *which: str, jobs: str = '1') -> str:
        return run('figures', which=list(which), out_dir=out_dir, jobs=jobs)

    def test_fig2_has_four_monotone_curves(self):
        with tempfile.TemporaryDirectory() as tmp:
            self.figures(tmp, '2')
            rows = read_csv(os.path.join(tmp, 'fig2.csv'))
        lambdas = sorted({row['lambda'] for row in rows}, key=float)
        self.assertEqual(lambdas, ['0.7', '0.8', '0.9', '1'])
        by_ka = {}
        for row in rows:
            by_ka.setdefault(row['ka'], []).append((float(row['lambda']), float(row['re_c_over_beta'])))
        self.assertEqual(len(by_ka), 51)
        for ka, points in by_ka.items():
            velocities = [velocity for _, velocity in sorted(points)]
            for previous, current in zip(velocities, velocities[1:]):
                self.assertGreater(previous, current, msg=f"ka={ka}")

    def test_fig1_damping_orders_as_delta(self):
        with tempfile.TemporaryDirectory() as tmp:
            self.figures(tmp, '1')
            rows = read_csv(os.path.join(tmp, 'fig1.csv'))
        by_ka = {}
        for row in rows:
            by_ka.setdefault(row['ka'], []).append((float(row['delta']), abs(float(row['im_c_over_beta']))))
        for points in by_ka.values():
            magnitudes = [magnitude for _, magnitude in sorted(points)]
            self.assertEqual(len(magnitudes), 4)
            for previous, current in zip(magnitudes, magnitudes[1:]):
                self.assertLess(previous, current)

    def test_fig3_exceeds_fig2(self):
        with tempfile.TemporaryDirectory() as tmp:
            self.figures(tmp, '2', '3')
            fig2 = read_csv(os.path.join(tmp, 'fig2.csv'))
            fig3 = read_csv(os.path.join(tmp, 'fig3.csv'))
        for low, high in zip(fig2, fig3):
            self.assertEqual((low['ka'], low['lambda']), (high['ka'], high['lambda']))
            self.assertEqual(high['xi'], '8.418')
            self.assertGreater(float(high['re_c_over_beta']), float(low['re_c_over_beta']))

    def test_byte_identical_across_runs_and_jobs(self):
        with tempfile.TemporaryDirectory() as first, tempfile.TemporaryDirectory() as second:
            self.figures(first, jobs='1')
            self.figures(second, jobs='2')
            for name in ('fig1.csv', 'fig2.csv', 'fig3.csv', 'fig1.svg'):
                with open(os.path.join(first, name), 'rb') as f, open(os.path.join(second, name), 'rb') as g:
                    self.assertEqual(f.read(), g.read(), msg=name)

    def test_csv_text_layout(self):
        with tempfile.TemporaryDirectory() as tmp:
            self.figures(tmp, '1')
            with open(os.path.join(tmp, 'fig1.csv'), 'rb') as f:
                content = f.read().decode('utf-8')
        self.assertNotIn('\r', content)
        self.assertTrue(content.endswith('\n'))
        for line in content.splitlines():
            self.assertEqual(line, line.strip())
            self.assertEqual(len(line.split(',')), 7)
        self.assertNotIn('nan', content.lower())
        self.assertNotIn('inf', content.lower())

    def test_svg_is_well_formed(self):
        with tempfile.TemporaryDirectory() as tmp:
            self.figures(tmp, '1')
            root = ET.parse(os.path.join(tmp, 'fig1.svg')).getroot()
        self.assertEqual(root.tag, f'{SVG_NS}svg')
        self.assertEqual(root.attrib['viewBox'], '0 0 640 400')
        polylines = root.findall(f'.//{SVG_NS}polyline')
        self.assertEqual(len(polylines), 4)
        for polyline in polylines:
            pairs = polyline.attrib['points'].split()
            self.assertEqual(len(pairs), 51)
            for pair in pairs:
                self.assertRegex(pair, r'^\d+\.\d{3},\d+\.\d{3}$')
        labels = [text.text for text in root.iter(f'{SVG_NS}text')]
        self.assertIn('ka', labels)
        self.assertIn('δ = 0.05', labels)

    def test_lists_written_paths(self):
        with tempfile.TemporaryDirectory() as tmp:
            lines = self.figures(tmp, '3').splitlines()
        self.assertEqual([os.path.basename(line) for line in lines], ['fig3.csv', 'fig3.svg'])

    def test_unwritable_output_directory(self):
        with tempfile.TemporaryDirectory() as tmp:
            blocker = os.path.join(tmp, 'not_a_directory')
            with open(blocker, 'w') as f:
                f.write('')
            with self.assertRaises(CommandError) as cm:
                self.figures(blocker, '2')
        self.assertEqual(cm.exception.returncode, 2)

    def test_unknown_figure(self):
        with tempfile.TemporaryDirectory() as tmp, self.assertRaises(CommandError) as cm:
            self.figures(tmp, '4')
        self.assertEqual(cm.exception.returncode, 1)


class ChartTests(SimpleTestCase):

    def test_damping_chart_plots_magnitudes(self):
        table = run_sweep(SweepSpec(ka_grid=(1.0, 2.0), lambdas=(1.0,), deltas=(0.1, 0.2), xis=(5.136,)))
        context = chart_context(table, DAMPING, 'test')
        self.assertEqual([curve['label'] for curve in context['curves']], ['δ = 0.1', 'δ = 0.2'])
        for curve in context['curves']:
            for pair in curve['points'].split():
                x, y = (float(value) for value in pair.split(','))
                self.assertTrue(72.0 <= x <= 500.0)
                self.assertTrue(40.0 <= y <= 344.0)


class PrestressCommandTests(SimpleTestCase):

    @staticmethod
    def values(output: str):
        return {name: float(value) for name, value in (line.split(',') for line in output.splitlines())}

    def test_compression_example(self):
        values = self.values(run('prestress', lambda_='0.8'))
        self.assertAlmostEqual(values['P'], 0.61, delta=1e-9)
        self.assertAlmostEqual(values['Q1'], 1.25, delta=1e-9)
        self.assertAlmostEqual(values['Q2'], 0.945, delta=1e-9)
        self.assertAlmostEqual(values['lambda_r'] * values['lambda_theta'] * values['lambda_z'], 1.0, delta=1e-8)

    def test_from_pressure(self):
        values = self.values(run('prestress', pressure='2.44', mu='4'))
        self.assertAlmostEqual(values['lambda'], 0.8, delta=1e-8)

    def test_invalid_input(self):
        for options in ({}, {'lambda_': '0.8', 'pressure': '1'}, {'lambda_': '-1'}, {'pressure': '1', 'mu': '0'}):
            with self.subTest(**options), self.assertRaises(CommandError) as cm:
                run('prestress', **options)
            self.assertEqual(cm.exception.returncode, 1)


class ShapeCommandTests(SimpleTestCase):

    def test_profile_and_residuals(self):
        lines = run('shape', eta_a='5.1356223', points='4').splitlines()
        self.assertEqual(lines[0], 'r_over_a,re_v,im_v')
        self.assertEqual(lines[1], '0,0,0')
        self.assertEqual(len(lines), 1 + 5 + 2)
        surface = lines[5].split(',')
        self.assertEqual(surface[0], '1')
        self.assertAlmostEqual(float(surface[1]), -0.33967, delta=1e-5)
        traction = float(lines[6].split(',')[1])
        self.assertLessEqual(traction, 1e-6)
        self.assertLessEqual(float(lines[7].split(',')[1]), 1e-6)

    def test_invalid_input(self):
        for eta_a in ('abc', '60', ''):
            with self.subTest(eta_a=eta_a), self.assertRaises(CommandError) as cm:
                run('shape', eta_a=eta_a)
            self.assertEqual(cm.exception.returncode, 1)


def _perturbed_bessel_j(order, z):
    value = _original_bessel_j(order, z)
    return value + 1e-3 if order == 1 else value


def _skewed_solution(point):
    solution = dispersion_utils.solve_velocity(point)
    return mock.Mock(c_over_beta=solution.c_over_beta * 1.001, classification=solution.classification)


class VerifyCommandTests(SimpleTestCase):

    def test_all_suites_pass(self):
        started = time.perf_counter()
        lines = run('verify').splitlines()
        self.assertLess(time.perf_counter() - started, 10.0)
        self.assertEqual(len(lines), len(default_suites()))
        for line in lines:
            self.assertTrue(line.startswith('PASS '), msg=line)

    def test_each_line_carries_the_suite_description(self):
        lines = run('verify').splitlines()
        for suite, line in zip(default_suites(), lines):
            self.assertTrue(line.startswith(f'PASS {suite.name}: '), msg=line)
            self.assertTrue(line.endswith(f' | {suite.description()}'), msg=line)

    def test_results_per_suite(self):
        for result in run_suites():
            self.assertTrue(result.passed, msg=result.detail)
            self.assertGreater(result.checked, 0)

    def test_perturbed_bessel_function_fails_the_root_suite(self):
        with mock.patch('special_functions.bessel.bessel_j', side_effect=_perturbed_bessel_j):
            result = ModeRootSuite().execute()
            self.assertFalse(result.passed)
            out = io.StringIO()
            with self.assertRaises(CommandError) as cm:
                call_command('verify', stdout=out)
        self.assertEqual(cm.exception.returncode, 3)
        self.assertIn('FAIL mode-roots', out.getvalue())
        self.assertIn('mode-roots', str(cm.exception))


class RegenerateFiguresScriptTests(SimpleTestCase):

    def test_writes_every_figure(self):
        from scripts.regenerate_figures import regenerate_figures
        messages = []
        with tempfile.TemporaryDirectory() as tmp:
            paths = regenerate_figures(tmp, jobs=1, logger=messages.append)
            self.assertTrue(all(os.path.isfile(path) for path in paths))
        self.assertEqual(sorted(os.path.basename(path) for path in paths),
                         ['fig1.csv', 'fig1.svg', 'fig2.csv', 'fig2.svg', 'fig3.csv', 'fig3.svg'])
        self.assertEqual(len(messages), 3)
        self.assertTrue(messages[0].startswith('fig1: 204 rows'))
