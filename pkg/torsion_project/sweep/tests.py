from unittest import mock

from django.test import SimpleTestCase

from dispersion import utils as dispersion_utils
from dispersion.models import DampingMode, Classification
from torsion_project.exceptions import DomainError, SweepAuditError
from .models import SweepSpec, CurveRow
from .utils import (ka_range, builtin_presets, preset, run_sweep, audit_rows, COMPRESSION_LAMBDAS, PUBLISHED_DELTAS,
                    PUBLISHED_ROOTS)


def small_spec(**changes) -> SweepSpec:
    fields = dict(ka_grid=(0.5, 1.0, 2.0), lambdas=(0.9, 0.8), deltas=(0.1, 0.0), xis=(5.136, 0.0), label='small')
    fields.update(changes)
    return SweepSpec(**fields)


class SweepSpecTests(SimpleTestCase):

    def test_parameter_lists_are_stored_sorted(self):
        spec = small_spec()
        self.assertEqual(spec.lambdas, (0.8, 0.9))
        self.assertEqual(spec.deltas, (0.0, 0.1))
        self.assertEqual(spec.xis, (0.0, 5.136))
        self.assertEqual(spec.size, 24)

    def test_lists_become_tuples(self):
        spec = small_spec(ka_grid=[1.0, 2.0], lambdas=[1.0])
        self.assertIsInstance(spec.ka_grid, tuple)
        self.assertEqual(hash(spec), hash(small_spec(ka_grid=(1.0, 2.0), lambdas=(1.0,))))

    def test_invalid_specs(self):
        for changes in ({'ka_grid': ()}, {'ka_grid': (1.0, 1.0)}, {'ka_grid': (2.0, 1.0)}, {'ka_grid': (0.0, 1.0)},
                        {'lambdas': ()}, {'lambdas': (-1.0,)}, {'deltas': (-0.1,)}, {'xis': (-5.0,)},
                        {'xis': (5.136, 5.136)}, {'deltas': (float('nan'),)}, {'damping_mode': 'exact'},
                        {'rho_num': 0.0}):
            with self.subTest(**{key: str(value) for key, value in changes.items()}), self.assertRaises(DomainError):
                small_spec(**changes)

    def test_grid_order(self):
        keys = [(point.xi, point.lambda_, point.delta_hat, point.ka) for point in small_spec().grid()]
        self.assertEqual(keys, sorted(keys))
        self.assertEqual(len(keys), len(set(keys)))
        self.assertEqual(len(keys), small_spec().size)

    def test_grid_carries_damping_reading(self):
        spec = small_spec(damping_mode=DampingMode.CONSISTENT, rho_num=1.5)
        for point in spec.grid():
            self.assertEqual(point.damping_mode, DampingMode.CONSISTENT)
            self.assertEqual(point.rho_num, 1.5)


class KaRangeTests(SimpleTestCase):

    def test_preset_axis(self):
        grid = ka_range(0.5, 3.0, 0.05)
        self.assertEqual(len(grid), 51)
        self.assertEqual(grid[0], 0.5)
        self.assertEqual(grid[-1], 3.0)
        self.assertEqual(grid[13], 1.15)
        self.assertEqual(repr(grid[13]), '1.15')

    def test_stop_off_grid(self):
        self.assertEqual(ka_range(1.0, 1.25, 0.1), (1.0, 1.1, 1.2))

    def test_single_point(self):
        self.assertEqual(ka_range(2.0, 2.0, 0.5), (2.0,))

    def test_invalid_ranges(self):
        for args in ((0.0, 1.0, 0.1), (1.0, 0.5, 0.1), (0.5, 1.0, 0.0), (0.5, float('inf'), 0.1)):
            with self.subTest(args=args), self.assertRaises(DomainError):
                ka_range(*args)


class PresetTests(SimpleTestCase):

    def test_three_presets(self):
        self.assertEqual([spec.label for spec in builtin_presets()], ['fig1', 'fig2', 'fig3'])
        for spec in builtin_presets():
            self.assertEqual(spec.rho_num, 2.15)
            self.assertEqual(spec.damping_mode, DampingMode.PAPER_LITERAL)
            self.assertEqual(spec.ka_grid, ka_range(0.5, 3.0, 0.05))
            self.assertTrue(spec.notes)

    def test_fig1_damping_values(self):
        spec = preset('fig1')
        self.assertEqual(set(spec.deltas), {0.05, 0.1, 0.15, 0.2})
        self.assertEqual(spec.deltas, PUBLISHED_DELTAS)
        self.assertEqual(spec.lambdas, (1.0,))
        self.assertEqual(spec.xis, (5.136,))

    def test_compression_presets(self):
        self.assertEqual(preset('fig2').xis, (5.136,))
        self.assertEqual(preset('fig3').xis, (8.418,))
        self.assertEqual(preset('fig3').xis, (PUBLISHED_ROOTS[1],))
        for name in ('fig2', 'fig3'):
            self.assertEqual(preset(name).lambdas, COMPRESSION_LAMBDAS)
            self.assertEqual(preset(name).deltas, (0.0,))

    def test_unknown_preset(self):
        with self.assertRaisesMessage(DomainError, 'fig4'):
            preset('fig4')


class RunSweepTests(SimpleTestCase):

    def test_single_trivial_point(self):
        table = run_sweep(SweepSpec(ka_grid=(1.0,), lambdas=(1.0,), deltas=(0.0,), xis=(0.0,)))
        self.assertEqual(len(table.rows), 1)
        row = table.rows[0]
        self.assertEqual((row.re_c_over_beta, row.im_c_over_beta), (1.0, 0.0))
        self.assertEqual(row.classification, 'propagating')

    def test_row_count_matches_the_product(self):
        for spec in builtin_presets():
            table = run_sweep(spec)
            self.assertEqual(len(table.rows),
                             len(spec.ka_grid) * len(spec.lambdas) * len(spec.deltas) * len(spec.xis))

    def test_rows_in_canonical_order(self):
        rows = run_sweep(small_spec()).rows
        keys = [(row.xi, row.lambda_, row.delta, row.ka) for row in rows]
        self.assertEqual(keys, sorted(keys))

    def test_fig2_compression_raises_velocity(self):
        curves = run_sweep(preset('fig2')).curves()
        self.assertEqual(len(curves), 4)
        by_lambda = [[row.re_c_over_beta for row in curves[(5.136, lam, 0.0)]] for lam in COMPRESSION_LAMBDAS]
        for faster, slower in zip(by_lambda, by_lambda[1:]):
            for fast, slow in zip(faster, slower):
                self.assertGreater(fast, slow)

    def test_fig1_damping_velocity_grows_with_delta(self):
        curves = run_sweep(preset('fig1')).curves()
        by_delta = [[abs(row.im_c_over_beta) for row in curves[(5.136, 1.0, delta)]] for delta in PUBLISHED_DELTAS]
        for weaker, stronger in zip(by_delta, by_delta[1:]):
            for weak, strong in zip(weaker, stronger):
                self.assertLess(weak, strong)

    def test_fig3_exceeds_fig2(self):
        fig2, fig3 = run_sweep(preset('fig2')).rows, run_sweep(preset('fig3')).rows
        for low, high in zip(fig2, fig3):
            self.assertEqual((low.ka, low.lambda_), (high.ka, high.lambda_))
            self.assertGreater(high.re_c_over_beta, low.re_c_over_beta)

    def test_deterministic(self):
        self.assertEqual(run_sweep(preset('fig1')).rows, run_sweep(preset('fig1')).rows)

    def test_parallel_equals_serial(self):
        spec = preset('fig2')
        self.assertEqual(run_sweep(spec, jobs=2).rows, run_sweep(spec, jobs=1).rows)

    def test_evanescent_points_are_rows_not_errors(self):
        spec = SweepSpec(ka_grid=(0.5, 1.0), lambdas=(1.0,), deltas=(3.0,), xis=(0.0,),
                         damping_mode=DampingMode.CONSISTENT)
        table = run_sweep(spec)
        self.assertEqual([row.classification for row in table.rows], [Classification.EVANESCENT] * 2)
        self.assertEqual(table.rows[0].re_c_over_beta, 0.0)

    def test_provenance(self):
        table = run_sweep(preset('fig3'))
        self.assertEqual(table.provenance['damping_mode'], 'paper-literal')
        self.assertEqual(table.provenance['rho_num'], '2.15')
        self.assertEqual(table.provenance['label'], 'fig3')
        self.assertIn('lambda set', table.provenance['notes'])
        self.assertIn('tool_version', table.provenance)

    def test_invalid_job_count(self):
        with self.assertRaises(DomainError):
            run_sweep(small_spec(), jobs=0)

    def test_curves_group_by_parameters(self):
        curves = run_sweep(small_spec()).curves()
        self.assertEqual(len(curves), 8)
        for rows in curves.values():
            self.assertEqual([row.ka for row in rows], [0.5, 1.0, 2.0])


class AuditTests(SimpleTestCase):

    def test_audit_rejects_a_wrong_velocity(self):
        spec = small_spec()
        inputs = list(spec.grid())
        rows = list(run_sweep(spec).rows)
        rows[3] = rows[3]._replace(re_c_over_beta=rows[3].re_c_over_beta + 1e-6)
        with self.assertLogs('sweep.audit', level='ERROR'), self.assertRaises(SweepAuditError):
            audit_rows(inputs, rows)

    def test_audit_rejects_non_finite_rows(self):
        inputs = list(small_spec().grid())
        rows = [CurveRow(point.ka, point.lambda_, point.delta_hat, point.xi, float('nan'), 0.0, 'propagating')
                for point in inputs]
        with self.assertRaises(SweepAuditError):
            audit_rows(inputs, rows)

    def test_audit_rejects_missing_rows(self):
        inputs = list(small_spec().grid())
        with self.assertRaises(SweepAuditError):
            audit_rows(inputs, [])

    def test_sweep_runs_the_audit(self):
        with mock.patch('sweep.utils.solve_velocity', side_effect=_skewed_solution):
            with self.assertRaises(SweepAuditError):
                run_sweep(small_spec())


def _skewed_solution(point):
    solution = dispersion_utils.solve_velocity(point)
    return mock.Mock(c_over_beta=solution.c_over_beta * 1.001, classification=solution.classification)
