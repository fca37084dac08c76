from unittest import mock

from selc.conf_cohomology import Family, conf_generators
from selc.exceptions import CacheCorruptionError, EngineError
from selc.verifier import (
    Quadruple,
    check_graded_selc,
    enumerate_quadruples,
    stability_report,
    verify_degree,
)

from .utils import CacheTestCase


class QuadrupleTests(CacheTestCase):
    def test_enumeration(self):
        self.assertEqual(enumerate_quadruples(3), [])
        self.assertEqual(enumerate_quadruples(4), [Quadruple(1, 2, 2, 3)])
        self.assertEqual(enumerate_quadruples(5), [Quadruple(1, 2, 3, 4)])
        self.assertEqual(
            set(enumerate_quadruples(6)),
            {Quadruple(1, 2, 4, 5), Quadruple(1, 3, 3, 5), Quadruple(2, 3, 3, 4)},
        )
        self.assertEqual(sum(len(enumerate_quadruples(m)) for m in (4, 5, 6)), 5)

    def test_constraints_hold(self):
        for m in range(4, 12):
            for q in enumerate_quadruples(m):
                self.assertTrue(0 < q.i < q.j <= q.k < q.l)
                self.assertEqual(q.i + q.l, q.j + q.k)

    def test_degree_sum_below_two(self):
        with self.assertRaises(EngineError):
            enumerate_quadruples(1)


class VerifyDegreeTests(CacheTestCase):
    def test_a_degree_four_is_contained(self):
        report = verify_degree(Family.A, 4, 'oracle', self.store)
        self.assertTrue(report.all_contained)
        [verdict] = report.verdicts
        self.assertEqual(verdict.bound, 8)
        self.assertEqual(verdict.window, (9,))
        self.assertEqual(len(verdict.spot_checks), 3)

    def test_c_degree_four_is_contained(self):
        self.assertTrue(verify_degree(Family.C, 4, 'oracle', self.store).all_contained)

    def test_swapped_sides_fail_in_degree_three(self):
        report = verify_degree(Family.A, 4, 'oracle', self.store, swap=True)
        self.assertFalse(report.all_contained)
        [verdict] = report.verdicts
        self.assertEqual(verdict.verdict, 'violated')
        self.assertEqual(verdict.witness[0], 3)

    def test_structured_records(self):
        report = verify_degree(Family.A, 4, 'oracle', self.store)
        record = report.verdicts[0].record()
        self.assertEqual(
            set(record),
            {'family', 'i', 'j', 'k', 'l', 'm', 'verdict', 'witness', 'bound', 'tier', 'millis'},
        )
        self.assertEqual((record['i'], record['j'], record['k'], record['l'], record['m']), (1, 2, 2, 3, 4))

    def test_long_run_checkpoints_verdicts(self):
        verify_degree(Family.A, 4, 'oracle', self.store, long_run=True)
        self.assertTrue(self.store.exists('verdict', 'A-1-2-2-3.json'))
        again = verify_degree(Family.A, 4, 'oracle', self.store, long_run=True)
        self.assertEqual(again.verdicts[0].verdict, 'contained')

    def test_truncated_checkpoint_is_corruption(self):
        self.store.write('{"family": "A", "i": 1, "j": 2,', 'verdict', 'A-1-2-2-3.json')
        with self.assertRaises(CacheCorruptionError) as ctx:
            verify_degree(Family.A, 4, 'oracle', self.store, long_run=True)
        self.assertTrue(str(ctx.exception.path).endswith('A-1-2-2-3.json'))
        self.assertEqual(self.store.read('verdict', 'A-1-2-2-3.json'), '{"family": "A", "i": 1, "j": 2,')

    def test_checkpoint_of_another_family_is_corruption(self):
        verify_degree(Family.C, 4, 'oracle', self.store, long_run=True)
        self.store.write(self.store.read('verdict', 'C-1-2-2-3.json'), 'verdict', 'A-1-2-2-3.json')
        with self.assertRaises(CacheCorruptionError):
            verify_degree(Family.A, 4, 'oracle', self.store, long_run=True)

    def test_flags_the_printed_degree_six_of_a2_a2(self):
        report = verify_degree(Family.A, 4, 'oracle', self.store)
        notes = [flag for flag in report.flags if flag.startswith('discrepancy')]
        self.assertEqual(len(notes), 1)
        self.assertIn('H0(A^2⊗A^2) at n=6', notes[0])
        self.assertIn('note: discrepancy', report.text())

    def test_no_discrepancy_flag_for_c(self):
        report = verify_degree(Family.C, 4, 'oracle', self.store)
        self.assertFalse(any(flag.startswith('discrepancy') for flag in report.flags))

    def test_merged_reports_keep_one_copy_of_each_flag(self):
        report = verify_degree(Family.A, 4, 'oracle', self.store)
        report.merge(verify_degree(Family.A, 4, 'oracle', self.store))
        self.assertEqual(len([f for f in report.flags if f.startswith('discrepancy')]), 1)

    def test_jobs_reach_the_generator_precomputation(self):
        with mock.patch('selc.verifier.conf_generators', wraps=conf_generators) as spy:
            report = verify_degree(Family.A, 4, 'oracle', self.store, jobs=2)
        self.assertTrue(report.all_contained)
        precomputed = [c for c in spy.call_args_list if len(c.args) == 5]
        self.assertEqual(sorted(c.args[1] for c in precomputed), [1, 2, 3])
        self.assertTrue(all(c.args[4] == 2 for c in precomputed))

    def test_scale_gates(self):
        with self.assertRaises(EngineError):
            verify_degree(Family.A, 7, 'oracle', self.store)
        with self.assertRaises(EngineError):
            verify_degree(Family.A, 11, 'auto', self.store)


class GradedSelcTests(CacheTestCase):
    def test_fixed_points(self):
        self.assertTrue(check_graded_selc(Family.A, 4, 4, 'oracle', self.store).contained)
        self.assertTrue(check_graded_selc(Family.C, 4, 5, 'oracle', self.store).contained)

    def test_left_side_vanishes_on_three_points(self):
        verdict = check_graded_selc(Family.A, 4, 3, 'oracle', self.store)
        self.assertTrue(verdict.contained)

    def test_no_quadruples_is_vacuous(self):
        verdict = check_graded_selc(Family.A, 3, 4, 'oracle', self.store)
        self.assertTrue(verdict.contained)
        self.assertEqual(verdict.results, [])


class StabilityReportTests(CacheTestCase):
    def test_a1(self):
        report = stability_report(Family.A, 1, tier='oracle', store=self.store)
        self.assertEqual(report.detected, 4)
        self.assertTrue(report.sharp)
        self.assertEqual(report.tensor_bound, 8)
        self.assertEqual(report.vanishing_bound, 4)

    def test_too_few_points(self):
        report = stability_report(Family.C, 1, points=3, tier='oracle', store=self.store)
        self.assertIsNone(report.detected)
        self.assertIn('not yet stable', report.describe())

    def test_generator_band_not_yet_passed(self):
        report = stability_report(Family.A, 2, points=2, tier='oracle', store=self.store)
        self.assertIsNone(report.detected)
        self.assertFalse(report.sharp)
        self.assertIn('A^2 through n=2: not yet stable', report.describe())
