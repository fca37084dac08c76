from unittest import mock

from django.test import override_settings

from selc import conf_cohomology
from selc.conf_cohomology import (
    SignConvention,
    Family,
    calibrate,
    calibrated_convention,
    conf_decomposition,
    conf_fb_module,
    conf_generators,
    conf_module_from_generators,
    family_for_dimension,
    nbc_basis,
    oracle_character,
    poincare_dimension,
    stability_check,
    straighten,
    tier2_character,
)
from selc.exceptions import BudgetExceededError, CacheCorruptionError, EngineError, UndefinedDegreeError
from selc.fb_modules import stabilization_degree, tensor
from selc.fi_sharp import h_zero, m_image
from selc.partitions import stirling_cycle
from selc.rep_algebra import decompose, irreducible, parse_rep, sign_twist

from .utils import CacheTestCase


class FamilyTests(CacheTestCase):
    def test_parse(self):
        self.assertIs(Family.parse('a'), Family.A)
        self.assertIs(Family.parse(Family.C), Family.C)
        with self.assertRaises(EngineError):
            Family.parse('B')

    def test_dimension_parity(self):
        self.assertIs(family_for_dimension(2), Family.A)
        self.assertIs(family_for_dimension(3), Family.C)
        self.assertIs(family_for_dimension(4), Family.A)
        with self.assertRaises(EngineError):
            family_for_dimension(1)

    def test_sharp_stable_degrees(self):
        self.assertEqual(Family.A.sharp_stable_degree(2), 7)
        self.assertEqual(Family.C.sharp_stable_degree(2), 6)


class NormalFormTests(CacheTestCase):
    def test_basis_size_is_a_stirling_number(self):
        for n in range(1, 7):
            for i in range(n):
                self.assertEqual(len(nbc_basis(n, i)), stirling_cycle(n, n - i))
                self.assertEqual(poincare_dimension(n, i), stirling_cycle(n, n - i))
        self.assertEqual(poincare_dimension(3, 3), 0)

    def test_orientation_sign(self):
        self.assertEqual(straighten([(1, 2)], Family.A), {((2, 1),): 1})
        self.assertEqual(straighten([(1, 2)], Family.C), {((2, 1),): -1})

    def test_repeated_generator_vanishes(self):
        self.assertEqual(straighten([(2, 1), (1, 2)], Family.A), {})

    def test_arnold_rewrite(self):
        self.assertEqual(
            straighten([(3, 1), (3, 2)], Family.A),
            {((2, 1), (3, 1)): -1, ((2, 1), (3, 2)): 1},
        )

    def test_out_of_range_index(self):
        with self.assertRaises(EngineError):
            straighten([(4, 1)], Family.A, n=3)


class OracleTests(CacheTestCase):
    def test_degree_zero_is_trivial(self):
        self.assertEqual(conf_decomposition(Family.A, 0, 4, 'oracle', self.store), irreducible((4,)))

    def test_a1(self):
        self.assertEqual(
            conf_decomposition(Family.A, 1, 4, 'oracle', self.store),
            parse_rep('1*[4] + 1*[3,1] + 1*[2,2]', 4),
        )

    def test_a2_on_four_points(self):
        rep = conf_decomposition(Family.A, 2, 4, 'oracle', self.store)
        self.assertEqual(rep, parse_rep('2*[3,1] + 1*[2,2] + 1*[2,1,1]', 4))
        self.assertEqual(rep.dimension(), 11)

    def test_c2_on_four_points(self):
        self.assertEqual(
            conf_decomposition(Family.C, 2, 4, 'oracle', self.store),
            parse_rep('1*[3,1] + 2*[2,2] + 1*[2,1,1] + 1*[1,1,1,1]', 4),
        )

    def test_c1_on_two_points_is_the_sign(self):
        c1 = conf_decomposition(Family.C, 1, 2, 'oracle', self.store)
        self.assertEqual(c1, irreducible((1, 1)))
        self.assertEqual(c1, sign_twist(conf_decomposition(Family.A, 1, 2, 'oracle', self.store)))

    def test_dimensions(self):
        for fam in Family:
            for n in range(1, 7):
                for i in range(n):
                    rep = decompose(oracle_character(fam, i, n), self.store)
                    self.assertEqual(rep.dimension(), stirling_cycle(n, n - i), (fam, i, n))

    def test_budget(self):
        with self.assertRaises(BudgetExceededError):
            oracle_character(Family.A, 3, 6, budget=10)

    def test_decomposition_is_cached(self):
        conf_decomposition(Family.A, 1, 3, 'oracle', self.store)
        self.assertEqual(
            self.store.read('conf', 'A-i1-n3.txt'),
            'conf A i=1 n=3\n1*[3] + 1*[2,1]\n',
        )
        self.store.write('conf C i=1 n=3\n1*[3]\n', 'conf', 'A-i1-n3.txt')
        with self.assertRaises(CacheCorruptionError):
            conf_decomposition(Family.A, 1, 3, 'oracle', self.store)


@override_settings(EQLC_CALIBRATION_MAX_DEGREE=2, EQLC_CALIBRATION_MAX_POINTS=5)
class PlethysticTierTests(CacheTestCase):
    def test_calibration_picks_one_convention_per_family(self):
        self.assertEqual(calibrate(Family.A, self.store), SignConvention(True, True))
        self.assertEqual(calibrate(Family.C, self.store), SignConvention(False, False))
        self.assertTrue(self.store.exists('calibration', 'A.txt'))

    def test_calibration_is_reused(self):
        calibrate(Family.C, self.store)
        self.assertEqual(calibrated_convention(Family.C, self.store), SignConvention(False, False))

    def test_tiers_agree_off_the_grid(self):
        for fam, convention in ((Family.A, SignConvention(True, True)), (Family.C, SignConvention(False, False))):
            for i, n in ((3, 5), (2, 6), (4, 6)):
                self.assertEqual(
                    tier2_character(fam, i, n, convention, cross_check=False),
                    oracle_character(fam, i, n),
                    (fam, i, n),
                )


class GeneratorTests(CacheTestCase):
    def test_a1_generated_by_the_trivial_rep_of_s2(self):
        self.assertEqual(conf_generators(Family.A, 1, 'oracle', self.store).degrees, {2: irreducible((2,))})
        self.assertEqual(conf_generators(Family.C, 1, 'oracle', self.store).degrees, {2: irreducible((1, 1))})

    def test_generator_band(self):
        for fam in Family:
            for i in (1, 2, 3):
                degrees = conf_generators(fam, i, 'oracle', self.store).generator_degrees()
                self.assertTrue(degrees, (fam, i))
                self.assertTrue(all(i + 1 <= n <= 2 * i for n in degrees), (fam, i, degrees))

    def test_generators_are_cached_with_provenance(self):
        conf_generators(Family.A, 2, 'oracle', self.store)
        text = self.store.read('genmod', 'A-i2.txt')
        self.assertIn('provenance=computed conf A i=2', text)

    def test_generators_rebuild_the_module(self):
        for fam in Family:
            direct = conf_fb_module(fam, 2, 7, 'oracle', self.store)
            rebuilt = conf_module_from_generators(fam, 2, 7, 'oracle', self.store)
            self.assertEqual(rebuilt.degrees, direct.degrees)


class StabilityTests(CacheTestCase):
    def test_sharp_stabilization(self):
        for fam, i, points, expected in ((Family.A, 1, 6, 4), (Family.C, 1, 5, 3), (Family.A, 2, 9, 7), (Family.C, 2, 8, 6)):
            module = conf_fb_module(fam, i, points, 'oracle', self.store)
            check = stability_check(fam, i, module)
            self.assertEqual(check.detected, expected, (fam, i))
            self.assertTrue(check.matches)

    def test_no_stable_tail_before_the_generator_band_is_passed(self):
        module = conf_fb_module(Family.A, 2, 2, 'oracle', self.store)
        self.assertIsNone(module.stable_from)
        self.assertFalse(module.is_defined(5))
        with self.assertRaises(UndefinedDegreeError):
            module.degree(5)
        with self.assertRaises(UndefinedDegreeError):
            tensor(module, module, 5, self.store)
        self.assertIsNone(stability_check(Family.A, 2, module).detected)

    def test_no_stable_tail_inside_the_generator_band(self):
        for fam in Family:
            module = conf_fb_module(fam, 2, 4, 'oracle', self.store)
            self.assertIsNone(module.stable_from, fam)

    def test_stable_tail_reproduces_computed_degrees(self):
        module = conf_fb_module(Family.A, 1, 6, 'oracle', self.store)
        self.assertEqual(module.stable_from, 4)
        self.assertEqual(module.degree(8), conf_decomposition(Family.A, 1, 8, 'oracle', self.store))


class CacheCorruptionTests(CacheTestCase):
    def setUp(self):
        super().setUp()
        memo = mock.patch.dict(conf_cohomology._CONVENTIONS, clear=True)
        memo.start()
        self.addCleanup(memo.stop)

    def test_garbled_decomposition(self):
        self.store.write('conf A i=1 n=3\ngarbage\n', 'conf', 'A-i1-n3.txt')
        with self.assertRaises(CacheCorruptionError) as ctx:
            conf_decomposition(Family.A, 1, 3, 'oracle', self.store)
        self.assertEqual(ctx.exception.path, self.store.path('conf', 'A-i1-n3.txt'))

    def test_decomposition_of_the_wrong_weight(self):
        self.store.write('conf A i=1 n=3\n1*[4]\n', 'conf', 'A-i1-n3.txt')
        with self.assertRaises(CacheCorruptionError):
            conf_decomposition(Family.A, 1, 3, 'oracle', self.store)

    def test_negative_multiplicity(self):
        self.store.write('conf A i=1 n=3\n-1*[3]\n', 'conf', 'A-i1-n3.txt')
        with self.assertRaises(CacheCorruptionError):
            conf_decomposition(Family.A, 1, 3, 'oracle', self.store)

    @override_settings(EQLC_CALIBRATION_MAX_DEGREE=2, EQLC_CALIBRATION_MAX_POINTS=5)
    def test_malformed_sign_convention(self):
        for body in ('garbage', 'twist_even_lie=2 exterior_even=0', 'twist_even_lie=1', ''):
            with self.subTest(body=body):
                self.store.write(f'calibration C grid i<=2 n<=5\n{body}\n', 'calibration', 'C.txt')
                with self.assertRaises(CacheCorruptionError):
                    calibrated_convention(Family.C, self.store)

    @override_settings(EQLC_CALIBRATION_MAX_DEGREE=2, EQLC_CALIBRATION_MAX_POINTS=5)
    def test_junk_calibration_is_not_overwritten(self):
        self.store.write('junk\n', 'calibration', 'C.txt')
        with self.assertRaises(CacheCorruptionError):
            calibrated_convention(Family.C, self.store)
        self.assertEqual(self.store.read('calibration', 'C.txt'), 'junk\n')

    @override_settings(EQLC_CALIBRATION_MAX_DEGREE=2, EQLC_CALIBRATION_MAX_POINTS=5)
    def test_calibration_of_another_family(self):
        self.store.write('calibration A grid i<=2 n<=5\ntwist_even_lie=1 exterior_even=1\n', 'calibration', 'C.txt')
        with self.assertRaises(CacheCorruptionError):
            calibrated_convention(Family.C, self.store)

    @override_settings(EQLC_CALIBRATION_MAX_DEGREE=2, EQLC_CALIBRATION_MAX_POINTS=5)
    def test_calibration_on_another_grid_is_redone(self):
        self.store.write('calibration C grid i<=1 n<=3\ntwist_even_lie=1 exterior_even=1\n', 'calibration', 'C.txt')
        self.assertEqual(calibrated_convention(Family.C, self.store), SignConvention(False, False))
        self.assertTrue(self.store.read('calibration', 'C.txt').startswith('calibration C grid i<=2 n<=5\n'))

    @override_settings(EQLC_CALIBRATION_MAX_DEGREE=2, EQLC_CALIBRATION_MAX_POINTS=5)
    def test_recorded_calibration_is_read_back(self):
        self.store.write('calibration C grid i<=2 n<=5\ntwist_even_lie=0 exterior_even=0\n', 'calibration', 'C.txt')
        self.assertEqual(calibrated_convention(Family.C, self.store, allow_calibration=False), SignConvention(False, False))


class ParallelTraceTests(CacheTestCase):
    def test_class_traces_in_worker_processes(self):
        for fam in Family:
            self.assertEqual(oracle_character(fam, 2, 5, jobs=2), oracle_character(fam, 2, 5))

    def test_decomposition_with_jobs(self):
        rep = conf_decomposition(Family.A, 2, 5, 'oracle', self.store, jobs=2)
        self.assertEqual(rep.dimension(), stirling_cycle(5, 3))
        self.assertEqual(rep, decompose(oracle_character(Family.A, 2, 5), self.store))


@override_settings(EQLC_CALIBRATION_MAX_DEGREE=3, EQLC_CALIBRATION_MAX_POINTS=8)
class FullGridCalibrationTests(CacheTestCase):
    def test_default_grid_singles_out_one_convention(self):
        self.assertEqual(calibrate(Family.A, self.store), SignConvention(True, True))
        self.assertEqual(calibrate(Family.C, self.store), SignConvention(False, False))
        self.assertEqual(
            self.store.read('calibration', 'A.txt'),
            'calibration A grid i<=3 n<=8\ntwist_even_lie=1 exterior_even=1\n',
        )


def pairs_up_to(total):
    return [(i, j) for i in range(1, total) for j in range(i, total - i + 1)]


class TensorProductGeneratorTests(CacheTestCase):
    def product(self, fam, i, j, top, tier='auto'):
        left = conf_module_from_generators(fam, i, top, tier, self.store)
        right = conf_module_from_generators(fam, j, top, tier, self.store)
        return tensor(left, right, top, self.store)

    def test_generators_sit_between_the_factor_bands_and_twice_the_degree_sum(self):
        for fam in Family:
            for i, j in pairs_up_to(6):
                with self.subTest(family=fam.value, pair=(i, j)):
                    bound = 2 * (i + j)
                    # one degree past the bound, with its own window above it
                    generators = h_zero(self.product(fam, i, j, bound + 2), bound + 1, 1)
                    degrees = generators.generator_degrees()
                    self.assertTrue(degrees)
                    self.assertLessEqual(max(degrees), bound)
                    self.assertGreaterEqual(min(degrees), max(i + 1, j + 1))

    def test_generators_rebuild_the_directly_computed_product(self):
        for i, j in pairs_up_to(4):
            with self.subTest(pair=(i, j)):
                top = 2 * (i + j) + 2
                direct = tensor(
                    conf_fb_module(Family.A, i, top, 'plethysm', self.store),
                    conf_fb_module(Family.A, j, top, 'plethysm', self.store),
                    top,
                    self.store,
                )
                rebuilt = m_image(h_zero(direct, 2 * (i + j), 1), top)
                self.assertEqual(rebuilt.degrees, direct.degrees)

    def test_products_stabilize_by_the_sum_of_the_sharp_degrees(self):
        for i, j in pairs_up_to(3):
            with self.subTest(pair=(i, j)):
                bound = 3 * (i + j) + 2
                product = self.product(Family.A, i, j, bound + 2)
                detected = stabilization_degree(product, bound + 2)
                self.assertIsNotNone(detected)
                self.assertLessEqual(detected, bound)
        square = self.product(Family.A, 1, 1, 10)
        self.assertLessEqual(stabilization_degree(square, 10), 8)
