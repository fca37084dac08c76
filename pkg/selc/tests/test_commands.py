import json
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError

from .utils import CacheTestCase


class CommandTestCase(CacheTestCase):
    def call(self, name, **options):
        out = StringIO()
        call_command(name, cache_dir=self.cache_dir, stdout=out, **options)
        return out.getvalue()


class ChartabCommandTests(CommandTestCase):
    def test_text(self):
        output = self.call('chartab', n=3)
        self.assertIn('chartab v1 n=3', output)
        self.assertIn('[2,1] : -1 0 2', output)

    def test_structured(self):
        lines = self.call('chartab', n=2, format='structured').splitlines()
        self.assertEqual(json.loads(lines[0]), {'n': 2, 'partition': '[2]', 'values': [1, 1]})


class ConfCommandTests(CommandTestCase):
    def test_family(self):
        output = self.call('conf', family='A', degree=1, points=4)
        self.assertIn('A^1_4 = 1*[4] + 1*[3,1] + 1*[2,2]', output)

    def test_dimension(self):
        record = json.loads(self.call('conf', dimension=3, degree=1, points=2, format='structured'))
        self.assertEqual(record['family'], 'C')
        self.assertEqual(record['decomposition'], '1*[1,1]')
        self.assertEqual(record['cohomological_degree'], 2)

    def test_jobs(self):
        output = self.call('conf', family='A', degree=2, points=5, tier='oracle', jobs=2)
        self.assertIn('A^2_5 = ', output)
        self.assertIn('(dim 35)', output)

    def test_family_or_dimension(self):
        with self.assertRaises(CommandError):
            self.call('conf', degree=1, points=2)


class GeneratorCommandTests(CommandTestCase):
    def test_generators(self):
        output = self.call('generators', family='A', degree=1, tier='oracle')
        self.assertIn('H0(A^1)_2 = 1*[2]', output)
        self.assertIn('provenance: computed conf A i=1', output)

    def test_h0_pair(self):
        lines = self.call('h0', family='A', pair='1,1', tier='oracle', format='structured').splitlines()
        rows = [json.loads(line) for line in lines]
        self.assertEqual(rows[3]['h0'], '1*[3] + 2*[2,1] + 1*[1,1,1]')
        self.assertEqual(rows[4]['h0'], '1*[4] + 1*[3,1] + 1*[2,2]')

    def test_h0_pair_notes_the_printed_degree_three(self):
        output = self.call('h0', family='A', pair='1,1', tier='oracle')
        self.assertIn('note: discrepancy: H0(A^1⊗A^1) at n=3', output)
        rows = [json.loads(line) for line in self.call('h0', family='A', pair='1,1', format='structured').splitlines()]
        self.assertTrue(all(row['flags'] for row in rows))

    def test_h0_pair_without_known_discrepancy(self):
        output = self.call('h0', family='C', pair='1,1', tier='oracle')
        self.assertNotIn('discrepancy', output)

    def test_h0_bad_pair(self):
        with self.assertRaises(CommandError):
            self.call('h0', family='A', pair='1')


class VerifyCommandTests(CommandTestCase):
    def test_degree_four(self):
        output = self.call('verify', family='A', degree_sum=4, tier='oracle')
        self.assertIn('contained', output)

    def test_structured(self):
        record = json.loads(self.call('verify', family='C', degree_sum=4, tier='oracle', format='structured'))
        self.assertEqual(record['verdict'], 'contained')
        self.assertEqual(record['bound'], 8)

    def test_violation_exits_with_status_one(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('verify', family='A', degree_sum=4, tier='oracle', swap=True)
        self.assertEqual(ctx.exception.returncode, 1)

    def test_oracle_only_beyond_desk_scale(self):
        with self.assertRaises(CommandError):
            self.call('verify', family='A', max_sum=8, tier='oracle')


class SelcCommandTests(CommandTestCase):
    def test_contained(self):
        output = self.call('selc', family='A', degree_sum=4, points=4, tier='oracle')
        self.assertIn('(1,2,2,3) at n=4: contained', output)

    def test_vacuous(self):
        self.assertIn('no quadruples', self.call('selc', family='C', degree_sum=3, points=4))


class ReproduceCommandTests(CommandTestCase):
    def test_a1_table(self):
        output = self.call('reproduce', example='a1-table')
        self.assertIn('PASS', output)

    def test_h0_a1a1_carries_the_discrepancy(self):
        record = json.loads(self.call('reproduce', example='h0-a1a1', format='structured'))
        self.assertTrue(record['passed'])
        self.assertTrue(any(flag.startswith('discrepancy') for flag in record['flags']))

    def test_degree_four_pair(self):
        self.assertIn('PASS', self.call('reproduce', example='h0-degree4-pair'))

    def test_degree_four_pair_carries_the_degree_six_discrepancy(self):
        with self.assertLogs('selc.reproduce', level='WARNING') as logs:
            record = json.loads(self.call('reproduce', example='h0-degree4-pair', format='structured'))
        self.assertTrue(record['passed'])
        flags = [flag for flag in record['flags'] if flag.startswith('discrepancy')]
        self.assertEqual(len(flags), 1)
        self.assertIn('H0(A^2⊗A^2) at n=6', flags[0])
        self.assertIn('norms 6, 13, 17, 18, 18', flags[0])
        self.assertIn('6*[6]', flags[0])
        self.assertTrue(any('n=6' in line for line in logs.output))

    def test_fb_containment(self):
        output = self.call('reproduce', example='fb-containment-yz')
        self.assertIn('PASS', output)
        self.assertIn('violated at n=2, [2]', output)


class StabilityCommandTests(CommandTestCase):
    def test_c1(self):
        record = json.loads(self.call('stability', family='C', degree=1, tier='oracle', format='structured'))
        self.assertEqual(record['detected'], 3)
        self.assertTrue(record['sharp'])

    def test_too_few_points_is_not_yet_stable(self):
        output = self.call('stability', family='A', degree=2, points=2, tier='oracle')
        self.assertIn('A^2 through n=2: not yet stable', output)
        record = json.loads(self.call('stability', family='A', degree=2, points=2, tier='oracle', format='structured'))
        self.assertIsNone(record['detected'])
