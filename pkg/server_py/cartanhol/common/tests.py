import json
import os
import shutil
import tempfile
from io import StringIO

import numpy as np
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from common import constants
from common.management.commands.cartan import Command
from common.runner import RunConfig, load_connection
from common.serializers import ConnectionDataSerializer, ConnectionSerializer, LieAlgebraSerializer
from common.utils import flatten_errors, load_json, round_floats, rounded
from homogeneous.connection import validate
from lie.exceptions import InputError
from spheres.model import normal_connection
from spheres.params import SphereParams

TOY = {
    'kind': 'principal',
    'h': {'dim': 3, 'structure': [[0, 1, 2, 1.0], [1, 2, 0, 1.0], [0, 2, 1, -1.0]]},
    'g': {'dim': 1, 'structure': []},
    'k_basis': [[0, 0, 1]],
    'p_basis': [[1]],
    'alpha': [[0], [0], [1]],
}


class CommandTestCase(SimpleTestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def write(self, name, data):
        path = os.path.join(self.directory, name)
        with open(path, 'w') as f:
            f.write(data if isinstance(data, str) else json.dumps(data))
        return path

    def cartan(self, *args):
        out = StringIO()
        call_command('cartan', *args, stdout=out)
        return out.getvalue()

    def cartan_json(self, *args):
        return json.loads(self.cartan(*args, '--format', 'json'))


class SpheresCommandTest(CommandTestCase):

    def test_einstein_holonomy(self):
        report = self.cartan_json('spheres', '--p', '2', '--q', '2', '--s', '1', '--sprime', '1', 'holonomy')
        self.assertEqual(report['command'], 'holonomy')
        self.assertEqual(report['dims']['holonomy'], 10)
        self.assertEqual(report['killing_signature'], [0, 10, 0])
        self.assertTrue(report['is_subalgebra'])
        self.assertFalse(report['equals_g'])

    def test_flat_curvature(self):
        report = self.cartan_json('spheres', '--p', '2', '--q', '3', '--s', '1', '--sprime', '-1', 'curvature')
        self.assertTrue(report['flat'])
        self.assertEqual(report['curvature'], [])
        self.assertLess(report['residuals']['max_abs'], 1e-9)
        self.assertIn('Conf.1', report['residuals'])
        self.assertIn('Conf.2', report['residuals'])
        text = self.cartan('spheres', '--p', '2', '--q', '3', '--s', '1', '--sprime', '-1', 'curvature')
        self.assertIn('flat: true', text)

    def test_summary(self):
        report = self.cartan_json('spheres', '--p', '2', '--q', '2', '--s', '1', '--sprime', '1')
        self.assertEqual(report['regime'], 'einstein')
        self.assertEqual(report['predicted_holonomy'], 10)
        self.assertEqual(report['ricci'], [1.0, 1.0])
        self.assertEqual(report['scalar'], 4.0)
        self.assertEqual(report['einstein_ratio'], 1.0)
        report = self.cartan_json('spheres', '--p', '3', '--q', '1', '--s', '1', '--sprime', '2')
        self.assertIsNone(report['einstein_ratio'])
        self.assertEqual(report['regime'], 'flat')

    def test_unnormalized_check(self):
        report = self.cartan_json('spheres', '--p', '2', '--q', '2', '--s', '1', '--sprime', '3',
                                  '--unnormalized', 'curvature')
        self.assertGreater(report['residuals']['Conf.2'], 1e-6)
        self.assertLess(report['residuals']['Conf.1'], 1e-9)

    def test_emit_round_trip(self):
        path = os.path.join(self.directory, 'geometry.json')
        generated = self.cartan_json('spheres', '--p', '2', '--q', '2', '--s', '1', '--sprime', '3',
                                     '--emit', path, 'holonomy')
        reloaded = self.cartan_json('holonomy', path)
        self.assertEqual(generated['dims'], reloaded['dims'])
        self.assertEqual(generated['killing_signature'], reloaded['killing_signature'])
        self.assertEqual(generated['sphere_params'], reloaded['sphere_params'])
        for name, value in generated['residuals'].items():
            self.assertAlmostEqual(value, reloaded['residuals'][name], delta=2 * constants.DEFAULT_TOL)
        emitted = load_json(path)
        self.assertEqual(emitted['grading']['minus'], [0, 1, 2, 3])
        self.assertTrue(emitted['simply_connected'])

    def test_invalid_params(self):
        with self.assertRaises(CommandError) as cm:
            self.cartan('spheres', '--p', '1', '--q', '1', '--s', '1', '--sprime', '1')
        self.assertEqual(cm.exception.returncode, constants.EXIT_INPUT)
        with self.assertRaises(CommandError) as cm:
            self.cartan('spheres', '--p', '2', '--q', '2', '--s', '1', '--sprime', '0')
        self.assertEqual(cm.exception.returncode, constants.EXIT_INPUT)

    def test_bad_tolerance(self):
        with self.assertRaises(CommandError) as cm:
            self.cartan('spheres', '--p', '2', '--q', '2', '--s', '1', '--sprime', '1', '--tol', '0')
        self.assertEqual(cm.exception.returncode, constants.EXIT_INPUT)

    def test_short_options_reach_spheres(self):
        parser = Command().create_parser('manage.py', 'cartan')
        options = parser.parse_args(['spheres', '--p', '2', '--q', '3', '--s', '0.5', '--sprime', '-1', 'holonomy'])
        self.assertEqual(options.command, 'spheres')
        self.assertEqual((options.p, options.q, options.s, options.sprime), (2, 3, 0.5, -1.0))
        self.assertEqual(options.pipeline, 'holonomy')
        self.assertIsNone(options.settings)
        self.assertIsNone(options.pythonpath)


class FileCommandTest(CommandTestCase):

    def test_check(self):
        report = self.cartan_json('check', self.write('toy.json', TOY))
        self.assertEqual(report['failures'], [])
        self.assertEqual(report['dims'], {'h': 3, 'k': 1, 'g': 1, 'p': 1})

    def test_check_failure(self):
        broken = dict(TOY, psi_prime=[[2.0]])
        out = StringIO()
        with self.assertRaises(CommandError) as cm:
            call_command('cartan', 'check', self.write('broken.json', broken), '--format', 'json', stdout=out)
        self.assertEqual(cm.exception.returncode, constants.EXIT_VALIDATION)
        self.assertIn('C.1', str(cm.exception))
        self.assertEqual(json.loads(out.getvalue())['failures'], ['C.1'])

    def test_curvature(self):
        report = self.cartan_json('curvature', self.write('toy.json', TOY))
        self.assertEqual(report['curvature'], [{'pair': [0, 1], 'value': [-1.0]}])
        self.assertEqual(report['dims']['curvature_image'], 1)
        self.assertNotIn('Conf.1', report['residuals'])

    def test_holonomy(self):
        report = self.cartan_json('holonomy', self.write('toy.json', TOY))
        self.assertEqual(report['dims']['holonomy'], 1)
        self.assertEqual(report['killing_signature'], [0, 0, 1])

    def test_infaut_needs_cartan_connection(self):
        with self.assertRaises(CommandError) as cm:
            self.cartan('infaut', self.write('toy.json', TOY))
        self.assertEqual(cm.exception.returncode, constants.EXIT_VALIDATION)

    def test_infaut_on_flat_sphere(self):
        path = os.path.join(self.directory, 'flat.json')
        self.cartan('spheres', '--p', '2', '--q', '3', '--s', '1', '--sprime', '-1', '--emit', path)
        report = self.cartan_json('infaut', path)
        self.assertEqual(report['dims']['inf'], 21)
        self.assertEqual(len(report['basis']), 21)
        self.assertEqual(report['warnings'], [])

    def test_malformed_json(self):
        with self.assertRaises(CommandError) as cm:
            self.cartan('check', self.write('bad.json', '{"kind": "cartan",\n  "h": }'))
        self.assertEqual(cm.exception.returncode, constants.EXIT_INPUT)
        self.assertIn('line 2 column', str(cm.exception))

    def test_missing_file(self):
        with self.assertRaises(CommandError) as cm:
            self.cartan('check', os.path.join(self.directory, 'missing.json'))
        self.assertEqual(cm.exception.returncode, constants.EXIT_INPUT)

    def test_field_diagnostics(self):
        bad = dict(TOY, h={'dim': 3, 'structure': [[1, 0, 2, 1.0]]})
        with self.assertRaises(CommandError) as cm:
            self.cartan('check', self.write('bad.json', bad))
        self.assertEqual(cm.exception.returncode, constants.EXIT_INPUT)
        self.assertIn('h.structure: entry 0', str(cm.exception))

    def test_text_and_json_agree(self):
        path = os.path.join(self.directory, 'generic.json')
        self.cartan('spheres', '--p', '2', '--q', '2', '--s', '1', '--sprime', '3', '--emit', path)
        for command in ('check', 'curvature', 'holonomy'):
            report = self.cartan_json(command, path)
            text = self.cartan(command, path)
            for name, value in report['residuals'].items():
                self.assertIn('{0}: {1}'.format(name, json.dumps(value)), text)
            for name, value in report['dims'].items():
                self.assertIn('{0}: {1}'.format(name, value), text)


class SerializerTest(SimpleTestCase):

    def test_lie_algebra(self):
        serializer = LieAlgebraSerializer(data={'dim': 3, 'structure': [[0, 1, 2, 1.0]], 'labels': ['x', 'y', 'z']})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        algebra = serializer.save()
        self.assertEqual(algebra.constants[1, 0, 2], -1.0)
        self.assertEqual(algebra.label(2), 'z')

    def test_lie_algebra_rejections(self):
        for structure in ([[0, 0, 1, 1.0]], [[0, 3, 1, 1.0]], [[0, 1.5, 2, 1.0]], [[0, 1, 2]]):
            serializer = LieAlgebraSerializer(data={'dim': 3, 'structure': structure})
            self.assertFalse(serializer.is_valid(), structure)
            self.assertIn('structure', serializer.errors)
        serializer = LieAlgebraSerializer(data={'dim': 2, 'structure': [], 'labels': ['a']})
        self.assertFalse(serializer.is_valid())

    def test_connection_shapes(self):
        serializer = ConnectionSerializer(data=dict(TOY, alpha=[[0], [1]]))
        self.assertFalse(serializer.is_valid())
        self.assertIn('alpha', serializer.errors)
        serializer = ConnectionSerializer(data=dict(TOY, k_basis=[[0, 1]]))
        self.assertFalse(serializer.is_valid())
        self.assertIn('k_basis', serializer.errors)
        serializer = ConnectionSerializer(data=dict(TOY, grading={'minus': [0], 'zero': [0], 'plus': []}))
        self.assertFalse(serializer.is_valid())
        self.assertIn('grading', serializer.errors)

    def test_connection_round_trip(self):
        connection = normal_connection(SphereParams(2, 3, 1, 2))
        serializer = ConnectionSerializer(data=json.loads(json.dumps(ConnectionDataSerializer(connection).data)))
        self.assertTrue(serializer.is_valid(), serializer.errors)
        loaded = serializer.save()
        np.testing.assert_allclose(loaded.alpha, connection.alpha, atol=0)
        np.testing.assert_allclose(loaded.g.constants, connection.g.constants, atol=0)
        self.assertEqual(loaded.grading, connection.grading)
        self.assertEqual(loaded.sphere_params, connection.sphere_params)
        self.assertTrue(validate(loaded).ok)

    def test_optional_fields_are_omitted(self):
        path = os.path.join(tempfile.mkdtemp(), 'toy.json')
        try:
            with open(path, 'w') as f:
                json.dump(TOY, f)
            data = ConnectionDataSerializer(load_connection(path)).data
        finally:
            shutil.rmtree(os.path.dirname(path))
        self.assertNotIn('grading', data)
        self.assertNotIn('psi_prime', data)
        self.assertEqual(data['alpha'], [[0.0], [0.0], [1.0]])


class UtilsTest(SimpleTestCase):

    def test_flatten_errors(self):
        errors = {'h': {'structure': ['entry 0: bad']}, 'alpha': ['too short'], 'non_field_errors': ['oops']}
        self.assertEqual(flatten_errors(errors), ['h.structure: entry 0: bad', 'alpha: too short',
                                                  'non_field_errors: oops'])

    def test_rounding(self):
        self.assertEqual(rounded(1 / 3), 0.333333333333)
        self.assertEqual(round_floats({'a': [np.float64(2 / 3)], 'b': np.int64(4), 'c': np.bool_(True)}),
                         {'a': [0.666666666667], 'b': 4, 'c': True})

    def test_run_config(self):
        with self.assertRaises(InputError):
            RunConfig('check')
        with self.assertRaises(InputError):
            RunConfig('check', input_path='a.json', sphere_params=SphereParams(2, 2, 1, 1))
        with self.assertRaises(InputError):
            RunConfig('holonomy', input_path='a.json', tol=-1.0)
        with self.assertRaises(InputError):
            RunConfig('spheres', input_path='a.json')
        config = RunConfig('spheres', sphere_params=SphereParams(2, 2, 1, 1), pipeline='infaut')
        self.assertEqual(config.tol, constants.DEFAULT_TOL)

    def test_settings_need_no_database(self):
        engines = [database.get('ENGINE', '') for database in settings.DATABASES.values()]
        self.assertFalse([engine for engine in engines if not engine.endswith('dummy')])
        self.assertFalse([app for app in settings.INSTALLED_APPS if app.startswith('django.contrib')])
