import logging

from django.core.management.base import BaseCommand, CommandError

from common import constants
from common.reports import render_json, render_text
from common.runner import RunConfig, run
from lie.exceptions import CartanholError, InputError
from spheres.params import SphereParams


class Command(BaseCommand):
    help = '''curvature, holonomy and infinitesimal automorphisms of homogeneous Cartan geometries'''

    def create_parser(self, prog_name, subcommand, **kwargs):
        # --s and --p would otherwise be read as prefixes of --settings and --pythonpath
        kwargs.setdefault('allow_abbrev', False)
        return super().create_parser(prog_name, subcommand, **kwargs)

    def add_leaf_arguments(self, parser):
        parser.add_argument(
            '--tol',
            type=float,
            default=constants.DEFAULT_TOL,
            help='relative rank tolerance (default %(default)g)'
        )
        parser.add_argument(
            '--format',
            dest='output_format',
            choices=constants.OUTPUT_FORMATS,
            default='text',
            help='report format'
        )

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='command', required=True)
        descriptions = {
            'check': 'validate the defining conditions of a connection',
            'curvature': 'curvature table and image dimension',
            'holonomy': 'holonomy algebra by the Wang closure',
            'infaut': 'infinitesimal automorphism algebra',
        }
        for name in constants.PIPELINES:
            leaf = subparsers.add_parser(name, help=descriptions[name])
            leaf.add_argument('input_path', help='geometry JSON file')
            self.add_leaf_arguments(leaf)

        spheres = subparsers.add_parser('spheres', help='conformal geometry of S^p x S^q')
        spheres.add_argument('--p', type=int, required=True, help='dimension of the first sphere')
        spheres.add_argument('--q', type=int, required=True, help='dimension of the second sphere')
        spheres.add_argument('--s', type=float, required=True, help='curvature of the first sphere')
        spheres.add_argument('--sprime', type=float, required=True,
                             help='curvature of the second sphere; its sign sets the metric signature')
        spheres.add_argument('--unnormalized', action='store_true', help='use alpha0 without the rho correction')
        spheres.add_argument('--emit', dest='emit_path', help='write the generated geometry JSON to this path')
        spheres.add_argument('pipeline', nargs='?', choices=constants.PIPELINES,
                             help='run this pipeline on the generated geometry')
        self.add_leaf_arguments(spheres)

    def handle(self, *args, **options):
        if options['verbosity'] >= 2:
            logging.getLogger().setLevel(logging.DEBUG)
        try:
            config = self.build_config(options)
            report, status = run(config)
        except (InputError, OSError) as err:
            raise CommandError(str(err), returncode=constants.EXIT_INPUT)
        except CartanholError as err:
            raise CommandError(str(err), returncode=constants.EXIT_VALIDATION)

        if config.output_format == 'json':
            self.stdout.write(render_json(report))
        else:
            self.stdout.write(render_text(report))
        if status != constants.EXIT_OK:
            raise CommandError('connection fails {0}'.format(', '.join(report.get('failures', []))),
                               returncode=status)

    def build_config(self, options) -> RunConfig:
        command = options['command']
        common = dict(tol=options['tol'], output_format=options['output_format'])
        if command == 'spheres':
            params = SphereParams(options['p'], options['q'], options['s'], options['sprime'])
            return RunConfig(command, sphere_params=params, pipeline=options.get('pipeline'),
                             unnormalized=options['unnormalized'], emit_path=options.get('emit_path'), **common)
        return RunConfig(command, input_path=options['input_path'], **common)
