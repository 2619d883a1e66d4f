from django.conf import settings

DEFAULT_TOL = settings.CARTANHOL_TOLERANCE
AMBIGUITY_FACTOR = settings.CARTANHOL_AMBIGUITY_FACTOR
FLOAT_DIGITS = settings.CARTANHOL_FLOAT_DIGITS

# structure constants below this are treated as round-off when extracted from matrices
STRUCTURE_NOISE = 1e-13

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INPUT = 2

COMMANDS = ['check', 'curvature', 'holonomy', 'infaut', 'spheres']
PIPELINES = ['check', 'curvature', 'holonomy', 'infaut']
OUTPUT_FORMATS = ['text', 'json']

KIND_PRINCIPAL = 'principal'
KIND_CARTAN = 'cartan'
KINDS = [KIND_PRINCIPAL, KIND_CARTAN]
