"""
Settings for the hamsys project.

Every default used by the solvers, the verification suite and the command-line
runner is declared here. Run configuration files and CLI flags override these
values per run; library code reads them through this module only.
"""

from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Default directory for run artifacts (manifests, field CSVs, traces).
OUTPUT_DIR = BASE_DIR / 'runs'


# Spectral substrate

# Hard cap on the number of eigenmodes a basis may carry.
MAX_MODES = 1024

# Quadrature nodes per direction grow as QUADRATURE_FACTOR * (highest mode index) + QUADRATURE_MARGIN.
QUADRATURE_FACTOR = 4
QUADRATURE_MARGIN = 16

DEFAULT_MODES = 64


# Tolerance ladder

TOLERANCES = {
    'level': 1e-3,
    'identity': 1e-6,
    'pointwise': 1e-8,
}

# Galerkin norm of the Euler-Lagrange defect at which a solver declares convergence.
RESIDUAL_TOLERANCE = 1e-9

# Pohozaev residuals are compared against this multiple of the energy scale.
POHOZAEV_TOLERANCE = 1e-4

# Free parameters a at which the Pohozaev identity is checked.
POHOZAEV_PARAMETERS = (0.5, 2.0)

# Sign check: min nodal value must exceed -SIGN_TOLERANCE * max.
SIGN_TOLERANCE = 1e-6

RADIAL_DEFICIT_TOLERANCE = 1e-4
FOLIATED_DEFICIT_TOLERANCE = 1e-3


# Solvers

INVERSION_MAX_ITER = 10_000
DESCENT_MAX_ITER = 500
INNER_MAX_ITER = 100
INNER_TOLERANCE = 1e-12

# Backtracking floor shared by the inner Newton solve and the outer descents.
MIN_STEP = 1e-4

# Ray search window for the reduced functional, in t.
RAY_WINDOW = (1e-4, 1e4)

# Sufficient decrease constant of the outer Armijo searches.
ARMIJO_FRACTION = 1e-4

# Relative level increase tolerated by monotone line searches, at rounding level.
ROUNDING_SLACK = 1e-12

# Random restarts of the dual method when a start has no positive coupling.
DUAL_RESTARTS = 10

SHOOTING_RTOL = 1e-11
SHOOTING_ATOL = 1e-13
# Fraction of the radius covered by the series expansion at r = 0.
SHOOTING_SERIES_FRACTION = 1e-3
# Multipliers of the one-mode estimate tried as shooting starts.
SHOOTING_STARTS = (1.0, 0.5, 2.0, 0.25, 4.0)

DEFAULT_SEED = 0


# Symmetry tools

POLARIZATION_NORMALS = 64
POLARIZATION_OFFSETS = 9
LEVEL_SLICES = 1000

# Talenti ordering int_0^m u* <= int_0^m w is checked up to this relative slack.
TALENTI_SLACK = 1e-8

# Nodal polarization comparisons carry the Galerkin truncation of both Poisson solves.
POLARIZATION_SLACK = 1e-3

# Axis candidates scanned over a half turn before the bounded refinement.
AXIS_SCAN = 720

# Relative size of the seeded perturbation that lets the full probe solve leave the radial subspace.
PROBE_PERTURBATION = 0.1

# Relative level margin for declaring symmetry breaking (10x the level tolerance).
BREAKING_MARGIN = 10 * TOLERANCES['level']


# Concurrency

MAX_WORKERS = 2


# Output formatting

MACHINE_DIGITS = 17
HUMAN_DIGITS = 6


# Logging
# https://docs.python.org/3/library/logging.config.html#logging-config-dictschema

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
        'simple': {
            'format': '%(levelname)s %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'hamsys': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
    },
}
