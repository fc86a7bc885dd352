"""Library-wide numerical defaults."""

# Largest dimension handled by dense diagonalisation
N_EXACT = 4096

# Chebyshev heat expansion
CHEB_DEGREE_CAP = 4096
CHEB_SAFETY = 2

# Spectral bounds
BOUNDS_PAD = 0.01
DENSE_BOUNDS_MAX = 256

# Zero modes: singular values below ZERO_MODE_REL * largest count as zero
ZERO_MODE_REL = 1e-8
# Band-edge gaps below CUT_GAP_REL * spectral width leave the zero-mode cut ambiguous
CUT_GAP_REL = 1e-6

# Stochastic traces
MIN_PROBES = 8

# Dixmier estimates
DIXMIER_MIN_TERMS = 16
DIXMIER_WINDOW = 0.2
# Eigenvalues below DIXMIER_BULK_MARGIN * ‖K‖ * min weight feel the edge of the box
DIXMIER_BULK_MARGIN = 2.0

# Growth profiles
DEFAULT_K = 1024
DEFAULT_RMAX = 1024.0
TAIL_DELTA = 0.05
CAUCHY_FRACTION = 1e-3
DERIVATIVE_LIMIT = 0.05
MIN_TAIL_TERMS = 16

# Estimator convergence
RELATIVE_SPREAD = 1e-2
LAST_APPROXIMANTS = 3
