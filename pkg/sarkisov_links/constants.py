"""Constants for the Sarkisov link engine."""

# Diophantine search bounds
DEFAULT_MODULUS_SWEEP_MAX = 64  # Largest modulus tried for congruence obstructions
DEFAULT_SEARCH_BOX = 1000  # |x|, |y| bound for representability witnesses

# E1 partner search bounds
DEFAULT_PARTNER_BOX = 64
DEFAULT_PARTNER_DEGREE_MAX = 64
DEFAULT_PARTNER_GENUS_MAX = 64

# K3 data: the curve sits on a smooth quartic, so H_S^2 = 2n with n = 2
QUARTIC_K3_N = 2

# The quadrisecant formula is not asserted below this degree
MIN_SECANT_DEGREE = 5

# Quadrisecant lines meet the curve in four points
QUADRISECANT_CLASS = (1, 4)

# Report formats
SCHEMA_VERSION = 1
DEFAULT_AMBIENT_LABEL = "P3"

# Environment
CATALOG_ENV_VAR = "SARKISOV_CATALOG"
CONFIG_ENV_VAR = "SARKISOV_CONFIG"
DEFAULT_CONFIG_FILE = "./sarkisov_config.json"

# Exit codes
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2
