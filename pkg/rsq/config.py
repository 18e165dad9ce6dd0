"""
Runtime configuration for rsq.

Values are module-level constants; a few can be overridden from the
environment (RSQ_FIELD, RSQ_DEPTH, RSQ_SEED, RSQ_SCHEDULER, RSQ_LOG_LEVEL).
"""

import os

# --------------------- Arithmetic ---------------------
DEFAULT_FIELD = os.environ.get("RSQ_FIELD", "fp:32003")

# --------------------- Truncation ---------------------
# Extra covering levels materialized below the requested homology window
DEFAULT_DEPTH = int(os.environ.get("RSQ_DEPTH", "3"))
MAX_DEPTH = 64

# --------------------- Randomness ---------------------
SEED = int(os.environ.get("RSQ_SEED", "0"))

# --------------------- Parallelism ---------------------
# dask scheduler used for fan-out over independent summands / pairs
SCHEDULER = os.environ.get("RSQ_SCHEDULER", "threads")

# --------------------- Logging ---------------------
LOG_LEVEL = os.environ.get("RSQ_LOG_LEVEL", "WARNING")
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"

# --------------------- Indecomposability ---------------------
# Exhaustive endomorphism search is used when p**dim(End) stays below this
BRUTE_FORCE_ELEMENTS_MAX = 4096
# Seeded samples drawn from End(M) over small fields otherwise
SMALL_FIELD_SAMPLES = 512
# Generic elements tried when factoring minimal polynomials over large fields
GENERIC_TRIES = 4

# --------------------- Knitting ---------------------
KNIT_STEP_LIMIT = 64
# Knitting steps spent on the window objects an irreducible map is tested against
IRR_KNIT_STEPS = 16
