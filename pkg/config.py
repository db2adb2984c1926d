# config.py

import os

from dotenv import load_dotenv

load_dotenv()


def _env(name: str, default: str) -> str:
    return os.getenv(f"VALUEREJECT_{name}", default)


# Threshold sweep
DEFAULT_GRID_STEP = float(_env("GRID_STEP", "0.001"))
MAX_GRID_STEP = 0.25

# Temperature scaling: search log T in [-bound, bound]
TEMPERATURE_LOG_BOUND = 4.0
TEMPERATURE_TOLERANCE = 1e-6
ECE_BINS = int(_env("ECE_BINS", "15"))

# Reliability bands for Krippendorff's alpha
ALPHA_RELIABLE = 0.8
ALPHA_TENTATIVE = 0.6

# Rank tests
MANN_WHITNEY_EXACT_MAX = 8
KRUSKAL_MIN_TOTAL = 5

# Corpus sampling
SVD_MAX_RANK = 100
SVD_OVERSAMPLES = 10
SVD_POWER_ITERATIONS = 7
K_MIN = 2
K_MAX = 25
KMEANS_MAX_ITER = 300
TOKEN_PATTERN = r"(?u)[^\W_]{2,}"

DEFAULT_SEED = int(_env("SEED", "0"))

# Reports
REPORT_SCHEMA_VERSION = "1"
OUTPUT_DIR = _env("OUTPUT_DIR", "reports")
LOG_LEVEL = _env("LOG_LEVEL", "WARNING")
