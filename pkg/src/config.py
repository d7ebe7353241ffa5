import os
import json
import sys
from dotenv import load_dotenv

load_dotenv()

# Project root (main.py folder)
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

# Cut generation modes
# - "spi":  path cover and path pack inequalities on subpaths
# - "mspi": flow cover and flow pack inequalities on merged subpaths
# - "cov":  path cover inequalities only
# - "pac":  path pack inequalities only
# - "none": plain branch-and-bound
VALID_CUT_MODES = ["spi", "mspi", "cov", "pac", "none"]
CUT_MODE = os.getenv("CUT_MODE", "spi").lower()
if CUT_MODE not in VALID_CUT_MODES:
    print(f"⚠️  Warning: Invalid CUT_MODE '{CUT_MODE}', using 'spi'")
    CUT_MODE = "spi"

# Path-size presets for the experiment sweeps (maximum subpath length)
# Values are either an absolute node count or a fraction of n
PATH_PRESETS = {
    "p1": ("abs", 1),
    "p5": ("abs", 5),
    "half": ("frac", 0.5),
    "full": ("frac", 1.0),
}


def _float_env(name, default, low=None, high=None, low_open=False):
    raw = os.getenv(name, str(default))
    try:
        value = float(raw)
        if low is not None and (value < low or (low_open and value == low)):
            raise ValueError()
        if high is not None and value > high:
            raise ValueError()
        return value
    except ValueError:
        print(f"⚠️  Warning: Invalid {name}, using default {default}")
        return default


def _int_env(name, default, low=0):
    raw = os.getenv(name, str(default))
    try:
        value = int(raw)
        if value < low:
            raise ValueError()
        return value
    except ValueError:
        print(f"⚠️  Warning: Invalid {name}, using default {default}")
        return default


# Separation settings
SEP_EPS = _float_env("SEP_EPS", 1e-6, low=0.0, low_open=True)
MAX_PATH_FRAC = _float_env("MAX_PATH_FRAC", 0.75, low=0.0, high=1.0, low_open=True)
MAX_CUTS_PER_ROUND = _int_env("MAX_CUTS_PER_ROUND", 200, low=1)

# Branch-and-cut settings
# CUT_DEPTH = 0 adds cuts at the root only; SEPARATE_IN_TREE forces separation at every node
CUT_ROUNDS = _int_env("CUT_ROUNDS", 50)
CUT_DEPTH = _int_env("CUT_DEPTH", 0)
SEPARATE_IN_TREE = os.getenv("SEPARATE_IN_TREE", "False") == "True"
TIME_LIMIT = _float_env("TIME_LIMIT", 600.0, low=0.0, low_open=True)
NODE_LIMIT = _int_env("NODE_LIMIT", 100000, low=1)

# Numerical tolerances for the floating-point simplex
LP_TOL = _float_env("LP_TOL", 1e-7, low=0.0, low_open=True)
INT_TOL = _float_env("INT_TOL", 1e-6, low=0.0, low_open=True)

# Output and parallelism
SHOW_PROGRESS = os.getenv("SHOW_PROGRESS", "True") == "True"
JOBS = _int_env("JOBS", 1, low=1)

# Experiment grid defaults (n, f, c lists as JSON)
try:
    EXPERIMENT_N = json.loads(os.getenv("EXPERIMENT_N", "[50]"))
    EXPERIMENT_F = json.loads(os.getenv("EXPERIMENT_F", "[100, 1000]"))
    EXPERIMENT_C = json.loads(os.getenv("EXPERIMENT_C", "[5]"))
    if not all(isinstance(v, list) and v for v in (EXPERIMENT_N, EXPERIMENT_F, EXPERIMENT_C)):
        raise ValueError("experiment grids must be non-empty JSON lists")
except (json.JSONDecodeError, ValueError) as e:
    print(f"⚠️  Warning: Invalid experiment grid ({e}), using defaults")
    EXPERIMENT_N, EXPERIMENT_F, EXPERIMENT_C = [50], [100, 1000], [5]
EXPERIMENT_SEEDS = _int_env("EXPERIMENT_SEEDS", 5, low=1)

# Output folders
INSTANCE_FOLDER = os.path.join(PROJECT_ROOT, "instances")
RESULTS_FOLDER = os.path.join(PROJECT_ROOT, "results")
CUTS_FOLDER = os.path.join(PROJECT_ROOT, "cuts")

# Result store
RESULTS_DB_PATH = os.path.join(RESULTS_FOLDER, "results.db")
EXPERIMENT_CSV = os.path.join(RESULTS_FOLDER, "experiment.csv")


def setup_directories():
    """Create instance, result and cut directories if they don't already exist."""
    os.makedirs(INSTANCE_FOLDER, exist_ok=True)
    os.makedirs(RESULTS_FOLDER, exist_ok=True)
    os.makedirs(CUTS_FOLDER, exist_ok=True)


def validate_config(max_path_frac=None, cut_mode=None):
    """Validate effective settings (config merged with CLI overrides) and create output directories."""
    setup_directories()
    problems = []

    frac = MAX_PATH_FRAC if max_path_frac is None else max_path_frac
    if not 0 < frac <= 1:
        problems.append(f"max path fraction must be in (0, 1], got {frac}")

    mode = CUT_MODE if cut_mode is None else cut_mode
    if mode not in VALID_CUT_MODES:
        problems.append(f"cut mode must be one of {', '.join(VALID_CUT_MODES)}, got '{mode}'")

    if problems:
        print("❌ Error: Invalid configuration:")
        for problem in problems:
            print(f"   - {problem}")
        print("\nPlease check your .env file and command-line flags.")
        sys.exit(2)
