import os
from pathlib import Path
from dotenv import load_dotenv

from .errors import ConfigError

# --- Core Path Configuration ---
PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
print(f"Project Root Detected: {PROJECT_ROOT}")

# Load environment variables from a .env file at the project root
dotenv_path = PROJECT_ROOT / '.env'
load_dotenv(dotenv_path=dotenv_path)

# --- Directory Paths ---
DATA_DIR = PROJECT_ROOT / "data"
LOG_DIR = PROJECT_ROOT / "log"
OUTPUT_DIR = PROJECT_ROOT / "output" # reports written by --json and by the suite

# Content-addressed result cache, overridable from the environment
CACHE_DIR = Path(os.environ.get("HOOKDUAL_CACHE_DIR", OUTPUT_DIR / "cache"))

# --- Static Data File Paths ---
# Hook-type duality tables (R congruences, kernels, hook rows, primaries, pairs), stored as expressions in n, m, k.
HOOK_TABLES_FILE = DATA_DIR / "hook_tables.json"

# --- Parallelism ---
def _read_thread_count(raw_value) -> int:
    if raw_value in (None, ""):
        return 1
    try:
        value = int(raw_value)
    except ValueError:
        raise ConfigError(f"HOOKDUAL_THREADS must be an integer, got '{raw_value}'")
    if value < 1:
        raise ConfigError(f"HOOKDUAL_THREADS must be >= 1, got {value}")
    return value

HOOKDUAL_THREADS = _read_thread_count(os.environ.get("HOOKDUAL_THREADS"))

# --- Engine Limits ---
# Desk-scale bounds; requests beyond them are rejected before any work starts.
MAX_SEMICOH_WEIGHT = 5
MAX_CE_DEGREE = 6
MAX_SERIES_ORDER = 12

# --- Helper to create a unique run directory ---
def get_run_output_dir(base_output_dir: Path, command_name: str, run_tag: str) -> Path:

    run_dir = base_output_dir / f"{command_name}_{run_tag}"

    # Never overwrite an earlier report: fall back to a timestamped name.
    if run_dir.exists():
        import datetime
        timestamp = datetime.datetime.now().strftime("%Y%m%d_%H%M%S")
        original_run_dir = run_dir
        run_dir = base_output_dir / f"{command_name}_{run_tag}_{timestamp}"
        print(f"WARNING: Directory '{original_run_dir}' already exists. Using new timestamped name to avoid overwrite: '{run_dir}'")

    run_dir.mkdir(parents=True, exist_ok=True)
    return run_dir
