import os
from pathlib import Path

# Base directories
BASE_DIR = Path(__file__).parent
INSTANCE_DIR = BASE_DIR / 'instance'
DATA_DIR = INSTANCE_DIR / 'data'

# Application data directories
LAYOUTS_DIR = DATA_DIR / 'layouts'  # Circle layouts used by the circles sampler
RUNS_DIR = DATA_DIR / 'runs'  # Default destination for pipeline outputs

# Logging configuration
LOGS_DIR = DATA_DIR / 'logs'
DEBUG_LOG_PATH = LOGS_DIR / 'debug.log'

# Create directories if they don't exist
INSTANCE_DIR.mkdir(exist_ok=True)
DATA_DIR.mkdir(exist_ok=True)
LAYOUTS_DIR.mkdir(exist_ok=True)
RUNS_DIR.mkdir(exist_ok=True)
LOGS_DIR.mkdir(exist_ok=True)

# Default configuration
DEFAULT_THREADS = int(os.getenv('TDABOOT_THREADS', '1'))
DEFAULT_BOOTSTRAP_REPLICATES = int(os.getenv('TDABOOT_BOOTSTRAP_REPLICATES', '1000'))
DEFAULT_ALPHA = float(os.getenv('TDABOOT_ALPHA', '0.05'))
DEFAULT_RIPS_MAX_RADIUS = float(os.getenv('TDABOOT_RIPS_MAX_RADIUS', '1.0'))
DEFAULT_LANDSCAPE_LEVELS = int(os.getenv('TDABOOT_LANDSCAPE_LEVELS', '1'))
KDE_CHUNK_SIZE = int(os.getenv('TDABOOT_KDE_CHUNK', '2048'))  # grid vertices per kernel block

# File paths - standardized structure
DEFAULT_CIRCLES_PATH = LAYOUTS_DIR / 'nine_circles.json'
