import os
import sys

from dotenv import load_dotenv

# ==============================================================================
# Application root, for both a plain checkout and a frozen executable
# ==============================================================================
if getattr(sys, 'frozen', False):
    basedir = os.path.dirname(sys.executable)
else:
    basedir = os.path.abspath(os.path.dirname(__file__))
# ==============================================================================

load_dotenv(os.path.join(basedir, '.env'))


class Config:
    """Settings for the treesylow command line."""
    # Largest group the exhaustive engine may enumerate
    CLOSURE_CAP = int(os.environ.get('TREESYLOW_CLOSURE_CAP') or 2_000_000)

    LOG_LEVEL = os.environ.get('TREESYLOW_LOG_LEVEL') or 'WARNING'

    # Sampled checks (evenness of random words for k = 5..7)
    RANDOM_SEED = int(os.environ.get('TREESYLOW_RANDOM_SEED') or 20240501)
    SAMPLE_WORDS = int(os.environ.get('TREESYLOW_SAMPLE_WORDS') or 1000)

    EXPORT_FOLDER = os.environ.get('TREESYLOW_EXPORT_FOLDER') or \
        os.path.join(basedir, 'exports')


class TestConfig(Config):
    CLOSURE_CAP = 100_000
    LOG_LEVEL = 'DEBUG'
    SAMPLE_WORDS = 50
    EXPORT_FOLDER = None
