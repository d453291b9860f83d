# Centralized constants for families, checks and engines used across the CLI

DEFAULT_CLOSURE_CAP = 2_000_000

ENGINES = ['closure', 'chain', 'formula']

ORDER_FAMILIES = ['a2k', 'an', 'sn']
GENS_FAMILIES = ['sbeta', 'sn', 'an', 'h']
EXPORT_FAMILIES = ['sbeta', 'sn', 'an', 'h']

# Parameter name and accepted range for every verification driver.
CHECK_META = {
    'minimal':    {'param': 'k', 'range': (2, 4)},
    'semidirect': {'param': 'k', 'range': (2, 4)},
    'frattini':   {'param': 'k', 'range': (3, 4)},
    'relations':  {'param': 'n', 'range': (3, None)},
    'tclass':     {'param': 'k', 'range': (3, 4)},
    'distance':   {'param': 'k', 'range': (3, 4)},
    'oddusage':   {'param': 'k', 'range': (3, 3)},
    'agreement':  {'param': 'k', 'range': (2, 4)},
    'boxtimes':   {'param': 'n', 'range': (3, 32)},
    'evenness':   {'param': 'k', 'range': (2, 7)},
}
CHECKS = list(CHECK_META)

# Export lists every element, so only desk-scale groups are allowed.
EXPORT_MAX_ORDER = 2 ** 14

EXIT_FAILED = 1
EXIT_RESOURCE = 3
