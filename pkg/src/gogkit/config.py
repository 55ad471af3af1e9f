import os

HOM_COUNT_CAP = 10**8
MAX_COSETS = 10**6
NODE_BUDGET = 200_000
CLIQUE_BUDGET = 10**6
MAX_FINITE_ORDER = 4096


def budget(default: int) -> int:
    """Return ``default`` unless the GOGKIT_BUDGET environment variable overrides it."""
    raw = os.environ.get("GOGKIT_BUDGET")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return value if value > 0 else default
