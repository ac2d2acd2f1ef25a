"""Default capacity knobs.

Every cap can be overridden per call; the CLI exposes them as flags. The defaults
bound what a laptop handles comfortably with exact arithmetic.
"""

TOOL_VERSION = "0.1.0"

ELEMENT_CAP = 2_000_000
POSET_CAP = 200_000
SIMPLEX_CAP = 500_000
ACTION_CAP = 4_000
FIELD_CAP = 81
