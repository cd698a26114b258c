from ._dynex import (
    budget,
    default_config,
    generate_snapshot,
    replay,
    run,
    verify,
    verify_suites,
)

__all__ = [
    "budget",
    "default_config",
    "generate_snapshot",
    "replay",
    "run",
    "verify",
    "verify_suites",
]
