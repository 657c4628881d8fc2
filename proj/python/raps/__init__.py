"""Solver for resource-aware Buchi/parity automata and games."""

try:
    from ._raps import (  # noqa: F401
        Model,
        ModelParseError,
        UndefinedStrategyError,
        UnsupportedError,
        extent,
        oracle_check,
        oracle_extent,
        parse_model,
        random_model,
        render_model,
        run_value,
        simulate,
        synthesize,
    )
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _raps import (  # noqa: F401
        Model,
        ModelParseError,
        UndefinedStrategyError,
        UnsupportedError,
        extent,
        oracle_check,
        oracle_extent,
        parse_model,
        random_model,
        render_model,
        run_value,
        simulate,
        synthesize,
    )
