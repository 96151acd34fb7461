"""Command implementations behind the ``transfun`` entry point."""

from .commands import (
    cmd_apply,
    cmd_check,
    cmd_compose,
    cmd_info,
    cmd_infer,
    dispatch,
    load_measure,
    load_space,
    load_spec,
)

__all__ = [
    "cmd_apply",
    "cmd_check",
    "cmd_compose",
    "cmd_info",
    "cmd_infer",
    "dispatch",
    "load_measure",
    "load_space",
    "load_spec",
]
