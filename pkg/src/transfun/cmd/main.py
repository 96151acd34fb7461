"""The main entrypoint to the application."""

import argparse
import pathlib
import sys

import sentry_sdk
import structlog
from pydantic import ValidationError

from transfun.internal.cli import dispatch
from transfun.internal.config import Config
from transfun.internal.errors import TransfunError
from transfun.internal.models import Axiom, Command, RunManifest

log = structlog.stdlib.get_logger()
version = "0.1.0"

_INPUTS = {
    Command.apply: ["spec", "measure"],
    Command.check: ["spec"],
    Command.infer: ["spec"],
    Command.compose: ["outer", "inner"],
    Command.info: ["document"],
}


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with code 2 without printing help twice."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser(cfg: Config) -> argparse.ArgumentParser:
    """Build the argument parser; defaults come from the environment config."""
    defaults = cfg.check_config()
    parser = _Parser(prog="transfun", description="Apply and check transfunctions.")
    parser.add_argument("--version", action="version", version=version)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for command, inputs in _INPUTS.items():
        p = sub.add_parser(command.value)
        for name in inputs:
            p.add_argument(name, help=f"path to the {name} document")
        p.add_argument("--output", "-o", default=None, help="output path (default: stdout)")
        if command in (Command.apply, Command.info):
            p.add_argument(
                "--space",
                default=None,
                help="space document to resolve measures against",
            )
        if command in (Command.check, Command.infer):
            p.add_argument("--trials", type=int, default=defaults.trials)
            p.add_argument("--tolerance", type=float, default=defaults.tolerance)
            p.add_argument("--seed", type=int, default=defaults.seed)
            p.add_argument("--max-mass", type=float, default=defaults.max_mass)
            p.add_argument("--sequence-length", type=int, default=defaults.sequence_length)
        if command == Command.check:
            p.add_argument(
                "--axiom",
                choices=["all", *(a.value for a in Axiom)],
                default="all",
            )
    return parser


def parse_manifest(argv: list[str], cfg: Config) -> RunManifest:
    """Turn command-line arguments into a validated RunManifest."""
    args = build_parser(cfg).parse_args(argv)
    command = Command(args.command)
    manifest = {
        "command": command,
        "inputs": [getattr(args, name) for name in _INPUTS[command]],
        "space": getattr(args, "space", None),
        "output": args.output,
    }
    if command in (Command.check, Command.infer):
        manifest["config"] = {
            "trials": args.trials,
            "tolerance": args.tolerance,
            "seed": args.seed,
            "max_mass": args.max_mass,
            "sequence_length": args.sequence_length,
        }
    axiom = getattr(args, "axiom", "all")
    if axiom != "all":
        manifest["axiom"] = Axiom(axiom)
    return RunManifest.model_validate(manifest)


def main(argv: list[str] | None = None, cfg: Config | None = None) -> int:
    """Run one invocation and return its exit code."""
    cfg = cfg or Config()
    try:
        manifest = parse_manifest(sys.argv[1:] if argv is None else argv, cfg)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    except ValidationError as e:
        sys.stderr.write(f"transfun: invalid option: {e.errors()[0]['msg']}\n")
        return 2

    try:
        document = dispatch(manifest)
    except TransfunError as e:
        log.debug("command failed", command=manifest.command.value, error=type(e).__name__)
        sys.stderr.write(f"transfun: {type(e).__name__}: {e}\n")
        return e.exit_code
    except Exception as e:
        sentry_sdk.capture_exception(e)
        log.exception("unexpected failure", command=manifest.command.value)
        sys.stderr.write(f"transfun: internal error: {e}\n")
        return 4

    if manifest.output is None:
        sys.stdout.write(document + "\n")
    else:
        try:
            pathlib.Path(manifest.output).write_text(document + "\n", encoding="utf-8")
        except OSError as e:
            sys.stderr.write(f"transfun: cannot write {manifest.output}: {e}\n")
            return 2
    return 0


def run() -> None:
    """Run the command line with error reporting enabled."""
    cfg = Config()
    sentry_sdk.init(dsn=cfg.SENTRY_DSN or None, environment=cfg.ENVIRONMENT)
    sentry_sdk.set_tag("app_name", "transfun")
    sentry_sdk.set_tag("version", version)
    sys.exit(main(cfg=cfg))


if __name__ == "__main__":
    run()
