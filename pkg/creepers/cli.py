"""``creepers <subcommand> ...``: the management commands under one entry point."""

import os
import sys

SUBCOMMANDS = {
    "expand": "expand",
    "family": "family",
    "ff-expand": "ff_expand",
    "verify": "verify",
    "scan": "scan",
}


def run(argv=None):
    """Run one subcommand and return its exit code instead of exiting."""
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in SUBCOMMANDS:
        names = ", ".join(SUBCOMMANDS)
        given = argv[0] if argv else "nothing"
        sys.stderr.write(f"creepers: expected one of {names}, got {given}\n")
        return 2

    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "creepers.settings")
    from django.core.management import execute_from_command_line

    try:
        execute_from_command_line(["creepers", SUBCOMMANDS[argv[0]], *argv[1:]])
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 1
    return 0


def main():
    sys.exit(run())
