"""Exception hierarchy shared by the library and the CLI exit-code contract."""

from __future__ import annotations


class SubextError(Exception):
    exit_code = 1


class InputError(SubextError, ValueError):
    """Malformed or inconsistent input (CLI exit code 2)."""

    exit_code = 2


class InvariantError(SubextError, RuntimeError):
    """A mathematical property that must hold was found violated (exit code 1)."""

    exit_code = 1


class ResourceError(SubextError, RuntimeError):
    """A configured size budget would be exceeded (exit code 3)."""

    exit_code = 3
