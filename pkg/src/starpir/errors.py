"""Shared exception types."""


class CapExceededError(Exception):
    """An exhaustive computation would exceed its configured size cap."""
