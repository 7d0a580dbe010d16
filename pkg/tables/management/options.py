import argparse


def positive_int(text):
    """argparse type for step budgets and worker counts."""
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def or_default(value, default):
    return default if value is None else value
