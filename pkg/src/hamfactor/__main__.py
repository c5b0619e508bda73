"""Module entry point: ``python -m hamfactor`` dispatches to the CLI."""

from .cli import console_main

if __name__ == "__main__":
    console_main()
