"""Entry point for running symreg as a module (python -m symreg)."""

import sys

from .symreg import main

if __name__ == "__main__":
    sys.exit(main())
