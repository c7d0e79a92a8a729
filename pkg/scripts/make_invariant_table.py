#!/usr/bin/env python3
"""Regenerate the per-factor invariant table.

Thin wrapper over ``kgrid table``; all of its flags pass through, e.g.

    python scripts/make_invariant_table.py --spin-max 11 --json
"""

import sys

from kgrid.cli import run

if __name__ == "__main__":
    sys.exit(run(["table", *sys.argv[1:]]))
