#!/usr/bin/env python3
"""
GhostRing - Verification Toolkit for the Z8 Ghost-Element Argument
Runs the command line from a source checkout.
"""

import sys

from ghostring.cli import main


if __name__ == '__main__':
    sys.exit(main())
