"""Entry point for ``python -m dephasim``."""

import sys

from dephasim.cli import main

sys.exit(main())
