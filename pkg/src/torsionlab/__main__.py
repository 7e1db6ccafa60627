"""Allow running the command line tool as `python -m torsionlab`."""

import sys

from .cli import main

sys.exit(main())
