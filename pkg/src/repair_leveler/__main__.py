"""Allow `python -m repair_leveler`."""

import sys

from .cli import main

sys.exit(main())
