"""Allow ``python -m ommsim`` to behave like the ``ommsim`` script."""

import sys

from .sweep_cli import main

sys.exit(main())
