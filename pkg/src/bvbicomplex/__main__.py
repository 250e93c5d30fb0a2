"""Allow ``python3 -m bvbicomplex``."""

import sys

from .cli import main

sys.exit(main())
