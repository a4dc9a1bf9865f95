"""python -m transcert"""

import sys

from .cli import main

sys.exit(main())
