"""Entry point: python -m app  OR  uv run goalspace-lab"""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
