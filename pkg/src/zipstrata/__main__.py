import sys

from .census import main

sys.exit(main())
