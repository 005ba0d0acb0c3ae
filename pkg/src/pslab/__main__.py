import sys

from pslab.cli import main

sys.exit(main())
