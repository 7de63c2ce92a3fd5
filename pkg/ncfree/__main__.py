import sys

from ncfree.cli import main

sys.exit(main())
