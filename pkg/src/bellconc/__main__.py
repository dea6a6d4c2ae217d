import sys

from bellconc.cli import main

sys.exit(main())
