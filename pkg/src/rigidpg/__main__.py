import sys

from rigidpg.cli import main

sys.exit(main())
