import sys

from popmatch.cli import main

sys.exit(main())
