import sys

from flowrank.cli import main

sys.exit(main())
