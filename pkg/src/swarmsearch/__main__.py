import sys

from swarmsearch.cli import main

sys.exit(main())
