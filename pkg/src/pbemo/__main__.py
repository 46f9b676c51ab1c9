import sys

from pbemo.cli import main

sys.exit(main())
