import sys

from copnum.cli import main

sys.exit(main())
