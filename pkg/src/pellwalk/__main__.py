import sys

from pellwalk.cli import main

sys.exit(main())
