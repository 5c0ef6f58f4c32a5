import sys

from cpcpower.cli import main

sys.exit(main())
