import sys

from ladder_workbench.cli import main

sys.exit(main())
