import sys

from paravec.cli import main

sys.exit(main())
