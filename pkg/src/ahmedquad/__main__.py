import sys

from ahmedquad.cli import main

sys.exit(main())
