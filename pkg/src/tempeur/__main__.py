import sys

from .scancli import main

sys.exit(main())
