import sys

from .experiment_cli.main import main

sys.exit(main())
