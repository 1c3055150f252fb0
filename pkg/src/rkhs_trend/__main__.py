import sys

from rkhs_trend.cli import main

if __name__ == "__main__":
    sys.exit(main())
