# ///////////////////////////////////////////////////////////////
#
# IGMTF - instance-wise graph forecasting of multivariate time series
# Entry point for the experiment CLI
#
# Usage:
#   python main.py --data exchange_rate --horizon 3 --epochs 30 --out report.yaml
#   python main.py --data data.txt --sweep-k 3,5,10 --neighbors 10 --out sweep.yaml
#
# ///////////////////////////////////////////////////////////////

import sys

from core.cli import main


if __name__ == "__main__":
    sys.exit(main())
