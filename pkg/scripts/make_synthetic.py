# ==================== scripts/make_synthetic.py ====================

"""
Скрипт генерації синтетичного датасету
Запускати: python scripts/make_synthetic.py --kind sinusoid --out data/sinusoids.txt
"""

import argparse
import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.data.synthetic import constant_series, linear_ramp, random_walk, sinusoid_mixture, write_series
from core.utils.logger import get_logger

logger = get_logger(__name__)

GENERATORS = {
    "sinusoid": lambda args: sinusoid_mixture(args.timestamps, args.variables, args.seed, noise=args.noise),
    "constant": lambda args: constant_series(args.timestamps, args.variables),
    "ramp": lambda args: linear_ramp(args.timestamps, args.variables),
    "walk": lambda args: random_walk(args.timestamps, args.variables, args.seed),
}


def make_synthetic(argv=None):
    """Генерація та запис датасету"""
    parser = argparse.ArgumentParser(description="Write a synthetic dataset in the benchmark text format")
    parser.add_argument("--kind", choices=sorted(GENERATORS), default="sinusoid")
    parser.add_argument("--timestamps", type=int, default=400)
    parser.add_argument("--variables", type=int, default=4)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--noise", type=float, default=0.0)
    parser.add_argument("--out", default="data/sinusoids.txt")
    args = parser.parse_args(argv)

    print("=" * 50)
    print("IGMTF - Synthetic Dataset")
    print("=" * 50)

    series = GENERATORS[args.kind](args)
    path = write_series(series, args.out)
    logger.info(f"Synthetic dataset written: kind={args.kind}, T={series.timestamps}, n={series.variables}")

    print(f"\n✅ {args.kind}: {series.timestamps} x {series.variables} -> {path}")
    print("=" * 50)
    return path


if __name__ == "__main__":
    make_synthetic()
