"""
Command Line Interface
Прапорці запуску, коди виходу та повідомлення про помилки у stderr
"""

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence, Union

from core.config.run_config import RunConfig, build_run_config
from core.utils.exceptions import (
    ConfigError, DataFormatError, IGMTFException, NormalizationError, SplitError, ValidationError,
)
from core.utils.logger import get_logger


logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def _sweep_values(text: str) -> Union[str, List[int]]:
    if text.strip().lower() == "grid":
        return "grid"
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers or 'grid', got {text!r}") from e


class _ArgumentParser(argparse.ArgumentParser):
    """argparse, що повідомляє про помилки кодом EXIT_CONFIG"""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="igmtf",
        description="Instance-wise graph forecasting of multivariate time series: train, evaluate, sweep.",
    )
    parser.add_argument("--config", help="flat YAML file with run keys; flags override it")
    parser.add_argument("--data", help="dataset path or known name (traffic, electricity, exchange_rate)")
    parser.add_argument("--horizon", type=int, help="forecast horizon h")
    parser.add_argument("--window", type=int, help="window length d")
    parser.add_argument("--hidden", type=int, help="hidden size l of GRU and MLP")
    parser.add_argument("--k", type=int, help="sampled training timestamps")
    parser.add_argument("--neighbors", type=int, help="top-N neighbors per instance")
    parser.add_argument("--lr", type=float, help="Adam learning rate")
    parser.add_argument("--lambda", dest="l2", type=float, help="L2 coefficient")
    parser.add_argument("--epochs", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--variant", choices=["full", "ns", "nw"])
    parser.add_argument("--normalize", choices=["max", "none"])
    parser.add_argument("--out", help="report file (summary file for sweeps)")
    parser.add_argument("--sweep-k", dest="sweep_k", type=_sweep_values,
                        help="comma-separated k values, or grid for 3,5,10,20,30")
    parser.add_argument("--sweep-n", dest="sweep_n", type=_sweep_values,
                        help="comma-separated N values, or grid for 3,5,10,20,30")
    parser.add_argument("--sweep-h", dest="sweep_h", type=_sweep_values,
                        help="comma-separated horizons, or grid for 3,6,12,24")
    parser.add_argument("--checkpoint", help="save best parameters to this .npz file")
    parser.add_argument("--patience", type=int, help="early stopping patience in epochs")
    parser.add_argument("--exclude-self", dest="exclude_self", action="store_true", default=None,
                        help="drop the batch timestamp from sampler candidates")
    parser.add_argument("--dump-adjacency", dest="dump_adjacency",
                        help="write adjacency and mask of the first test batch")
    parser.add_argument("--workers", dest="sweep_workers", type=int, help="parallel sweep cells")
    return parser


def parse_run_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """
    Розбір аргументів у RunConfig

    Raises:
        ConfigError: невалідні значення або відсутній --data
    """
    args = build_parser().parse_args(argv)
    overrides: Dict[str, Any] = {key: value for key, value in vars(args).items() if key != "config"}
    config = build_run_config(overrides, config_file=args.config)
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Точка входу

    Returns:
        int: 0 - успіх; 2 - конфігурація або відсутні дані; 3 - помилка виконання
    """
    # Пізній імпорт: довідка та помилки прапорців не вантажать модель
    from core.services.experiment_service import ExperimentService

    try:
        config = parse_run_config(argv)
    except (ConfigError, ValidationError) as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    # ValidationError після розбору конфігурації - збій обчислень (NaN у прогнозах тощо)
    try:
        service = ExperimentService()
        if config.is_sweep:
            summary = service.sweep(config)
            failed = [row for row in summary.rows if row.status != "ok"]
            if failed:
                print(f"{len(failed)} of {len(summary.rows)} sweep cells failed", file=sys.stderr)
            if len(failed) == len(summary.rows):
                return EXIT_RUNTIME
        else:
            service.run(config)
    except ConfigError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (DataFormatError, NormalizationError, SplitError) as e:
        print(f"Data error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except IGMTFException as e:
        logger.exception("Run failed")
        print(f"Run failed: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
