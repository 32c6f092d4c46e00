import argparse
import logging
import sys

from src.cli import COMMANDS, RunConfig, error_handler, handle_run, parse_spec
from src.models import MODEL_REGISTRY
from src.utils import load_config, setup_logger

logger = logging.getLogger(__name__)

COMMAND_HELP = {
    'exact': 'exact counts p(0..nmax)',
    'estimate': 'asymptotic estimate of p(n) with its saddle-point counterpart',
    'cauchy': 'p(n) from the Cauchy integral on the saddle circle',
    'compare': 'exact counts against the estimates along a doubling ladder',
    'fit': 'least-squares fit of the correction coefficients',
    'verify': 'structural and numerical checks for one model',
}


def build_parser(config: dict) -> argparse.ArgumentParser:
    models = ', '.join(f"{name}: {entry['description']}" for name, entry in MODEL_REGISTRY.items())
    parser = argparse.ArgumentParser(
        description="Restricted partition counts, asymptotics and saddle-point numerics",
        epilog=f"models -- {models}",
    )
    sub = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        p = sub.add_parser(command, help=COMMAND_HELP[command])
        p.add_argument('--spec', required=True, help="model, e.g. classical, powers(2), ap(3,4,1), unionap(1,2;2,3)")
        p.add_argument('--n', type=int, default=None)
        p.add_argument('--nmax', dest='n_max', type=int, default=None)
        p.add_argument('--order', type=int, choices=(0, 1), default=0)
        p.add_argument('--format', choices=('csv', 'json'), default='csv')
        p.add_argument('--digits', type=int, default=config['precision']['digits'])
        p.add_argument('--quad-points', dest='quad_points', type=int, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    config = load_config()
    logging_config = config.get('logging', {})
    setup_logger(level=logging_config.get('level', 'INFO'), log_dir=logging_config.get('directory', 'logs'))

    args = build_parser(config).parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            spec=parse_spec(args.spec),
            n=args.n,
            n_max=args.n_max,
            order=args.order,
            format=args.format,
            precision_digits=args.digits,
            quad_points=args.quad_points,
        )
        return handle_run(cfg, config)
    except Exception as e:
        return error_handler(e)


if __name__ == "__main__":
    sys.exit(main())
