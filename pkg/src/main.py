import argparse
import sys
from typing import Optional, Sequence

from src.router.cli import bench_controller, game_controller, setup_controller


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pandemic-bench", description="Pandemic 시뮬레이터 / 에이전트 벤치마크")
    subparsers = parser.add_subparsers(dest="command", required=True)

    setup_controller.register(subparsers)
    game_controller.register(subparsers)
    bench_controller.register(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
