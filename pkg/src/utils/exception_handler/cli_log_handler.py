import functools
import sys
import traceback

from src.logger.custom_logger import get_logger
from src.utils.exception_handler.game_error_class import GameException

logger = get_logger(__name__)

EXIT_DOMAIN_ERROR = 2
EXIT_UNEXPECTED_ERROR = 1


def setup_exception_handlers(command):
    """
    CLI 명령 함수를 감싸 예외를 로깅하고 종료 코드로 변환한다.

    [입력]
        command: argparse Namespace 를 받아 int 종료 코드를 돌려주는 함수
    [출력]
        같은 시그니처의 함수. GameException -> 2, 그 외 예외 -> 1
    """

    @functools.wraps(command)
    def wrapper(args):
        try:
            return command(args)

        except GameException as exc:
            logger.error(f"Game error [{exc.code}]: {exc.message} - Command: {getattr(args, 'command', '?')}")
            if exc.trace_back:
                logger.error(exc.trace_back)
            return EXIT_DOMAIN_ERROR

        except KeyboardInterrupt:
            logger.warning("사용자에 의해 중단되었습니다.")
            return EXIT_UNEXPECTED_ERROR

        except Exception as exc:
            logger.error("=" * 60)
            logger.error(f"Command: {getattr(args, 'command', '?')}")
            logger.error(f"Error Type: {type(exc).__name__}")
            logger.error(f"Error Message: {str(exc)}")
            logger.error("Full Traceback:")
            logger.error(traceback.format_exc())
            logger.error("=" * 60)
            print(f"unexpected error: {exc}", file=sys.stderr)
            return EXIT_UNEXPECTED_ERROR

    return wrapper
