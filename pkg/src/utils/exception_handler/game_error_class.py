class GameException(Exception):
    def __init__(self, message: str, code: str = "game_error", trace_back: str = None):
        self.message = message
        self.code = code
        self.trace_back = trace_back
        super().__init__(self.message)


class MapValidationException(GameException):
    def __init__(self, message: str = "지도 문서가 올바르지 않습니다."):
        super().__init__(message, code="invalid_map")


class InvalidSetupException(GameException):
    def __init__(self, message: str = "게임 설정이 올바르지 않습니다."):
        super().__init__(message, code="invalid_setup")


class IllegalActionException(GameException):
    def __init__(self, action, message: str = "규칙에 맞지 않는 행동입니다: "):
        self.action = action
        super().__init__(message + str(action), code="illegal_action")


class DeterminizationException(GameException):
    def __init__(self, message: str = "덱 구조와 카드 수가 일치하지 않습니다."):
        super().__init__(message, code="determinization")


class FitnessSpecException(GameException):
    def __init__(self, spec: str, message: str = "평가 함수 표기가 올바르지 않습니다: "):
        self.spec = spec
        super().__init__(message + spec, code="invalid_fitness")


class TestbedSelectionException(GameException):
    __test__ = False

    def __init__(self, message: str = "테스트베드를 선택할 수 없습니다."):
        super().__init__(message, code="testbed_selection")


class SetupFileException(GameException):
    def __init__(self, message: str = "설정 파일을 읽을 수 없습니다."):
        super().__init__(message, code="setup_file")


class ExperimentConfigException(GameException):
    def __init__(self, message: str = "실험 구성이 올바르지 않습니다."):
        super().__init__(message, code="experiment_config")
