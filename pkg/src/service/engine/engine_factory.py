from src.service.engine.game_engine import GameEngine
from src.service.macros.cure_ability_service import choose_discard


def build_engine() -> GameEngine:
    """손패 제한 버리기를 A(t) 기준 choose_discard 로 연결한 기본 엔진."""
    return GameEngine(discard_policy=choose_discard)
