import random
from typing import List, Protocol

from src.domain.entities.action_entity import MacroAction
from src.domain.entities.belief_entity import BeliefState


class Agent(Protocol):
    name: str

    def decide(self, belief: BeliefState, rng: random.Random) -> List[MacroAction]:
        """현재 플레이어가 지금 실행할 매크로 목록 (한 개 이상)."""
        ...
