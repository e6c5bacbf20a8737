from typing import Optional

from src.domain.dto.agent.rhea_dto import AgentKind, RheaConfig
from src.service.agents.agent_protocol import Agent
from src.service.agents.default_policy import DefaultPolicyAgent
from src.service.agents.rhea_agent import RheaAgent
from src.service.engine.game_engine import GameEngine
from src.utils.exception_handler.game_error_class import ExperimentConfigException


def make_agent(kind: AgentKind, engine: GameEngine, cfg: Optional[RheaConfig] = None) -> Agent:
    if kind is AgentKind.DP:
        return DefaultPolicyAgent(engine)
    if kind is AgentKind.RHEA:
        return RheaAgent(engine, cfg or RheaConfig())
    raise ExperimentConfigException(f"알 수 없는 에이전트: {kind}")
