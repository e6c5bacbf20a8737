import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List


class EventKind(str, Enum):
    SETUP = "setup"
    ACTION = "action"
    CARD_DRAWN = "card_drawn"
    DISCARD = "discard"
    EPIDEMIC = "epidemic"
    INFECTION = "infection"
    OUTBREAK = "outbreak"
    ERADICATED = "eradicated"
    TURN_END = "turn_end"
    STATUS = "status"


@dataclass(frozen=True, slots=True)
class GameEvent:
    kind: EventKind
    turn: int
    player: int
    payload: Dict[str, Any]

    def to_record(self) -> dict:
        return {"kind": self.kind.value, "turn": self.turn, "player": self.player, **self.payload}


@dataclass(slots=True)
class EventLog:
    """추가만 가능한 이벤트 기록. 한 줄에 JSON 하나(JSON Lines)로 직렬화한다."""
    records: List[GameEvent] = field(default_factory=list)

    def append(self, kind: EventKind, turn: int, player: int, **payload: Any) -> None:
        self.records.append(GameEvent(kind, turn, player, payload))

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[GameEvent]:
        return iter(self.records)

    def copy(self) -> "EventLog":
        return EventLog(list(self.records))

    def to_jsonl(self) -> str:
        return "".join(json.dumps(record.to_record(), sort_keys=True) + "\n" for record in self.records)
