from typing import Dict, List, Sequence, Tuple

from pydantic import BaseModel

from src.domain.dto.metrics.metrics_dto import CellResult


class ReportRow(BaseModel):
    agent: str
    fitness: str
    condition: str
    setups: int
    mean_win_ratio: float
    mean_duration: float
    mean_share_ratio: float
    mean_improvement_over_dp: float | None = None


REPORT_COLUMNS = tuple(ReportRow.model_fields.keys())


def summarize(rows: Sequence[CellResult]) -> List[ReportRow]:
    """결과 표를 (에이전트, 평가 함수, 조건) 별 셋업 평균으로 요약한다. 처음 등장한 순서를 유지한다."""
    groups: Dict[Tuple[str, str, str], List[CellResult]] = {}
    for row in rows:
        groups.setdefault((row.agent, row.fitness, row.condition), []).append(row)

    summary = []
    for (agent, fitness, condition), cells in groups.items():
        improvements = [c.improvement_over_dp for c in cells if c.improvement_over_dp is not None]
        summary.append(ReportRow(
            agent=agent,
            fitness=fitness,
            condition=condition,
            setups=len(cells),
            mean_win_ratio=sum(c.win_ratio for c in cells) / len(cells),
            mean_duration=sum(c.mean_duration for c in cells) / len(cells),
            mean_share_ratio=sum(c.ratio_share for c in cells) / len(cells),
            mean_improvement_over_dp=sum(improvements) / len(improvements) if improvements else None,
        ))
    return summary
