import re

from pydantic import ValidationError

from src.domain.dto.evaluation.fitness_dto import FitnessBase, FitnessSpec, FitnessWrapper, FoaMode
from src.utils.exception_handler.game_error_class import FitnessSpecException

# [w:|p:]<base> | [w:|p:]avg(<base>,<base>) | [w:|p:]wavg(<base>,<base>,<w>)
_SPEC_PATTERN = re.compile(
    r"^(?:(?P<wrapper>[wp]):)?"
    r"(?:(?P<single>f_[a-z]+)"
    r"|avg\((?P<avg_a>f_[a-z]+),(?P<avg_b>f_[a-z]+)\)"
    r"|wavg\((?P<wavg_a>f_[a-z]+),(?P<wavg_b>f_[a-z]+),(?P<weight>[0-9]*\.?[0-9]+)\))$"
)


def _base(name: str, text: str) -> FitnessBase:
    try:
        return FitnessBase(name)
    except ValueError:
        raise FitnessSpecException(text, f"알 수 없는 평가 함수 {name}: ")


def parse_fitness_spec(text: str, penalty: float = 0.1, foa_mode: FoaMode = FoaMode.SCALED) -> FitnessSpec:
    """
    예) "f_od", "w:f_od", "p:avg(f_oa,f_cm)", "wavg(f_oa,f_cm,0.7)"
    [오류]
        FitnessSpecException
    """
    compact = "".join(text.split()).lower()
    match = _SPEC_PATTERN.match(compact)
    if match is None:
        raise FitnessSpecException(text)

    wrapper = FitnessWrapper(match.group("wrapper")) if match.group("wrapper") else FitnessWrapper.NONE
    weights = None
    if match.group("single"):
        bases = (_base(match.group("single"), text),)
    elif match.group("avg_a"):
        bases = (_base(match.group("avg_a"), text), _base(match.group("avg_b"), text))
    else:
        bases = (_base(match.group("wavg_a"), text), _base(match.group("wavg_b"), text))
        weight = float(match.group("weight"))
        weights = (weight, 1.0 - weight)

    try:
        return FitnessSpec(bases=bases, weights=weights, wrapper=wrapper, penalty=penalty, foa_mode=foa_mode)
    except ValidationError as e:
        raise FitnessSpecException(text, f"{e.errors()[0]['msg']}: ")
