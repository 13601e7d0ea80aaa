from models.decision import DecisionConfig
from .core import BaseStrategy
from .logic_emergency import EmergencyPriorityStrategy
from .logic_nearest import NearestStrategy
from .logic_tolerance import ToleranceOverlapStrategy, ToleranceStrictStrategy

STRATEGIES = {
    cls.name: cls
    for cls in (NearestStrategy, ToleranceStrictStrategy, ToleranceOverlapStrategy, EmergencyPriorityStrategy)
}


def build_strategy(config: DecisionConfig) -> BaseStrategy:
    return STRATEGIES[config.strategy](config)
