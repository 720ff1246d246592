import pytest

from autbound.bounds import EVALUATORS, Analysis, BoundId, BoundValue, eval_eq1


def _halved_eq1(analysis: Analysis) -> list[BoundValue]:
    value = eval_eq1(analysis.stats, analysis.g.n)
    assert value.exact_value is not None
    return [BoundValue.exact(BoundId.EQ1, value.exact_value / 2)]


@pytest.fixture()
def halved_eq1(monkeypatch: pytest.MonkeyPatch) -> None:
    """Evaluate eq1 at half its true value, so that it undercuts the automorphism group."""
    monkeypatch.setitem(EVALUATORS, BoundId.EQ1, _halved_eq1)
