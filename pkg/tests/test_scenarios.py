import pytest

from silting_lab.scenarios import SCENARIOS, run_scenario


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_scenario_passes(name):
    b = run_scenario(name)
    js = b.to_json("fail")
    assert js["ok"], [a for a in b.assertions if not a["ok"]]
    assert js["schema"] == 1
    assert all({"computed", "expected", "label"} <= set(a) for a in js["assertions"])


def test_unknown():
    with pytest.raises(KeyError):
        run_scenario("missing")
