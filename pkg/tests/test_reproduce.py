import pytest

from flagdepth.reproduce import EXAMPLES, reproduce_example


@pytest.mark.parametrize("example", EXAMPLES)
def test_every_example_reproduces(example):
    rep = reproduce_example(example)
    assert rep.passed, rep.text()
    assert rep.text().endswith("PASSED")


def test_unknown_example():
    with pytest.raises(ValueError):
        reproduce_example("ex9.9")
