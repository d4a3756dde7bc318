import pytest

from polyball.errors import InvalidInputError
from polyball.io import RunConfig
from polyball.verify import SUITES, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_on_small_sample(name):
    report = run_suite(name, RunConfig(seed=1, samples=3))
    assert report["passed"], report["checks"]
    assert all(c["samples"] > 0 for c in report["checks"])


def test_unknown_suite():
    with pytest.raises(InvalidInputError):
        run_suite("nope", RunConfig())
