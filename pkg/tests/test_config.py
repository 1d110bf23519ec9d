import pytest

from paravec import Config
from paravec.config import ConfigError, SolverOptions, Tolerances

CONFIG_TEST = """
config1: value1

config2:
    subconfig1: value2

config3:
    - value3
    - value4
"""


@pytest.fixture
def config_file(tmp_path):
    def write(content):
        path = tmp_path / "paravec.yml"
        path.write_text(content, encoding="utf-8")
        return str(path)

    return write


def test_config(config_file):
    Config.load_config_from_file(config_file(CONFIG_TEST))

    assert Config.config1 == "value1"
    assert Config.config2.subconfig1 == "value2"
    assert Config.config3 == ["value3", "value4"]


def test_default_values(config_file):
    Config.create_config("feature1", default="default1")
    Config.create_config("feature2", subfeature1="default2")
    Config.load_config_from_file(config_file("feature3: override_value\n"))

    assert Config.feature1 == "default1"
    assert Config.feature2.subfeature1 == "default2"
    assert Config.feature3 == "override_value"


def test_file_keeps_unset_defaults(config_file):
    Config.load_config_from_file(config_file("tolerances:\n  geometry: 1.0e-6\n"))

    assert Config.tolerances.geometry == 1.0e-6
    assert Config.tolerances.feasibility == 1e-7


def test_config_on_file_not_found(tmp_path):
    Config.load_config_from_file(str(tmp_path / "missing.yml"))
    Config.create_config("config1", default="default1")

    assert Config.config1 == "default1"


def test_config_not_a_mapping(config_file):
    with pytest.raises(ConfigError):
        Config.load_config_from_file(config_file("- a\n- b\n"))


def test_default_and_values():
    with pytest.raises(ConfigError, match="You cannot set the default value AND default values for sub values"):
        Config.create_config("config1", default="default1", sub="value")


def test_missing_config():
    with pytest.raises(ConfigError, match="No such config value for missing"):
        Config.missing  # pylint: disable=pointless-statement


def test_upper_case_reads_environment(monkeypatch):
    monkeypatch.setenv("PARAVEC_TEST_VALUE", "42")
    assert Config.PARAVEC_TEST_VALUE == "42"
    assert Config.PARAVEC_UNSET_VALUE is None


def test_tolerances_defaults():
    assert Tolerances.from_config() == Tolerances()
    assert Tolerances().pivot == Tolerances().optimality == 1e-9


def test_tolerances_environment_override(monkeypatch):
    monkeypatch.setenv("PARAVEC_TOL", "1e-6")
    tolerances = Tolerances.from_config()

    assert tolerances.geometry == 1e-6
    assert tolerances.feasibility == 1e-7


def test_tolerances_invalid_environment(monkeypatch):
    monkeypatch.setenv("PARAVEC_TOL", "small")
    with pytest.raises(ConfigError, match="PARAVEC_TOL"):
        Tolerances.from_config()


def test_tolerances_invalid_value():
    Config.tolerances.image = "tiny"
    with pytest.raises(ConfigError, match="tolerances.image"):
        Tolerances.from_config()


def test_solver_options_from_config(config_file):
    Config.load_config_from_file(config_file("engine:\n  init: perturb\n  max_dictionaries: 10\n"))
    options = SolverOptions.from_config(dedupe_images=True)

    assert options.init == "perturb"
    assert options.max_dictionaries == 10
    assert options.dedupe_images
    assert not options.filter_generators


@pytest.mark.parametrize(
    "init, weight, message",
    [("simplex", None, "Unknown init method simplex"), ("weight", None, "needs a weight")],
    ids=["unknown", "weight without value"],
)
def test_solver_options_invalid_init(init, weight, message):
    with pytest.raises(ConfigError, match=message):
        SolverOptions(init=init, weight=weight)
