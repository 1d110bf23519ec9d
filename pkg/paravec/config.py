"""
Config module

This module holds the solver settings. Defaults are registered on import, can be overridden from a
YAML file and, for upper case names, are read from the environment. The frozen ``Tolerances`` and
``SolverOptions`` objects are the snapshots the numerical code receives.
"""

import os
from dataclasses import dataclass, field, replace
from typing import Any, Optional, TypeVar, Union

import yaml

AnyBasic = Union[int, float, bool, str, list, dict, tuple]
ConfigValueType = TypeVar("ConfigValueType", bound="ConfigValue")

INIT_METHODS = ("p0", "perturb", "weight")


class ConfigError(AttributeError):
    """
    Exception raised for errors in the configuration.

    Attributes:
        message - explanation of the error
    """


class ConfigValue:
    """A node of the configuration tree"""

    def __init__(self, value: AnyBasic = None) -> None:
        self._value = value

    def set_values(self, data: dict[str, AnyBasic]) -> None:
        """Set the attributes from a data dict, merging nested dicts into existing nodes"""
        for attr, value in data.items():
            if isinstance(value, dict):
                config_value = vars(self).get(attr)
                if not isinstance(config_value, ConfigValue):
                    config_value = ConfigValue()
                config_value.set_values(value)
                setattr(self, attr, config_value)
            else:
                setattr(self, attr, value)

    def create_config(self, name: str, *, default: AnyBasic = None, **values: AnyBasic) -> "ConfigValue":
        """
        Create a configuration value and nested values.

        Args:
            name (str): The name of the configuration value
            default: The default value. If set, values cannot be provided
            values (dict): Nested configuration values

        Returns:
            ConfigValue: The configuration root, for chaining
        """
        if default is not None and values:
            raise ConfigError("You cannot set the default value AND default values for sub values")
        if values:
            self.set_values({name: values})
        else:
            self.set_values({name: ConfigValue() if default is None else default})

        return self

    def load_config_from_file(self, filename: str) -> None:
        """Override the current values with the content of a YAML file, if the file exists"""
        try:
            with open(filename, encoding="utf-8") as config_file:
                raw_data = yaml.safe_load(config_file) or {}
        except FileNotFoundError:
            return
        if not isinstance(raw_data, dict):
            raise ConfigError(f"The config file {filename} must contain a mapping")
        self.set_values(raw_data)

    def __getattr__(self, item: str) -> Any:
        if item.isupper():
            return os.getenv(item)
        raise ConfigError(f"No such config value for {item}. And there is no default value for it")


Config = ConfigValue()


def set_defaults() -> None:
    """Register the default values on ``Config``"""
    Config.create_config(
        "tolerances",
        feasibility=1e-7,
        geometry=1e-9,
        defining=1e-7,
        interior=1e-7,
        image=1e-7,
        singular=1e-11,
    )
    Config.create_config(
        "engine",
        init="p0",
        dedupe_images=False,
        filter_generators=False,
        max_dictionaries=100000,
    )
    Config.create_config("oracle", grid=30, samples=200, seed=0)


def _as_float(group: str, name: str) -> float:
    value = getattr(getattr(Config, group), name)
    try:
        return float(value)
    except (TypeError, ValueError) as err:
        raise ConfigError(f"Config value {group}.{name} must be a number, got {value!r}") from err


@dataclass(frozen=True)
class Tolerances:
    """
    Numerical tolerances.

    ``geometry`` is the membership tolerance for pivot entries and reduced costs, ``feasibility`` the
    primal feasibility slack, ``defining`` separates redundant from defining inequalities, ``interior``
    decides interiority of the cone point, ``image`` compares objective images and ``singular`` is the
    relative pivot threshold of the LU factorization.
    """

    feasibility: float = 1e-7
    geometry: float = 1e-9
    defining: float = 1e-7
    interior: float = 1e-7
    image: float = 1e-7
    singular: float = 1e-11

    @property
    def pivot(self) -> float:
        return self.geometry

    @property
    def optimality(self) -> float:
        return self.geometry

    @classmethod
    def from_config(cls) -> "Tolerances":
        """Build the tolerances from ``Config``; ``PARAVEC_TOL`` overrides the geometric tolerance"""
        values = {name: _as_float("tolerances", name) for name in cls.__dataclass_fields__}
        if env_tol := Config.PARAVEC_TOL:
            try:
                values["geometry"] = float(env_tol)
            except ValueError as err:
                raise ConfigError(f"PARAVEC_TOL must be a number, got {env_tol!r}") from err
        return cls(**values)


@dataclass(frozen=True)
class SolverOptions:
    """Settings of one solver run"""

    tolerances: Tolerances = field(default_factory=Tolerances)
    init: str = "p0"
    weight: Optional[tuple[float, ...]] = None
    dedupe_images: bool = False
    filter_generators: bool = False
    max_dictionaries: int = 100000

    def __post_init__(self) -> None:
        if self.init not in INIT_METHODS:
            raise ConfigError(f"Unknown init method {self.init}. Use one of {', '.join(INIT_METHODS)}")
        if self.init == "weight" and self.weight is None:
            raise ConfigError("The weight init method needs a weight")

    @classmethod
    def from_config(cls, **overrides: Any) -> "SolverOptions":
        """Build the options from ``Config`` and apply the given overrides"""
        options = cls(
            tolerances=Tolerances.from_config(),
            init=str(Config.engine.init),
            dedupe_images=bool(Config.engine.dedupe_images),
            filter_generators=bool(Config.engine.filter_generators),
            max_dictionaries=int(Config.engine.max_dictionaries),
        )
        return replace(options, **overrides) if overrides else options


set_defaults()
