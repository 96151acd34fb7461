"""Config struct for application running."""
import os
from typing import get_type_hints

import structlog

from transfun.internal.models import CheckConfig

log = structlog.stdlib.get_logger()


class EnvParser:
    """Mixin to parse environment variables into class fields."""

    def __init__(self) -> None:
        """Parse environment variables into class fields.

        If the class field is upper case, parse it into the indicated
        type from the environment. Required fields are those set in
        the child class without a default value.

        Examples:
        >>> MyEnv(EnvParser):
        >>>     REQUIRED_ENV_VAR: str
        >>>     OPTIONAL_ENV_VAR: str = "default value"
        >>>     ignored_var: str = "ignored"
        """
        for field, t in get_type_hints(self).items():
            # Skip item if not upper case
            if not field.isupper():
                continue

            default_value = getattr(self, field, None)
            match (default_value, os.environ.get(field)):
                case (None, None):
                    # No default value, and field not in env
                    raise OSError(f"Required field {field} not supplied")
                case (_, None):
                    # A default value is set and field not in env
                    pass
                case (_, env_value):
                    # Cast to desired type
                    self.__setattr__(field, t(env_value))
                    log.debug("read config from environment", field=field)


class Config(EnvParser):
    """Config for the application."""

    CHECK_TRIALS: int = 1000
    CHECK_TOLERANCE: float = 1e-9
    CHECK_SEED: int = 0
    CHECK_MAX_MASS: float = 10.0
    CHECK_SEQUENCE_LENGTH: int = 20
    SENTRY_DSN: str = ""
    ENVIRONMENT: str = "local"

    def check_config(self) -> CheckConfig:
        """The checker settings the environment asks for."""
        return CheckConfig(
            trials=self.CHECK_TRIALS,
            tolerance=self.CHECK_TOLERANCE,
            seed=self.CHECK_SEED,
            max_mass=self.CHECK_MAX_MASS,
            sequence_length=self.CHECK_SEQUENCE_LENGTH,
        )
