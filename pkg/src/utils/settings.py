"""
Process-level settings, read from the environment or a .env file.

Experiment-level parameters live in the experiment config (see src.models.config);
these settings only cover how the process runs.
"""
from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings (env prefix CVARBANDIT_)"""
    model_config = SettingsConfigDict(
        env_prefix="CVARBANDIT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    log_level: str = "INFO"
    # Empty disables the rotating file sink
    log_file: str = ""
    # Largest support a single convolution may produce
    support_cap: int = 5_000_000
    default_workers: int = 1
    default_seeds: int = 20
    # Draws used when a super arm's true CVaR has no exact form
    monte_carlo_samples: int = 200_000


@lru_cache()
def get_settings() -> Settings:
    """Return the cached settings instance."""
    return Settings()
