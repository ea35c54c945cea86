"""
Configuration management for the radial-angular lab.

Centralizes grid, quadrature, tolerance and run defaults using Pydantic settings.
Follows SRP: Single source for configuration values.
"""

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Lab settings with sensible defaults (override with NSLAB_* env vars or a .env file)"""

    # Cartesian grid
    dimension: int = 3
    grid_points: int = 64
    box_half_width: float = 12.0
    resample_margin: float = 1.0 / 16.0
    upsample_factor: int = 2

    # Polar grid
    r_min_fraction: float = 1.0 / 1200.0
    shells: int = 32
    nodes_per_shell: int = 4
    angular_order: int = 15

    # Decay lab tolerances
    slope_tolerance: float = 0.05
    ratio_growth_limit: float = 10.0
    dilation_stability_factor: float = 2.0
    localized_growth_slack: float = 0.2
    box_time_divisor: float = 36.0
    asymptotic_decades: float = 2.0
    min_duhamel_snapshots: int = 32

    # Picard solver
    horizon: float = 1.0
    steps: int = 32
    picard_iters: int = 12
    contraction_tol: float = 1e-10
    non_contractive_patience: int = 3

    # Runs
    output_dir: str = "./runs"
    jobs: int = 1
    seed: int = 0
    fft_workers: int = 1

    # Logging
    log_level: str = "INFO"
    log_to_file: bool = False
    log_directory: str = "./logs"

    class Config:
        env_prefix = "NSLAB_"
        env_file = ".env"
        case_sensitive = False


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get global settings instance"""
    return settings


def update_settings(**kwargs) -> None:
    """Update settings programmatically"""
    global settings
    for key, value in kwargs.items():
        if hasattr(settings, key):
            setattr(settings, key, value)
