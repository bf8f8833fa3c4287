"""Numerical knobs shared by the whole lab."""

from dataclasses import dataclass, fields, replace as _replace
import os

from .errors import ConfigError


@dataclass(frozen=True)
class Settings:
    """Tolerances, grid depths and resources.

    Args:
        radius_tol (float): tail bound admitted when computing the admissible radius.
        quad_nodes (int): Gauss-Legendre nodes per dyadic panel.
        panel_cap (int): index of the last dyadic panel.
        panel_rel_stop (float): stop once a panel adds less than this fraction of the total.
        slope_threshold (float): log-log slope separating flat from growing trends.
        vanish_fraction (float): final value below this fraction of the sup means vanishing.
        truncation (int): default number of Taylor coefficients minus one.
        depth (int): number of half-power grid points towards the boundary.
        fit_residual_max (float): largest RMS residual accepted for tail extrapolation.
        threads (int): worker threads, 0 meaning all cores.
        morrey_method (str): 'spectral' or 'tensor'.
    """
    radius_tol: float = 1e-10
    quad_nodes: int = 32
    panel_cap: int = 60
    panel_rel_stop: float = 1e-15
    slope_threshold: float = 0.05
    vanish_fraction: float = 0.2
    truncation: int = 4096
    depth: int = 40
    fit_residual_max: float = 0.1
    threads: int = 0
    morrey_method: str = 'spectral'

    def __post_init__(self):
        if self.truncation < 0:
            raise ConfigError("truncation must be nonnegative.")
        if self.depth < 8:
            raise ConfigError("depth must be at least 8.")
        if self.threads < 0:
            raise ConfigError("threads must be nonnegative.")
        if self.morrey_method not in ('spectral', 'tensor'):
            raise ConfigError(f"Unknown morrey_method '{self.morrey_method}'.")

    def replace(self, **changes):
        """Copy with some fields changed; None values are ignored."""
        changes = {k: v for k, v in changes.items() if v is not None}
        unknown = set(changes) - {f.name for f in fields(self)}
        if unknown:
            raise ConfigError(f"Unknown settings: {sorted(unknown)}.")
        return _replace(self, **changes)

    @property
    def workers(self):
        return self.threads or os.cpu_count() or 1


DEFAULT = Settings()
