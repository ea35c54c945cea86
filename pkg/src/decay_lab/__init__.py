"""Numerical experiments for the weighted heat, Oseen and Duhamel estimates."""

from src.decay_lab.ckn import CknRow, CknTable, ckn_comparison, window_integral
from src.decay_lab.decay import (
    default_t_grid,
    dilation_ratio_sups,
    heat_decay_report,
    localized_decay_report,
    oseen_decay_report,
    time_cap,
    weighted_lhs,
)
from src.decay_lab.fitting import SlopeFit, fit_slope
from src.decay_lab.integral import (
    ConstantProbe,
    dilate_trajectory,
    dilation_constants,
    duhamel_estimate_report,
    integral_estimate_report,
    measure_duhamel,
)
from src.decay_lab.reports import (
    REPORT_CSV_HEADER,
    DecayReport,
    ParabolaMask,
    write_report_csv,
    write_report_json,
)
from src.decay_lab.scaling import ScalingCheck, scaling_identity_check

__all__ = [
    "REPORT_CSV_HEADER",
    "CknRow",
    "CknTable",
    "ConstantProbe",
    "DecayReport",
    "ParabolaMask",
    "ScalingCheck",
    "SlopeFit",
    "ckn_comparison",
    "default_t_grid",
    "dilate_trajectory",
    "dilation_constants",
    "dilation_ratio_sups",
    "duhamel_estimate_report",
    "fit_slope",
    "heat_decay_report",
    "integral_estimate_report",
    "localized_decay_report",
    "measure_duhamel",
    "oseen_decay_report",
    "scaling_identity_check",
    "time_cap",
    "weighted_lhs",
    "write_report_csv",
    "write_report_json",
]
