"""Stochastic multi-trip AMR delivery scheduling."""

from ._amrsched import (
    CostBreakdown,
    Error,
    Gaussian,
    Instance,
    Plan,
    SearchResult,
    check_plan,
    evaluate,
    exact,
    exceed_probability,
    generate_instance,
    greedy,
    its,
    load_instance,
    load_instance_file,
    load_plan,
    max_with_constant,
    route_listing,
    save_plan,
    service_probability,
    simulate,
    ts,
    vns,
    without_variance,
)

__all__ = [
    "CostBreakdown",
    "Error",
    "Gaussian",
    "Instance",
    "Plan",
    "SearchResult",
    "check_plan",
    "evaluate",
    "exact",
    "exceed_probability",
    "generate_instance",
    "greedy",
    "its",
    "load_instance",
    "load_instance_file",
    "load_plan",
    "max_with_constant",
    "route_listing",
    "save_plan",
    "service_probability",
    "simulate",
    "ts",
    "vns",
    "without_variance",
]
