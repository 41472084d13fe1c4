"""Entanglement purification of two-colorable graph states."""

from ._gdpurify import (
    GDState,
    Graph,
    GdpurifyError,
    bepp_bound,
    bitflip_b_noise,
    dejmps_fixed_point,
    depolarize_all,
    f_max,
    f_min,
    grid_cluster,
    iterate,
    oracle_check,
    p1_step,
    p2_step,
    p_min,
    pure_target,
    q_min,
    read_graph_file,
    restricted_gain,
    restricted_gain_region,
    rho_a,
    rho_q,
    rho_x,
    standard_graph,
)

__version__ = "0.1.0"
