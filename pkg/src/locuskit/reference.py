"""Published reference values used for regression checks.

Table entries are rounded so that the true value is slightly larger.
"""

PHI_TABLE = {
    0.51: 0.862, 0.52: 0.831, 0.53: 0.811, 0.54: 0.79, 0.55: 0.77, 0.56: 0.755, 0.57: 0.742,
    0.58: 0.728, 0.59: 0.716, 0.60: 0.703, 0.61: 0.691, 0.62: 0.68, 0.63: 0.67, 0.64: 0.658,
}

PSI_TABLE = {
    0.53: 0.877, 0.55: 0.85, 0.57: 0.832, 0.59: 0.815, 0.61: 0.799, 0.63: 0.785, 0.65: 0.771,
    0.67: 0.759, 0.69: 0.747, 0.71: 0.736, 0.7278: 0.7278,
}

TABLE_SLACK = 0.003

# The five most outward cusp corners, as printed (decimal truncations).
CORNER_POINTS = {
    "h4_0": (0.618034, 0.68232),
    "h4_m1": (0.550607, 0.7691),
    "h5_0": (0.532958, 0.804916),
    "h5_m1": (0.519703, 0.83221),
    "h6_0": (0.513951, 0.85068),
}

ALPHA2 = 0.649138
ALPHA3 = 0.727883
DOUBLE_ZERO_COEFFICIENT = 0.0875294

STAR_SWITCHING = {4: (0.550607, 0.7691), 5: (0.519703, 0.832218), 6: (0.508831, 0.866368)}
DOUBLE_SWITCHING_A = (0.606471, 0.83611)
DOUBLE_SWITCHING_B = 0.692945
