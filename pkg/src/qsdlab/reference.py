"""Published numerical values used for regression and reproduction checks.

Values are stored as printed, together with the number of significant
figures they are compared at.  ``Q1_TABLE[s][N]`` etc.
"""

from __future__ import annotations

from fractions import Fraction

# q_1 of the QSD; R0 = 2, alpha = 1.
Q1_TABLE = {
    1: {100: 1.30e-5, 200: 1.49e-10, 400: 1.27e-20},
    2: {100: 6.59e-12, 200: 18.2e-24, 400: 95.7e-48},
    3: {100: 7.74e-16, 200: 18.5e-32, 400: 73.7e-64},
    4: {100: 2.18e-18, 200: 1.22e-36, 400: 0.264e-72},
}
Q1_PARAMS = {"R0": 2.0, "alpha": 1.0}
Q1_SIG_FIGS = 3

# kappa_1..kappa_7 of the QSD; R0 = 10, alpha = 1.  CUMULANT_TABLE[s][N][k-1].
CUMULANT_TABLE = {
    1: {
        100: (81.6, 16.7, -13.8, 8.61, -0.532, -10.0, 17.8),
        200: (163, 33.3, -27.3, 16.9, -0.620, -21.0, 38.3),
        400: (327, 66.3, -54.3, 33.6, -0.833, -42.8, 79.0),
    },
    4: {
        100: (95.0, 4.93, -4.80, 4.63, -4.61, 5.52, -10.2),
        200: (190, 9.74, -9.45, 9.09, -8.98, 10.5, -18.9),
        400: (380, 19.3, -18.8, 18.0, -17.7, 20.5, -36.6),
    },
}
CUMULANT_PARAMS = {"R0": 10.0, "alpha": 1.0}
CUMULANT_SIG_FIGS = 3

# h1..h5 at s = 1..10.
H_TABLE = {
    1: ("1", "1", "1", "1", "1"),
    2: ("1/2", "3/4", "7/8", "13/32", "1/4"),
    3: ("1/3", "2/3", "8/9", "7/27", "1/9"),
    4: ("1/4", "5/8", "15/16", "25/128", "1/16"),
    5: ("1/5", "3/5", "1", "4/25", "1/25"),
    6: ("1/6", "7/12", "77/72", "119/864", "1/36"),
    7: ("1/7", "4/7", "8/7", "6/49", "1/49"),
    8: ("1/8", "9/16", "39/32", "57/512", "1/64"),
    9: ("1/9", "5/9", "35/27", "25/243", "1/81"),
    10: ("1/10", "11/20", "11/8", "77/800", "1/100"),
}


def h_table_fractions() -> dict[int, tuple[Fraction, ...]]:
    return {s: tuple(Fraction(v) for v in row) for s, row in H_TABLE.items()}


# Error terms (numeric QSD minus approximation) of the preferred method at
# non-integer s; R0 = 10, alpha = 1.  ERROR_TABLE_NONINT[s][k][N].
ERROR_TABLE_NONINT = {
    0.5: {
        1: {100: -227e-6, 200: -55e-6, 400: -14e-6},
        2: {100: 111e-4, 200: 54e-4, 400: 27e-4},
        3: {100: -35e-2, 200: -34e-2, 400: -33e-2},
    },
    3.5: {
        1: {100: -334e-7, 200: -83e-7, 400: -21e-7},
        2: {100: 247e-5, 200: 122e-5, 400: 61e-5},
        3: {100: -144e-3, 200: -142e-3, 400: -141e-3},
    },
}

# Error terms of three methods at s = 1; R0 = 10, alpha = 1.
# ERROR_TABLE_METHODS[method][k][N].
ERROR_TABLE_METHODS = {
    "PREFERRED": {
        1: {100: -697e-7, 200: -171e-7, 400: -42e-7},
        2: {100: 445e-5, 200: 219e-5, 400: 108e-5},
        3: {100: -226e-3, 200: -222e-3, 400: -220e-3},
    },
    "BR1": {
        1: {100: -311e-5, 200: -154e-5, 400: -76e-5},
        2: {100: 253e-3, 200: 251e-3, 400: 250e-3},
        3: {100: -21.0, 200: -41.0, 400: -82.0},
    },
    "BB": {
        1: {100: -359e-5, 200: -178e-5, 400: -88e-5},
        2: {100: 292e-3, 200: 290e-3, 400: 289e-3},
        3: {100: -10.2, 200: -20.3, 400: -40.3},
    },
}
ERROR_PARAMS = {"R0": 10.0, "alpha": 1.0}
ERROR_SIG_FIGS = 2

# Figure of QSDs over s; mean, variance and skewness trends.
FIGURE1_PARAMS = {"N": 100, "R0": 5.0, "alpha": 1.0}
FIGURE1_S_VALUES = (0.2, 0.5, 1.0, 3.0, 10.0)

# Structural thresholds quoted at R0 = 5, alpha = 1.
THRESHOLDS_R0_5_ALPHA_1 = {"s2": 0.4055, "s3": 0.3846}

TABLE_N_VALUES = (100, 200, 400)
