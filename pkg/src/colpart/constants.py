"""Published reference values that computed constants are checked against.

These are transcribed, not computed; ``colpart tables`` and the acceptance
suite compare them with the exact values from ``rankin_cohen``.
"""

from fractions import Fraction

# alpha_v for the weights where the cusp space is zero
ALPHA_REFERENCE = {
    2: Fraction(1, 64),
    3: Fraction(1, 128),
    4: Fraction(15, 4096),
    5: Fraction(7, 4096),
    7: Fraction(99, 262144),
    6: Fraction(105, 131072),
    8: Fraction(3003, 16777216),
    9: Fraction(715, 8388608),
    10: Fraction(21879, 536870912),
    11: Fraction(20995, 1073741824),
    13: Fraction(156009, 34359738368),
}

# beta_v for the one-dimensional cusp spaces
BETA_REFERENCE = {
    6: Fraction(-51051, 22112),
    8: Fraction(-9429849, 1851904),
    9: Fraction(-324385347, 44919808),
    10: Fraction(-328502311137, 22886612992),
    11: Fraction(-318771027861, 10182066176),
    13: Fraction(-162957690002835, 1379781312512),
}

# calD_Delta(M=100, N=700), quoted to six decimals
WEIGHTED_SUM_DELTA_REFERENCE = "-2.308746"
WEIGHTED_SUM_DELTA_TOL = 1e-5
