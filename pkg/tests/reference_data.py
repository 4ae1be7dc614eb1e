"""Reference values transcribed by hand, kept apart from the package's own copies.

Epsilon tables are stored column by column: each entry maps a value of
epsilon (as an exponent of i) to the residue classes mod 4 that take it.
For odd D the classes are those of lambda^3.
"""

EPSILON_COLUMNS = {
    -7: {0: ["1", "-√-d"], 2: ["-1", "√-d"]},
    -28: {0: ["1", "√-d", "-1+2√-d", "2-√-d"], 2: ["-1", "-√-d", "1+2√-d", "2+√-d"]},
    -8: {0: ["1", "-1+2√-d", "1+√-d", "-1+√-d"], 2: ["-1", "1+2√-d", "1-√-d", "-1-√-d"]},
    -20: {0: ["1", "1+2√-d"], 1: ["2+√-d", "√-d"], 2: ["-1", "-1+2√-d"], 3: ["2-√-d", "-√-d"]},
    -16: {0: ["1", "-1+2√-d"], 1: ["1-√-d", "-1-√-d"], 2: ["-1", "1+2√-d"], 3: ["1+√-d", "-1+√-d"]},
}

HILBERT = {
    -7: [1, 3375],
    -8: [1, -8000],
    -23: [1, 3491750, -5151296875, 12771880859375],
}

# degree-one j-invariants with their discriminants, for spot checks
J_CONSTANTS = {-3: 0, -4: 1728, -7: -3375, -8: 8000, -11: -32768, -12: 54000, -16: 287496,
               -19: -884736, -27: -12288000, -28: 16581375, -43: -884736000,
               -67: -147197952000, -163: -262537412640768000}

# (d, u, v) -> psi as (u, v)
QCURVE_HECKE = {(7, 2, 1): (2, 1), (6, 1, 1): (-1, -1), (2, 3, 2): (-3, -2)}

CRITERION2_DISCS = (-7, -8, -11, -15, -19, -20, -23, -24, -40, -43, -67, -163,
                    -12, -16, -27, -28, -75, -99)
CRITERION4_DISCS = (-7, -11, -8, -20, -19, -43)
CRITERION8_D = (2, 6, 7, 10, 11, 14, 15, 19, 22, 23)
