"""Transcription of the 32-cell classification table.

Rows add criteria from {B, N, W}, columns from {C, I, O}.  Each cell holds the
class and the cited results, with citations written as this package's
derivation tokens.
"""
LP, GREEDY, ROUND, TRIVIAL = "linear-relaxation", "greedy-assignment", "lp-rounding", "single-district"
VC, TP = "vertex-cover-reduction", "3-partition-reduction"
B, O, W = "balance-not-easier", "objective-not-easier", "weights-not-easier"

COLUMNS = ("O", "IO", "CI", "CIO")
ROWS = ("", "W", "B", "BW", "N", "NW", "BN", "BNW")

TABLE = {
    "":    [("P", (LP,)), ("P", (GREEDY, W)), ("P", (GREEDY, W, O)), ("P", (GREEDY, W))],
    "W":   [("P", (LP,)), ("P", (GREEDY,)), ("P", (GREEDY, O)), ("P", (GREEDY,))],
    "B":   [("P", (LP,)), ("P", (ROUND,)), ("H", (TP,)), ("H", (TP, O))],
    "BW":  [("P", (LP,)), ("H", (TP,)), ("H", (TP, W)), ("H", (TP, O))],
    "N":   [("H", (VC,)), ("H", (VC,)), ("P", (TRIVIAL, W)), ("H", (VC,))],
    "NW":  [("H", (VC, W)), ("H", (VC, W)), ("P", (TRIVIAL,)), ("H", (VC, W))],
    "BN":  [("H", (VC, B)), ("H", (VC, B)), ("H", (TP,)), ("H", (TP, O))],
    "BNW": [("H", (VC, W, B)), ("H", (VC, W, B)), ("H", (TP, W)), ("H", (TP, O, W))],
}


def cells():
    """Yield ``(variant letters, class, citations)`` for all 32 cells."""
    for row in ROWS:
        for col, (cls, cites) in zip(COLUMNS, TABLE[row]):
            yield row + col, cls, cites
