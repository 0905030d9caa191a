from pathlib import Path

from oie import Interval

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

FATHER = [(1830, 1900), (1910, 1990), (2050, 2140)]
SON = [(1860, 1930), (1930, 2010), (2077, 2140)]
# era rules: father and son lifespans that cannot both hold
FATHER_SON_INFEASIBLE = [
    ((1830, 1900), (1930, 2010)), ((1830, 1900), (2077, 2140)),
    ((1910, 1990), (1860, 1930)), ((1910, 1990), (2077, 2140)),
    ((2050, 2140), (1860, 1930)), ((2050, 2140), (1930, 2010)),
]

DOCTORS_ADD_F = [
    ((0, 1), (0, 1)), ((0, 1), (21, 22)), ((13, 14), (0, 1)),
    ((13, 14), (21, 22)), ((20, 22), (0, 1)), ((20, 22), (21, 22)),
]
DOCTORS_ADD_I = [(0, 1), (0, 22), (0, 14), (13, 22), (20, 22)]


def ivs(pairs):
    return {Interval(*p) for p in pairs}


def combos(rows):
    return {tuple(Interval(*p) for p in row) for row in rows}
