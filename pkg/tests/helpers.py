import numpy as np


def sorted_rows(rows):
    """rows of a matrix in lexicographic order, rounded to compare sets of points"""
    array = np.round(np.asarray(rows, dtype=np.float64), 7) + 0.0
    if array.size == 0:
        return []
    return sorted(map(tuple, array.tolist()))


def assert_same_rows(actual, expected):
    assert sorted_rows(actual) == sorted_rows(expected)
