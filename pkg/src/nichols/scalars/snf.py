"""Smith normal form of integer matrices via exact row/column reduction.

Only the elementary divisor chain is needed downstream (abelianizations of
rack presentations), so transforms are not tracked.  Arbitrary-precision
ints keep everything exact; pivoting on the minimal absolute value keeps
growth tame at these sizes.
"""

from __future__ import annotations


def smith_normal_form(matrix) -> tuple[int, ...]:
    """Nonzero elementary divisors d_1 | d_2 | ... of an integer matrix.

    The zero matrix (or an empty one) yields ().
    """
    a = [list(map(int, row)) for row in matrix]
    if not a or not a[0]:
        return ()
    rows, cols = len(a), len(a[0])
    if any(len(r) != cols for r in a):
        raise ValueError("ragged matrix")
    divisors: list[int] = []
    s = 0
    while s < min(rows, cols):
        pivot = _min_nonzero(a, s)
        if pivot is None:
            break
        i, j = pivot
        a[s], a[i] = a[i], a[s]
        for r in a:
            r[s], r[j] = r[j], r[s]
        while True:
            # clear column s
            for i in range(s + 1, rows):
                if a[i][s]:
                    q = a[i][s] // a[s][s]
                    for c in range(s, cols):
                        a[i][c] -= q * a[s][c]
            # clear row s
            for j in range(s + 1, cols):
                if a[s][j]:
                    q = a[s][j] // a[s][s]
                    for i2 in range(s, rows):
                        a[i2][j] -= q * a[i2][s]
            if all(a[i][s] == 0 for i in range(s + 1, rows)) and all(
                a[s][j] == 0 for j in range(s + 1, cols)
            ):
                culprit = _non_divisible(a, s)
                if culprit is None:
                    break
                # fold a row containing a non-divisible entry into row s
                for c in range(s, cols):
                    a[s][c] += a[culprit][c]
            else:
                pivot = _min_nonzero(a, s)
                i, j = pivot
                a[s], a[i] = a[i], a[s]
                for r in a:
                    r[s], r[j] = r[j], r[s]
        divisors.append(abs(a[s][s]))
        s += 1
    return tuple(divisors)


def _min_nonzero(a, s):
    best = None
    best_val = None
    for i in range(s, len(a)):
        for j in range(s, len(a[0])):
            v = abs(a[i][j])
            if v and (best_val is None or v < best_val):
                best, best_val = (i, j), v
                if v == 1:
                    return best
    return best


def _non_divisible(a, s):
    d = a[s][s]
    for i in range(s + 1, len(a)):
        for j in range(s + 1, len(a[0])):
            if a[i][j] % d:
                return i
    return None
