"""Dense Gaussian elimination over Q with row exchanges.

Independent reference for the band solvers: it shares no code with the
package and uses ordinary partial pivoting (first nonzero in the column)
instead of symbolic substitution.
"""
from fractions import Fraction


def eliminate(rows, rhs):
    """Return ``(rank, det, solution)``; ``solution`` is None when singular."""
    n = len(rows)
    a = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    det = Fraction(1)
    rank = 0
    r = 0
    for c in range(n):
        p = next((k for k in range(r, n) if a[k][c] != 0), None)
        if p is None:
            det = Fraction(0)
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            det = -det
        det *= a[r][c]
        for k in range(r + 1, n):
            if a[k][c] != 0:
                m = a[k][c] / a[r][c]
                for j in range(c, n + 1):
                    a[k][j] -= m * a[r][j]
        r += 1
        rank += 1
    if rank < n:
        return rank, Fraction(0), None
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = a[i][n] - sum(a[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / a[i][i]
    return rank, det, x


def matvec(rows, x):
    return [sum(Fraction(v) * xi for v, xi in zip(row, x)) for row in rows]
