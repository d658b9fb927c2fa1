"""Slow, independent reference computations used to check the engine."""

import math



def naive_profile(x):
    xbar = sum(x) / len(x)
    out, acc = [], 0.0
    for v in x:
        acc += v - xbar
        out.append(acc)
    return out


def naive_box_residual(y, start, n):
    # 2x2 normal equations with absolute (1-based) abscissae, Cramer's rule
    sk = skk = sy = sky = 0.0
    for j in range(n):
        k, v = float(start + j + 1), y[start + j]
        sk += k
        skk += k * k
        sy += v
        sky += k * v
    det = n * skk - sk * sk
    c0 = (sy * skk - sk * sky) / det
    c1 = (n * sky - sk * sy) / det
    total = 0.0
    for j in range(n):
        r = y[start + j] - (c0 + c1 * (start + j + 1))
        total += r * r
    return total


def naive_fluctuation(x, n, profile=None):
    y = naive_profile(x) if profile is None else profile
    m = len(y) // n
    total = sum(naive_box_residual(y, i * n, n) for i in range(m))
    return math.sqrt(total / (m * n))
