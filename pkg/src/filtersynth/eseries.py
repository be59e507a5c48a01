"""IEC 60063 preferred-number mantissas, one decade each."""

from __future__ import annotations

import math

E24 = (
    1.0, 1.1, 1.2, 1.3, 1.5, 1.6, 1.8, 2.0, 2.2, 2.4, 2.7, 3.0,
    3.3, 3.6, 3.9, 4.3, 4.7, 5.1, 5.6, 6.2, 6.8, 7.5, 8.2, 9.1,
)

E96 = (
    1.00, 1.02, 1.05, 1.07, 1.10, 1.13, 1.15, 1.18, 1.21, 1.24, 1.27, 1.30,
    1.33, 1.37, 1.40, 1.43, 1.47, 1.50, 1.54, 1.58, 1.62, 1.65, 1.69, 1.74,
    1.78, 1.82, 1.87, 1.91, 1.96, 2.00, 2.05, 2.10, 2.15, 2.21, 2.26, 2.32,
    2.37, 2.43, 2.49, 2.55, 2.61, 2.67, 2.74, 2.80, 2.87, 2.94, 3.01, 3.09,
    3.16, 3.24, 3.32, 3.40, 3.48, 3.57, 3.65, 3.74, 3.83, 3.92, 4.02, 4.12,
    4.22, 4.32, 4.42, 4.53, 4.64, 4.75, 4.87, 4.99, 5.11, 5.23, 5.36, 5.49,
    5.62, 5.76, 5.90, 6.04, 6.19, 6.34, 6.49, 6.65, 6.81, 6.98, 7.15, 7.32,
    7.50, 7.68, 7.87, 8.06, 8.25, 8.45, 8.66, 8.87, 9.09, 9.31, 9.53, 9.76,
)

SERIES = {"e24": E24, "e96": E96}


def nearest(value: float, series: str) -> float:
    """Snap ``value`` to the closest series member in the log sense."""
    if not value > 0:
        raise ValueError(f"component value must be positive, got {value}")
    table = SERIES[series.lower()]
    decade = math.floor(math.log10(value))
    best = None
    for d in (decade - 1, decade, decade + 1):
        scale = 10.0**d
        for m in table:
            cand = m * scale
            dist = abs(math.log(value / cand))
            if best is None or dist < best[0]:
                best = (dist, cand)
    # Re-derive through the mantissa string to drop 1e-16 scaling dust.
    return float(f"{best[1]:.3g}")
