"""How close 1/2 I + K comes to losing invertibility as a wedge opens up.

For each opening angle the smallest singular value of the Mellin symbol on
the line Re z = 1/2 is printed next to the closed form 1/2 - max |m(xi)|,
where m(z) = sin(z (pi - theta)) / (2 sin(pi z)) peaks at xi = 0.

Run with ``python demos/wedge_angles.py``.
"""

import math

import numpy as np

from layerpot.mellin import invertibility_scan, symbol_on_line, wedge_double_layer_kernel

grid = np.linspace(-40.0, 40.0, 4001)
print(f"{'theta/pi':>9} {'scan':>12} {'closed form':>12}")
for frac in (0.1, 0.25, 0.5, 0.75, 0.9, 1.1, 1.5, 1.9):
    theta = frac * math.pi
    scan = invertibility_scan(symbol_on_line(wedge_double_layer_kernel(theta), 0.5, grid))
    exact = 0.5 - abs(math.sin(0.5 * (math.pi - theta))) / 2
    print(f"{frac:9.2f} {scan.min_singular_value:12.9f} {exact:12.9f}")
