"""
Closed-form CBC values for rings and rectangular grids under unit demand
"""
from __future__ import annotations

from math import comb

from cdsma.errors import InvalidParameter


def ring_cbc_closed_form(N: int, d: int) -> float:
    """CBC of a node ``d`` hops from the target on an N-node ring.

    Odd rings count the node's own path; the even-ring expression does not,
    so on even rings it sits exactly one below the enumerated value.
    """
    if N < 3:
        raise InvalidParameter(f'ring needs at least 3 nodes, got {N}')
    if not 1 <= d <= N // 2:
        raise InvalidParameter(f'distance {d} outside [1, {N // 2}] for a ring of {N}')
    if N % 2 == 0:
        return max((N - 1) / 2 - d, 0.0)
    return max((N + 1) / 2 - d, 0.0)


def grid_cbc_closed_form(M: int, N: int, u: tuple[int, int], t: tuple[int, int]) -> float:
    """CBC of grid position ``u = (a, b)`` towards ``t = (k, l)`` on an M x N lattice.

    Positions are 1-based ``(row, column)``. Each source ``(i, j)`` whose
    Manhattan route to ``t`` can pass ``u`` contributes the fraction of its
    monotone lattice paths that do.
    """
    a, b = u
    k, l = t
    for name, (row, col) in (('u', u), ('t', t)):
        if not (1 <= row <= M and 1 <= col <= N):
            raise InvalidParameter(f'{name}={(row, col)} outside a {M}x{N} grid')
    if u == t:
        raise InvalidParameter('u and t must differ')

    via_u_to_t = comb(abs(l - b) + abs(k - a), abs(k - a))
    tail = abs(l - b) + abs(k - a)
    total = 0.0
    for i in range(1, M + 1):
        for j in range(1, N + 1):
            head = abs(b - j) + abs(a - i)
            span = abs(l - j) + abs(k - i)
            if span != head + tail:
                continue
            through = comb(head, abs(a - i)) * via_u_to_t
            total += through / comb(span, abs(k - i))
    return total
