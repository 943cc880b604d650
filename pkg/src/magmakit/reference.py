"""Published Cayley tables of small ``L_n(m)`` loops, transcribed verbatim.

Each table is a header row of element names followed by one row per element;
row ``i``, column ``j`` holds ``i ∘ j``.  They serve as fixed reference data
for the table-fidelity checks of the ``ln_loop`` generator.
"""

from __future__ import annotations

_RAW = {
    (5, 2): """
        e 1 2 3 4 5
        e 1 2 3 4 5
        1 e 3 5 2 4
        2 5 e 4 1 3
        3 4 1 e 5 2
        4 3 5 2 e 1
        5 2 4 1 3 e
    """,
    (5, 3): """
        e 1 2 3 4 5
        e 1 2 3 4 5
        1 e 4 2 5 3
        2 4 e 5 3 1
        3 2 5 e 1 4
        4 5 3 1 e 2
        5 3 1 4 2 e
    """,
    (5, 4): """
        e 1 2 3 4 5
        e 1 2 3 4 5
        1 e 5 4 3 2
        2 3 e 1 5 4
        3 5 4 e 2 1
        4 2 1 5 e 3
        5 4 3 2 1 e
    """,
    (7, 4): """
        e 1 2 3 4 5 6 7
        e 1 2 3 4 5 6 7
        1 e 5 2 6 3 7 4
        2 5 e 6 3 7 4 1
        3 2 6 e 7 4 1 5
        4 6 3 7 e 1 5 2
        5 3 7 4 1 e 2 6
        6 7 4 1 5 2 e 3
        7 4 1 5 2 6 3 e
    """,
    (7, 3): """
        e 1 2 3 4 5 6 7
        e 1 2 3 4 5 6 7
        1 e 4 7 3 6 2 5
        2 6 e 5 1 4 7 3
        3 4 7 e 6 2 5 1
        4 2 5 1 e 7 3 6
        5 7 3 6 2 e 1 4
        6 5 1 4 7 3 e 2
        7 3 6 2 5 1 4 e
    """,
}


def _parse(text: str) -> tuple[list[str], list[list[str]]]:
    lines = [ln.split() for ln in text.strip().splitlines()]
    return lines[0], lines[1:]


#: ``(n, m) -> (header, rows)``
REFERENCE_LN_TABLES: dict[tuple[int, int], tuple[list[str], list[list[str]]]] = {
    key: _parse(raw) for key, raw in _RAW.items()
}
