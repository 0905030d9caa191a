"""The addition semigroup over n atoms: elements, Cayley table, diagram.

Elements are subsets of ``{1..n}``; the empty subset is the absorbing
element ``v_abs``. Two elements combine to their union when disjoint and
non-absorbing, otherwise to ``v_abs``; in particular ``a * a = v_abs``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import CapacityExceeded, InvalidInput

DEFAULT_CAP = 12


@dataclass(frozen=True, order=True)
class SemigroupElement:
    atoms: frozenset = frozenset()

    def __post_init__(self):
        atoms = frozenset(int(a) for a in self.atoms)
        if any(a < 1 for a in atoms):
            raise InvalidInput(f"atoms are numbered from 1: {sorted(atoms)}")
        object.__setattr__(self, "atoms", atoms)

    @property
    def is_absorbing(self) -> bool:
        return not self.atoms

    @property
    def mask(self) -> int:
        return sum(1 << (a - 1) for a in self.atoms)

    @property
    def name(self) -> str:
        if not self.atoms:
            return "v_abs"
        ordered = sorted(self.atoms)
        sep = "" if ordered[-1] < 10 else "_"
        return "v" + sep.join(str(a) for a in ordered)

    def __repr__(self):
        return self.name


V_ABS = SemigroupElement()


def element(*atoms) -> SemigroupElement:
    return SemigroupElement(frozenset(atoms))


def semigroup_op(a: SemigroupElement, b: SemigroupElement) -> SemigroupElement:
    if a.is_absorbing or b.is_absorbing or a.atoms & b.atoms:
        return V_ABS
    return SemigroupElement(a.atoms | b.atoms)


def _check_n(n: int, cap: int) -> None:
    if n < 1:
        raise InvalidInput(f"need at least one atom, got n={n}")
    if n > cap:
        raise CapacityExceeded("semigroup atoms", n, cap)


def enumerate_elements(n: int, cap: int = DEFAULT_CAP) -> tuple:
    """``v_abs``, then subsets by size; each size in combination order.

    Within a size, a subset is extended only by atoms larger than its last
    one, which is the nested-loop construction read so that it yields every
    subset exactly once.
    """
    _check_n(n, cap)
    out = [V_ABS]
    for size in range(1, n + 1):
        out.extend(SemigroupElement(frozenset(c)) for c in itertools.combinations(range(1, n + 1), size))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class CayleyTable:
    """``cells[i, j]`` is the index in ``order`` of ``order[i] * order[j]``."""

    order: tuple
    cells: np.ndarray

    @property
    def n(self) -> int:
        return int(math.log2(len(self.order)))

    @property
    def size(self) -> int:
        return len(self.order)

    def cell(self, i: int, j: int) -> SemigroupElement:
        return self.order[int(self.cells[i, j])]

    def index(self, e: SemigroupElement) -> int:
        return self.order.index(e)

    def rows(self):
        """Table as nested tuples of element names."""
        names = [e.name for e in self.order]
        return tuple(tuple(names[k] for k in row) for row in self.cells.tolist())


def cayley_table(n: int, cap: int = DEFAULT_CAP) -> CayleyTable:
    order = enumerate_elements(n, cap)
    masks = np.array([e.mask for e in order], dtype=np.int64)
    lookup = np.zeros(1 << n, dtype=np.int64)
    lookup[masks] = np.arange(len(order), dtype=np.int64)
    cells = K.cayley_cells(masks, lookup)
    cells.setflags(write=False)
    return CayleyTable(order, cells)


def table_violations(t: CayleyTable) -> list:
    """Invariant scan: closure, symmetry, absorbing row/column and diagonal."""
    problems = []
    size = t.size
    cells = t.cells
    if len(t.order) != 2 ** t.n:
        problems.append(f"{len(t.order)} elements, expected {2 ** t.n}")
    if cells.shape != (size, size):
        problems.append(f"table shape {cells.shape}")
    if cells.min() < 0 or cells.max() >= size:
        problems.append("cell outside the element set")
    if not np.array_equal(cells, cells.T):
        problems.append("table is not symmetric")
    if cells[0].any() or cells[:, 0].any():
        problems.append("absorbing row/column holds a non-absorbing value")
    if np.diagonal(cells).any():
        problems.append("diagonal holds a non-absorbing value")
    return problems


def _layout(t: CayleyTable, layout: str, canvas: float = 10.0):
    size = t.size
    coords = []
    if layout == "circular":
        radius = canvas / 2 - 0.5
        for k in range(size):
            theta = 2 * math.pi * k / size
            coords.append((round(canvas / 2 + radius * math.cos(theta), 4),
                           round(canvas / 2 + radius * math.sin(theta), 4)))
    elif layout == "grid":
        cols = math.ceil(math.sqrt(size))
        step = canvas / cols
        for k in range(size):
            row, col = divmod(k, cols)
            coords.append((round(step * col + step / 2, 4), round(canvas - (step * row + step / 2), 4)))
    else:
        raise InvalidInput(f"unknown layout {layout!r}; use circular or grid")
    return coords


def product_edges(t: CayleyTable):
    """Unordered pairs ``i < j`` with a non-absorbing product, as (i, j, k)."""
    cells = t.cells
    ii, jj = np.nonzero(np.triu(cells, k=1))
    return [(int(i), int(j), int(cells[i, j])) for i, j in zip(ii, jj)]


def emit_full_csa_diagram(t: CayleyTable, layout: str = "circular") -> str:
    """Graphviz DOT for the table: one node per element, one edge per live product.

    Node positions are pinned (``pos`` with ``!``) so ``neato -n`` renders the
    same picture every run.
    """
    coords = _layout(t, layout)
    lines = [
        f"graph full_csa_{t.n} {{",
        f'  graph [layout=neato, splines=true, label="Full CSA diagram, n={t.n}"];',
        "  node [shape=circle, fontsize=10];",
    ]
    for e, (x, y) in zip(t.order, coords):
        style = ", style=filled, fillcolor=gray80" if e.is_absorbing else ""
        lines.append(f'  {e.name} [pos="{x},{y}!"{style}];')
    for i, j, k in product_edges(t):
        lines.append(f'  {t.order[i].name} -- {t.order[j].name} [label="{t.order[k].name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_svg(t: CayleyTable, layout: str = "circular", size_px: int = 800) -> str:
    """Standalone SVG of the same diagram on a fixed canvas."""
    canvas = 10.0
    scale = size_px / canvas
    coords = [(x * scale, (canvas - y) * scale) for x, y in _layout(t, layout, canvas)]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size_px}" height="{size_px}" '
           f'viewBox="0 0 {size_px} {size_px}">',
           f'<rect width="{size_px}" height="{size_px}" fill="white"/>']
    for i, j, _ in product_edges(t):
        (x1, y1), (x2, y2) = coords[i], coords[j]
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                   f'stroke="#888" stroke-width="0.6"/>')
    for e, (x, y) in zip(t.order, coords):
        fill = "#ccc" if e.is_absorbing else "#fff"
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="12" fill="{fill}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{y + 3:.2f}" font-size="8" text-anchor="middle">{e.name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
