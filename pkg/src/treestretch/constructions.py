"""Closed-form optimal spanning trees for the supported graph families.

Each family has a known minimum stretch value and an explicit tree achieving
it. ``sigma_formula`` returns the value, the ``*_tree`` builders return the
tree, and ``optimal_construction`` bundles both with a stretch certificate,
verifying on the way out that the built tree really attains the formula.

Degenerate inputs (families whose graph is already a tree, such as complete
bipartite with a side of size one) are reported with ``degenerate=True`` and
stretch 1 (0 for a single vertex), since the only spanning tree is the graph
itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .convex import construct_tree
from .families import (
    Chain,
    Complete,
    CompleteBipartite,
    CompleteMultipartite,
    Cycle,
    Diamond,
    FamilySpec,
    GeneralizedConvex,
    Petersen,
    RectGrid,
    Split,
    TriGrid,
    TriRectGrid,
    Wheel,
    chain_instance,
    make,
)
from .graphs import (
    DomainError,
    Graph,
    ParameterError,
    SpanningTree,
    StretchCertificate,
    ValidationError,
    spanning_tree,
    spanning_tree_from_pairs,
    stretch,
)
from .planar import embed_grid, face_levels


@dataclass(frozen=True)
class FormulaResult:
    """A family's optimal stretch with a tree and certificate attaining it."""

    spec: FamilySpec
    sigma: int
    tree: SpanningTree
    certificate: StretchCertificate
    degenerate: bool


def star_tree(g: Graph, center: int) -> SpanningTree:
    """Spanning star; the center must be adjacent to every other vertex."""
    pairs = []
    for v in range(g.n):
        if v == center:
            continue
        if not g.has_edge(center, v):
            raise ValidationError(f"vertex {v} is not adjacent to the center {center}")
        pairs.append((center, v))
    return spanning_tree_from_pairs(g, pairs)


def double_star_tree(g: Graph, x: int, y: int) -> SpanningTree:
    """Two adjacent centers; every other vertex attaches to x if possible, else y."""
    if not g.has_edge(x, y):
        raise ValidationError(f"centers {x} and {y} are not adjacent")
    pairs = [(x, y)]
    for v in range(g.n):
        if v in (x, y):
            continue
        if g.has_edge(v, x):
            pairs.append((x, v))
        elif g.has_edge(v, y):
            pairs.append((y, v))
        else:
            raise ValidationError(f"vertex {v} is adjacent to neither center")
    return spanning_tree_from_pairs(g, pairs)


def multipartite_tree(spec: CompleteMultipartite) -> SpanningTree:
    """Optimal tree for a complete multipartite graph with three or more parts.

    Part sizes must be sorted ascending (the construction roots at the
    smallest part). A singleton smallest part gives a star (stretch 2);
    otherwise a double star over the first vertices of the two smallest
    parts gives stretch 3, which is optimal.
    """
    if len(spec.parts) < 3:
        raise ParameterError("use the bipartite construction for two parts")
    if any(a > b for a, b in zip(spec.parts, spec.parts[1:])):
        raise ParameterError("part sizes must be sorted ascending")
    g = make(spec).graph
    if spec.parts[0] == 1:
        return star_tree(g, 0)
    return double_star_tree(g, 0, spec.parts[0])


@dataclass(frozen=True)
class SplitClassification:
    """Stretch class of a split graph, with evidence.

    ``sigma`` is 2 when some clique vertex ``witness`` sees every Y-vertex of
    degree at least two; otherwise 3, and ``refutations`` names for each
    clique vertex an independent vertex that is non-adjacent yet non-pendant.
    """

    sigma: int
    witness: int | None
    refutations: Mapping[int, int]


def _check_split_partition(g: Graph, clique: Sequence[int], independent: Sequence[int]) -> None:
    cs, ys = list(clique), list(independent)
    if sorted(cs + ys) != list(range(g.n)):
        raise ValidationError("clique and independent sets must partition the vertices")
    for a_pos in range(len(cs)):
        for b_pos in range(a_pos + 1, len(cs)):
            if not g.has_edge(cs[a_pos], cs[b_pos]):
                raise ValidationError(f"clique vertices {cs[a_pos]} and {cs[b_pos]} are not adjacent")
    for a_pos in range(len(ys)):
        for b_pos in range(a_pos + 1, len(ys)):
            if g.has_edge(ys[a_pos], ys[b_pos]):
                raise ValidationError(f"independent vertices {ys[a_pos]} and {ys[b_pos]} are adjacent")
    for y in ys:
        if g.degree(y) == 0:
            raise ValidationError(f"vertex {y} has no neighbor, the graph is disconnected")


def classify_split(g: Graph, clique: Sequence[int], independent: Sequence[int]) -> SplitClassification:
    """Decide whether a split graph has minimum stretch 2 or 3.

    The minimum is 2 exactly when some clique vertex x0 is adjacent to every
    independent vertex of degree at least two; every independent vertex
    missed by x0 is then a pendant and hangs off its unique neighbor without
    creating long cycles. Trees are outside the dichotomy and are refused.
    """
    _check_split_partition(g, clique, independent)
    if g.m == g.n - 1:
        raise DomainError("the graph is a tree (stretch 1); the 2-or-3 dichotomy does not apply")
    refutations: dict[int, int] = {}
    witness = None
    for x0 in sorted(clique):
        bad = None
        for y in sorted(independent):
            if not g.has_edge(x0, y) and g.degree(y) >= 2:
                bad = y
                break
        if bad is None:
            witness = x0
            break
        refutations[x0] = bad
    if witness is not None:
        return SplitClassification(sigma=2, witness=witness, refutations={})
    return SplitClassification(sigma=3, witness=None, refutations=refutations)


def split_tree(g: Graph, clique: Sequence[int], independent: Sequence[int]) -> SpanningTree:
    """Optimal tree for a split graph (stretch 2 or 3 per the classification)."""
    cls = classify_split(g, clique, independent)
    if cls.sigma == 2:
        x0 = cls.witness
        pairs = [(x0, v) for v in sorted(clique) if v != x0]
        for y in sorted(independent):
            if g.has_edge(x0, y):
                pairs.append((x0, y))
            else:
                pairs.append((min(g.adjacency[y]), y))
        return spanning_tree_from_pairs(g, pairs)
    x0 = min(clique)
    pairs = [(x0, v) for v in sorted(clique) if v != x0]
    pairs += [(min(g.adjacency[y]), y) for y in sorted(independent)]
    return spanning_tree_from_pairs(g, pairs)


# Found once by exhaustive search over all 2000 spanning trees (the solver
# returns this tree deterministically); no spanning tree does better than 4.
_PETERSEN_TREE_PAIRS = (
    (0, 1), (0, 4), (0, 5), (1, 2), (1, 6), (2, 3), (2, 7), (6, 8), (6, 9),
)


def petersen_tree() -> SpanningTree:
    """An optimal (stretch 4) spanning tree of the Petersen graph."""
    g = make(Petersen()).graph
    tree = spanning_tree_from_pairs(g, _PETERSEN_TREE_PAIRS)
    assert stretch(g, tree).stretch == 4
    return tree


def rect_grid_tree(spec: RectGrid) -> SpanningTree:
    """All vertical edges plus the horizontal row closest to the middle.

    Row (m-1)//2 keeps both escape distances at most floor(m/2), so the worst
    fundamental cycle has length 2*floor(m/2) + 2 and the stretch meets the
    face-level lower bound 2*floor(m/2) + 1.
    """
    m, n = spec.m, spec.n
    g = make(spec).graph
    r = (m - 1) // 2
    pairs = []
    for j in range(n):
        pairs += [(i * n + j, (i + 1) * n + j) for i in range(m - 1)]
    pairs += [(r * n + j, r * n + j + 1) for j in range(n - 1)]
    return spanning_tree_from_pairs(g, pairs)


def _tri_anchor(spec: TriGrid) -> tuple[int, int, str]:
    """Deepest face of the triangular grid, first in (x, y, up-before-down) order."""
    plane = embed_grid(spec)
    levels = face_levels(plane)
    n = spec.n
    kinds: list[tuple[int, int, str]] = []
    for x in range(n + 1):
        for y in range(n + 1 - x):
            if x + y <= n - 1:
                kinds.append((x, y, "up"))
            if x + y <= n - 2:
                kinds.append((x, y, "down"))
    lam = levels.lambda_max
    for f, kind in enumerate(kinds):
        if levels.level[f] == lam:
            return kind
    raise ValidationError("no face attains the maximum level")  # unreachable


def tri_grid_tree(spec: TriGrid) -> SpanningTree:
    """Optimal tree for the triangular grid, routed around a deepest face.

    The deepest face pins a full horizontal line and a full vertical line
    through its corner; columns below the horizontal line, rows above it, and
    the two leftover corner regions are filled so every escape route to the
    crossing point stays short. The stretch is ceil(2n/3) + 1.
    """
    n = spec.n
    g = make(spec).graph
    coords = [(x, y) for x in range(n + 1) for y in range(n + 1 - x)]
    index = {c: i for i, c in enumerate(coords)}
    ax, ay, kind = _tri_anchor(spec)
    if kind == "up":
        y_h, x_v = ay, ax
    else:
        y_h, x_v = ay + 1, ax + 1

    pairs: set[tuple[int, int]] = set()

    def add(a: tuple[int, int], b: tuple[int, int]) -> None:
        u, v = index[a], index[b]
        pairs.add((u, v) if u < v else (v, u))

    for x in range(n - y_h):
        add((x, y_h), (x + 1, y_h))
    for y in range(n - x_v):
        add((x_v, y), (x_v, y + 1))
    for y in range(y_h):
        for x in range(n - y_h + 1):
            add((x, y), (x, y + 1))
    for y in range(y_h + 1, n - x_v + 1):
        for x in range(n - y):
            add((x, y), (x + 1, y))
    for y in range(y_h):
        for x in range(n - y_h, n - y):
            add((x, y), (x + 1, y))
    for x in range(x_v):
        for y in range(n - x_v, n - x):
            add((x, y), (x, y + 1))
    return spanning_tree_from_pairs(g, sorted(pairs))


def tri_rect_grid_tree(spec: TriRectGrid) -> SpanningTree:
    """Optimal tree for the triangulated rectangular grid (stretch m).

    All vertical edges are kept. For odd m the middle horizontal row links the
    columns; for even m the slant just below the middle does, which balances
    the two escape distances that an odd middle row cannot.
    """
    m, n = spec.m, spec.n
    g = make(spec).graph

    def vid(x: int, y: int) -> int:
        return y * n + x

    pairs = []
    for x in range(n):
        pairs += [(vid(x, y), vid(x, y + 1)) for y in range(m - 1)]
    if m % 2 == 1:
        mid = (m - 1) // 2
        pairs += [(vid(x, mid), vid(x + 1, mid)) for x in range(n - 1)]
    else:
        half = m // 2
        pairs += [(vid(x, half), vid(x + 1, half - 1)) for x in range(n - 1)]
    return spanning_tree_from_pairs(g, pairs)


def sigma_formula(spec: FamilySpec) -> int:
    """Closed-form minimum stretch of a family instance.

    Degenerate instances whose graph is a tree give 1 (or 0 for a single
    vertex), matching the stretch of the only spanning tree.
    """
    if isinstance(spec, Complete):
        if spec.n == 1:
            return 0
        return 1 if spec.n == 2 else 2
    if isinstance(spec, Cycle):
        return spec.n - 1
    if isinstance(spec, (Wheel, Diamond)):
        return 2
    if isinstance(spec, CompleteBipartite):
        if spec.m == 1 and spec.n == 1:
            return 1
        return 1 if min(spec.m, spec.n) == 1 else 3
    if isinstance(spec, CompleteMultipartite):
        if len(spec.parts) == 2:
            return sigma_formula(CompleteBipartite(spec.parts[0], spec.parts[1]))
        return 2 if min(spec.parts) == 1 else 3
    if isinstance(spec, Petersen):
        return 4
    if isinstance(spec, Split):
        fam = make(spec)
        g = fam.graph
        if g.m == g.n - 1:
            return 1
        return classify_split(g, fam.meta["clique"], fam.meta["independent"]).sigma
    if isinstance(spec, Chain):
        g = make(spec).graph
        return 1 if g.m == g.n - 1 else 3
    if isinstance(spec, GeneralizedConvex):
        g = spec.instance.graph
        return 1 if g.m == g.n - 1 else 3
    if isinstance(spec, RectGrid):
        return 2 * (spec.m // 2) + 1
    if isinstance(spec, TriGrid):
        return (2 * spec.n + 2) // 3 + 1
    if isinstance(spec, TriRectGrid):
        return spec.m
    raise ParameterError(f"no stretch formula for {spec!r}")


def _build_tree(spec: FamilySpec, g: Graph) -> SpanningTree:
    if g.m == g.n - 1:
        return spanning_tree(g, range(g.m))
    if isinstance(spec, Complete):
        return star_tree(g, 0)
    if isinstance(spec, Cycle):
        return spanning_tree_from_pairs(g, [(i, i + 1) for i in range(spec.n - 1)])
    if isinstance(spec, (Wheel, Diamond)):
        return star_tree(g, 0)
    if isinstance(spec, CompleteBipartite):
        return double_star_tree(g, 0, spec.m)
    if isinstance(spec, CompleteMultipartite):
        if len(spec.parts) == 2:
            return double_star_tree(g, 0, spec.parts[0])
        return multipartite_tree(spec)
    if isinstance(spec, Petersen):
        return petersen_tree()
    if isinstance(spec, Split):
        fam = make(spec)
        return split_tree(g, fam.meta["clique"], fam.meta["independent"])
    if isinstance(spec, Chain):
        return construct_tree(chain_instance(spec))
    if isinstance(spec, GeneralizedConvex):
        return construct_tree(spec.instance)
    if isinstance(spec, RectGrid):
        return rect_grid_tree(spec)
    if isinstance(spec, TriGrid):
        return tri_grid_tree(spec)
    if isinstance(spec, TriRectGrid):
        return tri_rect_grid_tree(spec)
    raise ParameterError(f"no construction for {spec!r}")


def optimal_construction(spec: FamilySpec) -> FormulaResult:
    """The formula value plus an explicit tree attaining it, verified."""
    g = make(spec).graph
    sigma = sigma_formula(spec)
    tree = _build_tree(spec, g)
    cert = stretch(g, tree)
    if cert.stretch != sigma:
        raise ValidationError(
            f"construction for {spec!r} has stretch {cert.stretch}, formula says {sigma}"
        )
    return FormulaResult(
        spec=spec,
        sigma=sigma,
        tree=tree,
        certificate=cert,
        degenerate=g.m == g.n - 1,
    )
