"""Finite meet-semilattices carrying an abelian group of automorphisms.

An algebra stores a carrier of labels, an index-valued meet table, and one
carrier permutation per group generator; a full group element acts as the
product of generator permutations raised to its coordinates.  Storing
generator permutations only is what lets an infinite cyclic factor act on a
finite carrier: only the finite image of the action matters.

All values are immutable after construction; every operation here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .groups import (
    Element,
    GroupSpec,
    elementary,
    identity,
    mul,
)

Perm = tuple[int, ...]

# A unary term in normal form: x |-> meet of g(x) over a nonempty set of
# group elements.  Meets of terms are set unions, translation multiplies
# every member.
UnaryTerm = frozenset[Element]


class ShapeError(ValueError):
    """Tables are not well-shaped (wrong sizes, bad indices, non-permutations)."""


class NotGeneratedError(ValueError):
    """An element expected to generate the algebra does not."""


class CarrierLimitError(ValueError):
    """Carrier exceeds the configured size limit of an enumeration."""


def perm_identity(n: int) -> Perm:
    return tuple(range(n))


def perm_compose(p: Perm, q: Perm) -> Perm:
    """(p . q)(x) = p(q(x))."""
    return tuple(p[q[x]] for x in range(len(p)))


def perm_inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_order(p: Perm) -> int:
    seen = [False] * len(p)
    n = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        n = lcm(n, length)
    return n


def perm_power(p: Perm, e: int) -> Perm:
    e %= perm_order(p)
    out = perm_identity(len(p))
    for _ in range(e):
        out = perm_compose(p, out)
    return out


@dataclass(frozen=True)
class FSemilattice:
    """Carrier labels, meet table of indices, and one permutation per generator."""

    group: GroupSpec
    carrier: tuple[str, ...]
    meet: tuple[tuple[int, ...], ...]
    action: tuple[Perm, ...]

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "meet", tuple(tuple(row) for row in self.meet))
        object.__setattr__(self, "action", tuple(tuple(p) for p in self.action))

    @property
    def size(self) -> int:
        return len(self.carrier)

    def index(self, label: str) -> int:
        try:
            return self.carrier.index(label)
        except ValueError:
            raise KeyError(f"no carrier element labeled {label!r}") from None

    def label(self, x: int) -> str:
        return self.carrier[x]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: str | None = None
    witness: tuple[int, ...] | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "valid": self.ok,
            "axiom": self.axiom,
            "witness": list(self.witness) if self.witness is not None else None,
            "detail": self.detail,
        }


def check_shape(algebra: FSemilattice) -> None:
    """Structural well-formedness; raised errors are distinct from axiom failures."""
    n = algebra.size
    if n == 0:
        raise ShapeError("empty carrier")
    if len(set(algebra.carrier)) != n:
        raise ShapeError("carrier labels are not unique")
    if len(algebra.meet) != n or any(len(row) != n for row in algebra.meet):
        raise ShapeError("meet table is not square of carrier size")
    for row in algebra.meet:
        for v in row:
            if not 0 <= v < n:
                raise ShapeError(f"meet entry {v} out of range")
    if len(algebra.action) != algebra.group.rank:
        raise ShapeError("need one action permutation per group generator")
    for p in algebra.action:
        if len(p) != n or sorted(p) != list(range(n)):
            raise ShapeError("action table is not a carrier permutation")


def validate_axioms(algebra: FSemilattice) -> ValidationReport:
    """Check the defining identities, returning the first violation with a witness.

    Checked in order: idempotence, commutativity, and associativity of the
    meet; each generator permutation a meet-automorphism; generator
    permutations pairwise commuting; the permutation of a finite factor of
    order k having order dividing k.  The last two make exponentiation of
    generator permutations a genuine group action.
    """
    check_shape(algebra)
    n = algebra.size
    meet = algebra.meet
    lab = algebra.label
    for x in range(n):
        if meet[x][x] != x:
            return ValidationReport(False, "meet-idempotence", (x,), f"{lab(x)} ^ {lab(x)} != {lab(x)}")
    for x in range(n):
        for y in range(x + 1, n):
            if meet[x][y] != meet[y][x]:
                return ValidationReport(
                    False, "meet-commutativity", (x, y), f"{lab(x)} ^ {lab(y)} != {lab(y)} ^ {lab(x)}"
                )
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if meet[meet[x][y]][z] != meet[x][meet[y][z]]:
                    return ValidationReport(
                        False,
                        "meet-associativity",
                        (x, y, z),
                        f"({lab(x)} ^ {lab(y)}) ^ {lab(z)} != {lab(x)} ^ ({lab(y)} ^ {lab(z)})",
                    )
    for i, p in enumerate(algebra.action):
        for x in range(n):
            for y in range(x, n):
                if p[meet[x][y]] != meet[p[x]][p[y]]:
                    return ValidationReport(
                        False,
                        "action-automorphism",
                        (i, x, y),
                        f"g{i}({lab(x)} ^ {lab(y)}) != g{i}({lab(x)}) ^ g{i}({lab(y)})",
                    )
    for i in range(len(algebra.action)):
        for j in range(i + 1, len(algebra.action)):
            p, q = algebra.action[i], algebra.action[j]
            for x in range(n):
                if p[q[x]] != q[p[x]]:
                    return ValidationReport(
                        False,
                        "action-commutation",
                        (i, j, x),
                        f"g{i}(g{j}({lab(x)})) != g{j}(g{i}({lab(x)}))",
                    )
    for i, (p, k) in enumerate(zip(algebra.action, algebra.group.orders)):
        if k >= 1:
            pk = perm_identity(n)
            for _ in range(k):
                pk = perm_compose(p, pk)
            for x in range(n):
                if pk[x] != x:
                    return ValidationReport(
                        False,
                        "action-order",
                        (i, x),
                        f"g{i} applied {k} times moves {lab(x)}; factor order {k}",
                    )
    return ValidationReport(True)


def is_valid(algebra: FSemilattice) -> bool:
    return validate_axioms(algebra).ok


def act(algebra: FSemilattice, g: Element, x: int) -> int:
    """Action of a full group element: generator permutations raised to its coordinates."""
    if len(g) != algebra.group.rank:
        raise ValueError("coordinate length mismatch")
    y = x
    for p, c in zip(algebra.action, g):
        for _ in range(c % perm_order(p)):
            y = p[y]
    return y


def element_action(algebra: FSemilattice, g: Element) -> Perm:
    """The full carrier permutation induced by one group element."""
    out = perm_identity(algebra.size)
    for p, c in zip(algebra.action, g):
        out = perm_compose(perm_power(p, c), out)
    return out


def zero(algebra: FSemilattice) -> int:
    """The least element: the meet of the whole carrier."""
    x = 0
    for y in range(1, algebra.size):
        x = algebra.meet[x][y]
    return x


def leq(algebra: FSemilattice, x: int, y: int) -> bool:
    return algebra.meet[x][y] == x


def atoms(algebra: FSemilattice) -> tuple[int, ...]:
    """Elements covering the least element."""
    z = zero(algebra)
    out = []
    for x in range(algebra.size):
        if x == z:
            continue
        if all(not (leq(algebra, y, x) and y not in (x, z)) for y in range(algebra.size)):
            out.append(x)
    return tuple(out)


def cover_edges(algebra: FSemilattice) -> tuple[tuple[int, int], ...]:
    """Edges (lower, upper) of the covering relation of the induced order."""
    n = algebra.size
    edges = []
    for x in range(n):
        for y in range(n):
            if x == y or not leq(algebra, x, y):
                continue
            if any(z not in (x, y) and leq(algebra, x, z) and leq(algebra, z, y) for z in range(n)):
                continue
            edges.append((x, y))
    return tuple(edges)


def _generator_moves(algebra: FSemilattice) -> list[tuple[Element, Perm]]:
    """Generator and inverse-generator permutations with their group elements."""
    moves = []
    for i, p in enumerate(algebra.action):
        moves.append((elementary(algebra.group, i, 1), p))
        moves.append((elementary(algebra.group, i, -1), perm_inverse(p)))
    return moves


def subalgebra_generated(algebra: FSemilattice, seed: int) -> tuple[FSemilattice, tuple[int, ...]]:
    """Least subset containing ``seed`` closed under meet and all generator
    permutations and their inverses, returned as an algebra plus the index
    embedding into the parent."""
    perms = [p for _, p in _generator_moves(algebra)]
    members = {seed}
    queue = [seed]
    while queue:
        x = queue.pop()
        for p in perms:
            y = p[x]
            if y not in members:
                members.add(y)
                queue.append(y)
        for y in list(members):
            z = algebra.meet[x][y]
            if z not in members:
                members.add(z)
                queue.append(z)
    embedding = tuple(sorted(members))
    pos = {v: i for i, v in enumerate(embedding)}
    sub = FSemilattice(
        group=algebra.group,
        carrier=tuple(algebra.carrier[v] for v in embedding),
        meet=tuple(tuple(pos[algebra.meet[u][v]] for v in embedding) for u in embedding),
        action=tuple(tuple(pos[p[v]] for v in embedding) for p in algebra.action),
    )
    return sub, embedding


def generates(algebra: FSemilattice, x: int) -> bool:
    _, embedding = subalgebra_generated(algebra, x)
    return len(embedding) == algebra.size


@dataclass(frozen=True)
class Homomorphism:
    source: FSemilattice
    target: FSemilattice
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    @property
    def is_bijective(self) -> bool:
        return len(self.source.carrier) == len(self.target.carrier) and sorted(self.map) == list(
            range(len(self.target.carrier))
        )


def is_homomorphism(hom: Homomorphism) -> bool:
    """Check meet and generator-action preservation over the whole source."""
    src, dst, f = hom.source, hom.target, hom.map
    if src.group != dst.group or len(f) != src.size:
        return False
    n = src.size
    for x in range(n):
        for y in range(x, n):
            if f[src.meet[x][y]] != dst.meet[f[x]][f[y]]:
                return False
    for p, q in zip(src.action, dst.action):
        for x in range(n):
            if f[p[x]] != q[f[x]]:
                return False
    return True


@dataclass(frozen=True)
class HomExtendResult:
    hom: Homomorphism | None
    conflict: tuple[UnaryTerm, UnaryTerm] | None

    @property
    def ok(self) -> bool:
        return self.hom is not None


def hom_extend(
    source: FSemilattice, a: int, target: FSemilattice, b: int
) -> HomExtendResult:
    """Try to extend ``a -> b`` to the canonical homomorphism t(a) -> t(b).

    The relation {(a, b)} is closed under generator application (both
    directions) and meet-pairing while tracking, for each reached source
    element, one unary term that produced it.  If two derivations of the same
    source element disagree on the target side, the map is not well-defined
    and the two terms form the returned witness: they agree at ``a`` but not
    at ``b``.  Otherwise the closure is the unique homomorphism sending
    ``a`` to ``b``, and it is surjective onto the subalgebra generated by ``b``.
    """
    if source.group != target.group:
        raise ValueError("algebras live over different groups")
    if not generates(source, a):
        raise NotGeneratedError(f"element {source.label(a)!r} does not generate the source")
    group = source.group
    id_el = identity(group)
    moves = [
        (g, p, q)
        for (g, p), (_, q) in zip(_generator_moves(source), _generator_moves(target))
    ]
    image: dict[int, tuple[int, UnaryTerm]] = {a: (b, frozenset({id_el}))}
    processed: list[int] = []
    queue = [a]

    def record(x2: int, y2: int, term: UnaryTerm):
        known = image.get(x2)
        if known is None:
            image[x2] = (y2, term)
            queue.append(x2)
            return None
        if known[0] != y2:
            return (known[1], term)
        return None

    while queue:
        x = queue.pop(0)
        y, term_x = image[x]
        for g, p, q in moves:
            translated = frozenset(mul(group, g, h) for h in term_x)
            clash = record(p[x], q[y], translated)
            if clash:
                return HomExtendResult(None, clash)
        for x1 in processed + [x]:
            y1, term_1 = image[x1]
            clash = record(source.meet[x][x1], target.meet[y][y1], term_x | term_1)
            if clash:
                return HomExtendResult(None, clash)
        processed.append(x)
    mapping = tuple(image[x][0] for x in range(source.size))
    return HomExtendResult(Homomorphism(source, target, mapping), None)


def is_isomorphic_1gen(
    first: FSemilattice, a: int, second: FSemilattice, b: int
) -> tuple[bool, Homomorphism | None]:
    """Isomorphism test for algebras generated by ``a`` and ``b``: both canonical
    extensions must be well-defined; the forward one is returned as witness."""
    if first.size != second.size:
        return False, None
    forward = hom_extend(first, a, second, b)
    if not forward.ok:
        return False, None
    backward = hom_extend(second, b, first, a)
    if not backward.ok:
        return False, None
    return True, forward.hom


def opposite(algebra: FSemilattice) -> FSemilattice:
    """Same semilattice with every group element acting by its inverse."""
    return FSemilattice(
        group=algebra.group,
        carrier=algebra.carrier,
        meet=algebra.meet,
        action=tuple(perm_inverse(p) for p in algebra.action),
    )


@dataclass(frozen=True)
class Congruence:
    algebra: FSemilattice
    blocks: tuple[tuple[int, ...], ...]

    @property
    def is_identity(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    @property
    def is_total(self) -> bool:
        return len(self.blocks) == 1

    def block_of(self, x: int) -> int:
        for i, b in enumerate(self.blocks):
            if x in b:
                return i
        raise KeyError(x)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


def _canonical_blocks(n: int, uf: _UnionFind) -> tuple[tuple[int, ...], ...]:
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(uf.find(x), []).append(x)
    return tuple(tuple(sorted(b)) for b in sorted(groups.values(), key=lambda b: b[0]))


def principal_congruence(algebra: FSemilattice, x: int, y: int) -> tuple[tuple[int, ...], ...]:
    """Smallest congruence identifying ``x`` and ``y``: close the merge under
    every generator permutation and one-sided meets."""
    n = algebra.size
    uf = _UnionFind(n)
    queue = [(x, y)]
    while queue:
        u, v = queue.pop()
        if not uf.union(u, v):
            continue
        for p in algebra.action:
            queue.append((p[u], p[v]))
        for c in range(n):
            queue.append((algebra.meet[u][c], algebra.meet[v][c]))
    return _canonical_blocks(n, uf)


def _join_partitions(n, first, second) -> tuple[tuple[int, ...], ...]:
    uf = _UnionFind(n)
    for blocks in (first, second):
        for block in blocks:
            for other in block[1:]:
                uf.union(block[0], other)
    return _canonical_blocks(n, uf)


def congruences(algebra: FSemilattice, limit: int = 24) -> list[Congruence]:
    """All congruences, as the join-closure of the principal ones.

    Joins of congruences are computed as partition joins, which stays inside
    the congruence lattice because compatibility with each operation survives
    unions and transitive closure.
    """
    n = algebra.size
    if n > limit:
        raise CarrierLimitError(f"carrier size {n} exceeds congruence limit {limit}")
    delta = tuple((x,) for x in range(n))
    found = {delta}
    for x in range(n):
        for y in range(x + 1, n):
            found.add(principal_congruence(algebra, x, y))
    frontier = list(found)
    while frontier:
        fresh = []
        for one in frontier:
            for two in list(found):
                joined = _join_partitions(n, one, two)
                if joined not in found:
                    found.add(joined)
                    fresh.append(joined)
        frontier = fresh
    ordered = sorted(found, key=lambda blocks: (-len(blocks), blocks))
    return [Congruence(algebra, blocks) for blocks in ordered]


def quotient(algebra: FSemilattice, cong: Congruence) -> FSemilattice:
    """Quotient algebra with congruence blocks as elements."""
    if cong.algebra != algebra:
        raise ValueError("congruence belongs to a different algebra")
    blocks = cong.blocks
    block_of = {x: i for i, b in enumerate(blocks) for x in b}
    labels = tuple("|".join(algebra.carrier[x] for x in b) for b in blocks)
    meet = tuple(
        tuple(block_of[algebra.meet[b1[0]][b2[0]]] for b2 in blocks) for b1 in blocks
    )
    action = tuple(tuple(block_of[p[b[0]]] for b in blocks) for p in algebra.action)
    return FSemilattice(group=algebra.group, carrier=labels, meet=meet, action=action)


def format_unary_term(term: UnaryTerm, var: str = "x") -> str:
    """Render a normal-form unary term in the textual grammar, e.g. ``x ^ g0^2(x)``."""

    def one(g: Element) -> str:
        out = var
        for i in reversed(range(len(g))):
            c = g[i]
            if c == 0:
                continue
            out = f"g{i}({out})" if c == 1 else f"g{i}^{c}({out})"
        return out

    return " ^ ".join(one(g) for g in sorted(term))


def algebra_to_dict(algebra: FSemilattice) -> dict:
    return {
        "group": {"orders": list(algebra.group.orders)},
        "carrier": list(algebra.carrier),
        "meet": [list(row) for row in algebra.meet],
        "action": [list(p) for p in algebra.action],
    }


def algebra_from_dict(data: dict) -> FSemilattice:
    try:
        algebra = FSemilattice(
            group=GroupSpec(tuple(data["group"]["orders"])),
            carrier=tuple(data["carrier"]),
            meet=tuple(tuple(row) for row in data["meet"]),
            action=tuple(tuple(p) for p in data["action"]),
        )
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"malformed algebra payload: {exc}") from exc
    check_shape(algebra)
    return algebra
