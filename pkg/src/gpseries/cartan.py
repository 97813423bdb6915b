"""Irreducible root systems in exact rational coordinates, and their Weyl groups.

Roots are realized in the classical orthonormal coordinates (A_n inside the
sum-zero hyperplane of R^{n+1}, B_n/C_n/D_n in R^n, G_2 inside the sum-zero
hyperplane of R^3, F_4 in R^4, E_6/E_7/E_8 in R^8).  The full root list is
produced by brute-force closure of the simple roots under the simple
reflections, then checked against the classification count; nothing is
assumed.

A Weyl group element is stored as the permutation it induces on the canonical
root list.  Permutation equality is the identity criterion; reduced words are
carried as witnesses only.  The canonical root order (height, then
lexicographic coordinates) makes every downstream output reproducible
byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from . import ratlin
from .errors import EnumerationCapError, InvariantViolation, SpecError
from .ratlin import Vec, as_vec, dot, vsub, vscale

DEFAULT_CAP = 60_000

_RANK_BOUNDS = {
    "A": "n>=1",
    "B": "n>=2",
    "C": "n>=2",
    "D": "n>=3",
    "E": "n in {6,7,8}",
    "F": "n=4",
    "G": "n=2",
}

Perm = tuple[int, ...]


def _rank_ok(family: str, rank: int) -> bool:
    if family == "A":
        return rank >= 1
    if family in ("B", "C"):
        return rank >= 2
    if family == "D":
        return rank >= 3
    if family == "E":
        return rank in (6, 7, 8)
    if family == "F":
        return rank == 4
    if family == "G":
        return rank == 2
    return False


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_BOUNDS:
            raise SpecError(f"unknown family {self.family!r}; expected one of A-G")
        if not isinstance(self.rank, int) or not _rank_ok(self.family, self.rank):
            raise SpecError(
                f"rank {self.rank} invalid for family {self.family}: "
                f"requires {_RANK_BOUNDS[self.family]}"
            )

    @classmethod
    def parse(cls, label: str) -> "CartanType":
        label = label.strip()
        if len(label) < 2 or not label[1:].isdigit():
            raise SpecError(f"cannot parse Cartan label {label!r}; expected e.g. 'D6'")
        return cls(label[0].upper(), int(label[1:]))

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    def weyl_order(self) -> int:
        n = self.rank
        if self.family == "A":
            return factorial(n + 1)
        if self.family in ("B", "C"):
            return 2**n * factorial(n)
        if self.family == "D":
            return 2 ** (n - 1) * factorial(n)
        if self.family == "G":
            return 12
        if self.family == "F":
            return 1152
        return {6: 51_840, 7: 2_903_040, 8: 696_729_600}[n]

    def root_count(self) -> int:
        n = self.rank
        if self.family == "A":
            return n * (n + 1)
        if self.family in ("B", "C"):
            return 2 * n * n
        if self.family == "D":
            return 2 * n * (n - 1)
        if self.family == "G":
            return 12
        if self.family == "F":
            return 48
        return {6: 72, 7: 126, 8: 240}[n]


def _unit(n: int, i: int) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def _simple_roots(t: CartanType) -> tuple[list[Vec], int]:
    n = t.rank
    f = t.family
    if f == "A":
        dim = n + 1
        simples = [tuple(vsub(_unit(dim, i), _unit(dim, i + 1))) for i in range(n)]
        return simples, dim
    if f in ("B", "C", "D"):
        dim = n
        simples = [tuple(vsub(_unit(dim, i), _unit(dim, i + 1))) for i in range(n - 1)]
        if f == "B":
            simples.append(tuple(_unit(dim, n - 1)))
        elif f == "C":
            simples.append(tuple(vscale(Fraction(2), _unit(dim, n - 1))))
        else:
            simples.append(tuple(ratlin.vadd(_unit(dim, n - 2), _unit(dim, n - 1))))
        return simples, dim
    if f == "G":
        dim = 3
        a1 = as_vec([1, -1, 0])
        a2 = as_vec([-2, 1, 1])
        return [a1, a2], dim
    if f == "F":
        dim = 4
        return [
            as_vec([0, 1, -1, 0]),
            as_vec([0, 0, 1, -1]),
            as_vec([0, 0, 0, 1]),
            as_vec(
                [Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2)]
            ),
        ], dim
    # E family, Bourbaki coordinates inside R^8.
    dim = 8
    half = Fraction(1, 2)
    a1 = (half, -half, -half, -half, -half, -half, -half, half)
    a2 = as_vec([1, 1, 0, 0, 0, 0, 0, 0])
    chain = [
        tuple(vsub(_unit(dim, i + 1), _unit(dim, i))) for i in range(6)
    ]  # e_{i+2} - e_{i+1}
    simples = [a1, a2] + chain[: n - 2]
    return simples, dim


def reflect_vec(v: Sequence[Fraction], alpha: Sequence[Fraction]) -> Vec:
    """Reflection of v in the hyperplane orthogonal to the nonzero vector alpha."""
    aa = dot(alpha, alpha)
    c = 2 * dot(v, alpha) / aa
    return tuple(x - c * a for x, a in zip(v, alpha))


def cartan_pairing(beta: Sequence[Fraction], alpha: Sequence[Fraction]) -> Fraction:
    """The exact value 2(beta, alpha)/(alpha, alpha)."""
    aa = dot(alpha, alpha)
    if aa == 0:
        raise SpecError("pairing against the zero vector is undefined")
    return 2 * dot(beta, alpha) / aa


class RootSystem:
    """Roots of one irreducible type, with exact pairing and reflection tables.

    Immutable after construction; every method is a pure function of the
    stored data, so instances are safe to share across threads.
    """

    def __init__(self, cartan_type: CartanType):
        self.cartan_type = cartan_type
        simples, dim = _simple_roots(cartan_type)
        self.ambient_dim = dim

        roots = set(simples)
        frontier = list(simples)
        while frontier:
            new = []
            for v in frontier:
                for a in simples:
                    w = reflect_vec(v, a)
                    if w not in roots:
                        roots.add(w)
                        new.append(w)
            frontier = new
        if len(roots) != cartan_type.root_count():
            raise InvariantViolation(
                f"closure produced {len(roots)} roots for {cartan_type.label}, "
                f"expected {cartan_type.root_count()}"
            )

        # Simple-root coordinates of every root; all roots are integer
        # combinations of the simple roots.
        smat = [[simples[j][i] for j in range(len(simples))] for i in range(dim)]
        coords = {}
        for v in roots:
            c = ratlin.solve(smat, v)
            if c is None or any(x.denominator != 1 for x in c):
                raise InvariantViolation("root is not an integer combination of simples")
            coords[v] = tuple(int(x) for x in c)

        order = sorted(roots, key=lambda v: (sum(coords[v]), v))
        self.roots: tuple[Vec, ...] = tuple(order)
        self.root_index: dict[Vec, int] = {v: i for i, v in enumerate(order)}
        self.simple_indices: tuple[int, ...] = tuple(self.root_index[s] for s in simples)
        self.simple_pos: dict[int, int] = {
            ri: k for k, ri in enumerate(self.simple_indices)
        }
        self.coords: tuple[tuple[int, ...], ...] = tuple(coords[v] for v in order)
        self.height: tuple[int, ...] = tuple(sum(c) for c in self.coords)
        self.positive: tuple[bool, ...] = tuple(h > 0 for h in self.height)
        self.positives: tuple[int, ...] = tuple(
            i for i in range(len(order)) if self.positive[i]
        )
        self.neg_of: tuple[int, ...] = tuple(
            self.root_index[ratlin.vneg(v)] for v in order
        )

        n = len(order)
        pairing = []
        for i in range(n):
            row = []
            for j in range(n):
                p = cartan_pairing(order[i], order[j])
                if p.denominator != 1:
                    raise InvariantViolation("non-integral Cartan pairing")
                row.append(int(p))
            pairing.append(tuple(row))
        self.pairing_table: tuple[tuple[int, ...], ...] = tuple(pairing)

        perms = []
        for j in range(n):
            perm = []
            for i in range(n):
                img = vsub(order[i], vscale(Fraction(pairing[i][j]), order[j]))
                perm.append(self.root_index[img])
            perms.append(tuple(perm))
        self.reflection_perms: tuple[Perm, ...] = tuple(perms)

        # Gram machinery for expressing arbitrary span(Phi) vectors in the
        # simple basis, hence for applying permutations to vectors.
        gram = [[dot(a, b) for b in simples] for a in simples]
        self._gram_inv = ratlin.inverse(gram)
        self._simples_vecs = tuple(simples)

        # Fundamental coweight analogues: w_k in span(Phi) with
        # <w_k, alpha_j^vee> = delta_kj.
        cmat = [
            [Fraction(pairing[self.simple_indices[i]][self.simple_indices[j]]) for j in range(len(simples))]
            for i in range(len(simples))
        ]
        cinv = ratlin.inverse(cmat)
        weights = []
        for k in range(len(simples)):
            # Row k of the inverse Cartan matrix gives <w_k, a_j^vee> = delta_kj.
            coeff = cinv[k]
            w = ratlin.zero_vec(dim)
            for c, s in zip(coeff, simples):
                w = ratlin.vadd(w, vscale(c, s))
            weights.append(tuple(w))
        self.fundamental_weights: tuple[Vec, ...] = tuple(weights)

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def n_roots(self) -> int:
        return len(self.roots)

    def coords_of(self, v: Sequence[Fraction]) -> Vec:
        """Simple-root coordinates of a vector in span(Phi)."""
        rhs = [dot(s, v) for s in self._simples_vecs]
        return tuple(
            sum((self._gram_inv[i][j] * rhs[j] for j in range(len(rhs))), Fraction(0))
            for i in range(len(rhs))
        )

    def in_span(self, v: Sequence[Fraction]) -> bool:
        c = self.coords_of(v)
        rebuilt = ratlin.zero_vec(self.ambient_dim)
        for x, s in zip(c, self._simples_vecs):
            rebuilt = ratlin.vadd(rebuilt, vscale(x, s))
        return tuple(rebuilt) == tuple(Fraction(x) for x in v)

    def apply_perm(self, perm: Perm, v: Sequence[Fraction]) -> Vec:
        """Apply the linear map behind a root permutation to any span vector."""
        c = self.coords_of(v)
        out = ratlin.zero_vec(self.ambient_dim)
        for x, si in zip(c, self.simple_indices):
            if x:
                out = ratlin.vadd(out, vscale(x, self.roots[perm[si]]))
        return out


def build_root_system(t: CartanType | str) -> RootSystem:
    if isinstance(t, str):
        t = CartanType.parse(t)
    return RootSystem(t)


def compose(p: Perm, q: Perm) -> Perm:
    """Composition p∘q: apply q first, then p."""
    return tuple(map(p.__getitem__, q))


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


class WeylElement:
    """An orthogonal-map-induced permutation of the root list.

    Equality and hashing are by permutation alone; ``word`` (a sequence of
    0-based simple-root positions, multiplied left to right) is a witness.
    """

    __slots__ = ("perm", "word")

    def __init__(self, perm: Perm, word: tuple[int, ...] | None = None):
        self.perm = perm
        self.word = word

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        if self.word is None:
            return f"WeylElement(<{len(self.perm)} roots>)"
        w = "*".join(f"s{i}" for i in self.word) or "e"
        return f"WeylElement({w})"

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    def length_witness(self) -> int | None:
        return None if self.word is None else len(self.word)


def identity_element(rs: RootSystem) -> WeylElement:
    return WeylElement(tuple(range(rs.n_roots)), ())


def reflection(rs: RootSystem, root_index: int) -> WeylElement:
    """The reflection attached to one root, as a root permutation."""
    if not 0 <= root_index < rs.n_roots:
        raise SpecError(f"root index {root_index} out of range")
    word = None
    if root_index in rs.simple_pos:
        word = (rs.simple_pos[root_index],)
    return WeylElement(rs.reflection_perms[root_index], word)


class WeylGroup:
    """A fully enumerated Weyl group with canonical element order.

    Elements are sorted by (word length, permutation); BFS guarantees every
    stored word is reduced.
    """

    def __init__(self, rs: RootSystem, elements: list[WeylElement]):
        self.rs = rs
        self.elements: tuple[WeylElement, ...] = tuple(
            sorted(elements, key=lambda w: (len(w.word), w.perm))
        )
        self.by_perm: dict[Perm, WeylElement] = {w.perm: w for w in self.elements}
        self.identity = self.by_perm[tuple(range(rs.n_roots))]
        self.simple_elements = tuple(
            self.by_perm[rs.reflection_perms[i]] for i in rs.simple_indices
        )

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def element(self, perm: Perm) -> WeylElement:
        return self.by_perm[perm]

    def mul(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self.by_perm[compose(a.perm, b.perm)]

    def inv(self, a: WeylElement) -> WeylElement:
        return self.by_perm[invert(a.perm)]


def generate_weyl(
    rs: RootSystem,
    cap: int = DEFAULT_CAP,
    cache_dir: str | None = None,
) -> WeylGroup:
    """Enumerate the full Weyl group by BFS over the simple reflections.

    Raises EnumerationCapError before doing any work if the classification
    order exceeds ``cap``.  With ``cache_dir`` set, a checksummed on-disk
    cache is consulted first and corrupt entries fall back to regeneration.
    """
    order = rs.cartan_type.weyl_order()
    if order > cap:
        raise EnumerationCapError(rs.cartan_type.label, order, cap)

    if cache_dir is not None:
        from . import cache as _cache

        cached = _cache.load(cache_dir, rs)
        if cached is not None:
            return WeylGroup(rs, cached)

    elements = _bfs_enumerate(rs, rs.simple_indices)
    if len(elements) != order:
        raise InvariantViolation(
            f"BFS produced {len(elements)} elements for {rs.cartan_type.label}, "
            f"classification order is {order}"
        )
    wg = WeylGroup(rs, elements)
    if cache_dir is not None:
        from . import cache as _cache

        _cache.store(cache_dir, rs, wg)
    return wg


def _bfs_enumerate(rs: RootSystem, gen_root_indices: Sequence[int]) -> list[WeylElement]:
    gens = [(k, rs.reflection_perms[i]) for k, i in enumerate(gen_root_indices)]
    ident = tuple(range(rs.n_roots))
    words: dict[Perm, tuple[int, ...]] = {ident: ()}
    queue = [ident]
    while queue:
        nxt = []
        for perm in queue:
            base = words[perm]
            for k, g in gens:
                new = compose(perm, g)
                if new not in words:
                    words[new] = base + (k,)
                    nxt.append(new)
        queue = nxt
    return [WeylElement(p, w) for p, w in words.items()]


def _subsystem_simples(rs: RootSystem, pos_indices: Sequence[int]) -> list[int]:
    """Simple system of a closed subsystem, for the inherited positivity:
    the positives that are not sums of two positives of the subsystem."""
    pos = list(pos_indices)
    vecs = {rs.roots[i] for i in pos}
    simples = []
    for i in pos:
        vi = rs.roots[i]
        if not any(vsub(vi, rs.roots[j]) in vecs for j in pos if j != i):
            simples.append(i)
    return simples


def longest_in_subsystem(rs: RootSystem, pos_indices: Sequence[int]) -> Perm:
    """Permutation of the longest element of the reflection subgroup of a
    closed subsystem, i.e. the unique element sending every given positive
    to a negative.  Computed by exact dominance descent."""
    if not pos_indices:
        return tuple(range(rs.n_roots))
    simples = _subsystem_simples(rs, pos_indices)
    x = ratlin.zero_vec(rs.ambient_dim)
    for i in pos_indices:
        x = ratlin.vadd(x, rs.roots[i])
    perm = tuple(range(rs.n_roots))
    steps = 0
    limit = len(pos_indices)
    while True:
        delta = next((i for i in simples if cartan_pairing(x, rs.roots[i]) > 0), None)
        if delta is None:
            break
        x = reflect_vec(x, rs.roots[delta])
        perm = compose(rs.reflection_perms[delta], perm)
        steps += 1
        if steps > limit:
            raise InvariantViolation("longest-element descent exceeded the positive count")
    if steps != limit:
        raise InvariantViolation(
            f"longest-element descent took {steps} steps, expected {limit}"
        )
    return perm


def longest_element(rs: RootSystem, theta: Iterable[int]) -> WeylElement:
    """Longest element of the parabolic subgroup attached to a subset of the
    simple roots (given as 0-based positions into Delta)."""
    theta = sorted(set(theta))
    for t in theta:
        if not 0 <= t < rs.rank:
            raise SpecError(f"simple-root position {t} out of range for rank {rs.rank}")
    if not theta:
        return identity_element(rs)
    tset = set(theta)
    sub_pos = [
        i
        for i in rs.positives
        if all(c == 0 or k in tset for k, c in enumerate(rs.coords[i]))
    ]
    # Descend over the theta-simples only; collected letters give a reduced word.
    x = ratlin.zero_vec(rs.ambient_dim)
    for i in sub_pos:
        x = ratlin.vadd(x, rs.roots[i])
    perm = tuple(range(rs.n_roots))
    letters: list[int] = []
    while True:
        pos = next(
            (
                k
                for k in theta
                if cartan_pairing(x, rs.roots[rs.simple_indices[k]]) > 0
            ),
            None,
        )
        if pos is None:
            break
        ri = rs.simple_indices[pos]
        x = reflect_vec(x, rs.roots[ri])
        perm = compose(rs.reflection_perms[ri], perm)
        letters.append(pos)
        if len(letters) > len(sub_pos):
            raise InvariantViolation("parabolic longest-element descent did not terminate")
    if len(letters) != len(sub_pos):
        raise InvariantViolation("parabolic longest element has wrong length")
    return WeylElement(perm, tuple(reversed(letters)))
