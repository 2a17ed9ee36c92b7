"""Abstract finite semirings as a pair of Cayley tables.

Congruences are partitions compatible with both operations; simplicity is
decided by closing every principal congruence and checking it is total.
The closure is the hot loop of the whole package, so it works on flat
lists with an inlined union-find.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    AddNotAssociative,
    AddNotCommutative,
    BadZero,
    LeftDistFail,
    MulNotAssociative,
    NotCompatible,
    ParseError,
    RightDistFail,
    SizeLimit,
    ZeroNotAbsorbing,
)
from .lattice import validate_lattice


class FiniteSemiring:
    __slots__ = ("n", "add", "mul", "zero", "name", "_mul_t")

    def __init__(self, n, add, mul, zero, name=None):
        self.n = n
        self.add = add
        self.mul = mul
        self.zero = zero
        self.name = name
        self._mul_t = None

    @property
    def mul_t(self):
        """Columns of the multiplication table (x -> a*x profiles)."""
        if self._mul_t is None:
            self._mul_t = tuple(tuple(row[x] for row in self.mul) for x in range(self.n))
        return self._mul_t

    def __eq__(self, other):
        if not isinstance(other, FiniteSemiring):
            return NotImplemented
        return (self.n, self.zero, self.add, self.mul) == (
            other.n, other.zero, other.add, other.mul)

    def __hash__(self):
        return hash((self.n, self.zero, self.add, self.mul))

    def __repr__(self):
        label = self.name or f"semiring<{self.n}>"
        return f"FiniteSemiring({label}, n={self.n})"


@dataclass(frozen=True)
class Congruence:
    """Partition given as a block id per element, ids numbered by first use."""

    n: int
    blocks: tuple

    @classmethod
    def from_parents(cls, parents):
        n = len(parents)
        seen = {}
        blocks = []
        for x in range(n):
            r = x
            while parents[r] != r:
                r = parents[r]
            if r not in seen:
                seen[r] = len(seen)
            blocks.append(seen[r])
        return cls(n, tuple(blocks))

    @property
    def num_blocks(self):
        return max(self.blocks) + 1 if self.n else 0

    def is_identity(self):
        return self.num_blocks == self.n

    def is_total(self):
        return self.num_blocks <= 1

    def same(self, x, y):
        return self.blocks[x] == self.blocks[y]


def identity_congruence(n):
    return Congruence(n, tuple(range(n)))


def total_congruence(n):
    return Congruence(n, tuple(0 for _ in range(n)))


def validate_semiring(add, mul, zero, name=None):
    """Check all semiring axioms; raise the named axiom error on failure."""
    add = tuple(tuple(row) for row in add)
    mul = tuple(tuple(row) for row in mul)
    n = len(add)
    if len(mul) != n:
        raise ParseError("add and mul tables disagree in size")
    for t in (add, mul):
        for i, row in enumerate(t):
            if len(row) != n:
                raise ParseError(f"row {i} has length {len(row)}, expected {n}")
            for v in row:
                if not (0 <= v < n):
                    raise ParseError(f"entry {v} out of range in row {i}")
    if not (0 <= zero < n):
        raise BadZero("zero index out of range", (zero,))
    for x in range(n):
        if add[zero][x] != x:
            raise BadZero("zero + x != x", (x,))
        if mul[zero][x] != zero or mul[x][zero] != zero:
            raise ZeroNotAbsorbing("zero * x != zero", (x,))
        for y in range(x + 1, n):
            if add[x][y] != add[y][x]:
                raise AddNotCommutative("x + y != y + x", (x, y))
    for x in range(n):
        for y in range(n):
            axy = add[x][y]
            mxy = mul[x][y]
            for z in range(n):
                if add[axy][z] != add[x][add[y][z]]:
                    raise AddNotAssociative("(x+y)+z != x+(y+z)", (x, y, z))
                if mul[mxy][z] != mul[x][mul[y][z]]:
                    raise MulNotAssociative("(xy)z != x(yz)", (x, y, z))
                if mul[x][add[y][z]] != add[mxy][mul[x][z]]:
                    raise LeftDistFail("x(y+z) != xy+xz", (x, y, z))
                if mul[add[x][y]][z] != add[mul[x][z]][mul[y][z]]:
                    raise RightDistFail("(x+y)z != xz+yz", (x, y, z))
    return FiniteSemiring(n, add, mul, zero, name)


# ---------------------------------------------------------------------------
# congruence closure


def _principal_parents(r, x, y, stop_at_total=False):
    """Union-find closure of the least congruence merging x and y."""
    n = r.n
    parent = list(range(n))
    rank = [0] * n
    add = r.add
    mul = r.mul
    mul_t = r.mul_t
    blocks = n
    stack = [(x, y)]
    while stack:
        u, v = stack.pop()
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        if u == v:
            continue
        if rank[u] < rank[v]:
            u, v = v, u
        parent[v] = u
        if rank[u] == rank[v]:
            rank[u] += 1
        blocks -= 1
        if blocks == 1 and stop_at_total:
            return None
        stack.extend(zip(add[u], add[v]))
        stack.extend(zip(mul[u], mul[v]))
        stack.extend(zip(mul_t[u], mul_t[v]))
    return parent


def principal_congruence(r, x, y):
    """Least congruence identifying x and y."""
    parents = _principal_parents(r, x, y)
    return Congruence.from_parents(parents)


def is_congruence_simple(r):
    """True iff every principal congruence on a distinct pair is total."""
    for x in range(r.n):
        for y in range(x + 1, r.n):
            if _principal_parents(r, x, y, stop_at_total=True) is not None:
                return False
    return True


def is_semiring_congruence(r, cong):
    if cong.n != r.n:
        return False
    blk = cong.blocks
    add, mul = r.add, r.mul
    for x in range(r.n):
        for y in range(x + 1, r.n):
            if blk[x] != blk[y]:
                continue
            for a in range(r.n):
                if blk[add[a][x]] != blk[add[a][y]]:
                    return False
                if blk[mul[a][x]] != blk[mul[a][y]]:
                    return False
                if blk[mul[x][a]] != blk[mul[y][a]]:
                    return False
    return True


def quotient_semiring(r, cong, name=None):
    """Semiring on the blocks of a congruence; raises NotCompatible."""
    if not is_semiring_congruence(r, cong):
        raise NotCompatible("partition is not a semiring congruence")
    k = cong.num_blocks
    reps = [None] * k
    for x in range(r.n):
        if reps[cong.blocks[x]] is None:
            reps[cong.blocks[x]] = x
    add = tuple(tuple(cong.blocks[r.add[a][b]] for b in reps) for a in reps)
    mul = tuple(tuple(cong.blocks[r.mul[a][b]] for b in reps) for a in reps)
    return validate_semiring(add, mul, cong.blocks[r.zero], name=name)


# ---------------------------------------------------------------------------
# structure


@dataclass(frozen=True)
class StructureFlags:
    is_ring: bool
    add_idempotent: bool
    has_one: bool
    one: object
    trivial_mul: bool
    absorbing: object


def find_one(r):
    for e in range(r.n):
        if all(r.mul[e][x] == x and r.mul[x][e] == x for x in range(r.n)):
            return e
    return None


def find_absorbing(r):
    for z in range(r.n):
        if all(r.add[z][x] == z for x in range(r.n)):
            return z
    return None


def structure_flags(r):
    is_ring = all(any(r.add[x][y] == r.zero for y in range(r.n)) for x in range(r.n))
    add_idem = all(r.add[x][x] == x for x in range(r.n))
    trivial = all(r.mul[x][y] == r.zero for x in range(r.n) for y in range(r.n))
    one = find_one(r)
    return StructureFlags(
        is_ring=is_ring,
        add_idempotent=add_idem,
        has_one=one is not None,
        one=one,
        trivial_mul=trivial,
        absorbing=find_absorbing(r),
    )


def center(r):
    """Elements commuting multiplicatively with everything."""
    return [x for x in range(r.n)
            if all(r.mul[x][a] == r.mul[a][x] for a in range(r.n))]


def additive_reachability_congruence(r):
    """Relate x ~ y when a multiple of each lands in the other's additive
    translate R + element.  Always a congruence; on a congruence-simple
    semiring it is the identity (idempotent addition) or total (a ring).
    """
    n = r.n
    add = r.add
    orbits = []
    for x in range(n):
        seen = set()
        cur = r.zero
        while cur not in seen:
            seen.add(cur)
            cur = add[cur][x]
        orbits.append(seen)
    translate = [frozenset(add[a][x] for a in range(n)) for x in range(n)]
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in range(n):
        for y in range(x + 1, n):
            if orbits[x] & translate[y] and orbits[y] & translate[x]:
                parent[find(x)] = find(y)
    return Congruence.from_parents(parent)


def recover_monoid(r):
    """Rebuild the underlying lattice from an additively idempotent semiring
    with an additively absorbing element z, as the submonoid {r*z}.

    Returns None when no absorbing element exists or addition is not
    idempotent.
    """
    z = find_absorbing(r)
    if z is None:
        return None
    if any(r.add[x][x] != x for x in range(r.n)):
        return None
    members = sorted({r.mul[x][z] for x in range(r.n)})
    index = {m: i for i, m in enumerate(members)}
    table = tuple(tuple(index[r.add[a][b]] for b in members) for a in members)
    return validate_lattice(table, zero=index[r.zero])


def opposite(r):
    """Same addition, reversed multiplication."""
    mul = tuple(tuple(r.mul[y][x] for y in range(r.n)) for x in range(r.n))
    name = None if r.name is None else r.name + "^op"
    return FiniteSemiring(r.n, r.add, mul, r.zero, name)


def product_semiring(r1, r2):
    """Direct product; element (x, y) is encoded as x * r2.n + y."""
    n = r1.n * r2.n
    def enc(x, y):
        return x * r2.n + y
    add = [[0] * n for _ in range(n)]
    mul = [[0] * n for _ in range(n)]
    for x1, y1 in itertools.product(range(r1.n), range(r2.n)):
        for x2, y2 in itertools.product(range(r1.n), range(r2.n)):
            add[enc(x1, y1)][enc(x2, y2)] = enc(r1.add[x1][x2], r2.add[y1][y2])
            mul[enc(x1, y1)][enc(x2, y2)] = enc(r1.mul[x1][x2], r2.mul[y1][y2])
    return validate_semiring(add, mul, enc(r1.zero, r2.zero))


def restrict(r, subset, name=None):
    """Subsemiring on a closed subset containing zero, reindexed sorted."""
    members = sorted(subset)
    index = {m: i for i, m in enumerate(members)}
    add = tuple(tuple(index[r.add[a][b]] for b in members) for a in members)
    mul = tuple(tuple(index[r.mul[a][b]] for b in members) for a in members)
    return FiniteSemiring(len(members), add, mul, index[r.zero], name)


def close_subset(r, seed):
    """Least subset containing seed and zero, closed under + and *."""
    members = set(seed)
    members.add(r.zero)
    work = list(members)
    while work:
        x = work.pop()
        for y in list(members):
            for z in (r.add[x][y], r.mul[x][y], r.mul[y][x]):
                if z not in members:
                    members.add(z)
                    work.append(z)
    return frozenset(members)


def subsemirings(r, max_count=100000):
    """All subsets containing zero closed under both operations.

    Walks the closed-set lattice upward from the closure of {zero};
    deterministic order by (size, member tuple).
    """
    base = close_subset(r, ())
    seen = {base}
    stack = [base]
    while stack:
        s = stack.pop()
        for x in range(r.n):
            if x in s:
                continue
            t = close_subset(r, s | {x})
            if t not in seen:
                if len(seen) >= max_count:
                    raise SizeLimit(f"more than {max_count} subsemirings")
                seen.add(t)
                stack.append(t)
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


# ---------------------------------------------------------------------------
# isomorphism and anti-isomorphism


def _joint_colors(rings):
    """Color refinement run jointly so colors are comparable across rings."""
    cols = []
    for r in rings:
        cols.append([(x == r.zero, r.mul[x][x] == x, r.mul[x][x] == r.zero,
                      r.add[x][x] == x) for x in range(r.n)])
    while True:
        sigs = []
        for r, col in zip(rings, cols):
            cur = []
            for x in range(r.n):
                profile = sorted(
                    (col[y], col[r.add[x][y]], col[r.mul[x][y]], col[r.mul[y][x]])
                    for y in range(r.n)
                )
                cur.append((col[x], tuple(profile)))
            sigs.append(cur)
        ranks = {s: i for i, s in enumerate(sorted({s for cur in sigs for s in cur}))}
        new = [[ranks[s] for s in cur] for cur in sigs]
        stable = all(
            (old[x] == old[y]) == (cur[x] == cur[y])
            for old, cur in zip(cols, new)
            for x in range(len(cur)) for y in range(len(cur))
        )
        shared = len({c for cur in cols for c in cur}) == len({c for cur in new for c in cur})
        if stable and shared:
            return new
        cols = new


def _generating_sequence(r, colors):
    """Small generating set, preferring elements from rare color classes."""
    class_size = {}
    for c in colors:
        class_size[c] = class_size.get(c, 0) + 1
    members = close_subset(r, ())
    gens = []
    while len(members) < r.n:
        rest = [x for x in range(r.n) if x not in members]
        g = min(rest, key=lambda x: (class_size[colors[x]], x))
        gens.append(g)
        members = close_subset(r, members | {g})
    return gens


def semiring_iso(r1, r2):
    """Backtracking isomorphism search with color-refinement pruning.

    Returns the image array of a zero-preserving bijection respecting both
    operations, or None.
    """
    if r1.n != r2.n:
        return None
    n = r1.n
    c1, c2 = _joint_colors((r1, r2))
    if sorted(c1) != sorted(c2):
        return None
    gens = _generating_sequence(r1, c1)
    fwd = [None] * n
    bwd = [None] * n
    add1, mul1 = r1.add, r1.mul
    add2, mul2 = r2.add, r2.mul

    def assign(u, v, trail):
        """Record u -> v and propagate through both operations."""
        stack = [(u, v)]
        while stack:
            a, b = stack.pop()
            if fwd[a] is not None:
                if fwd[a] != b:
                    return False
                continue
            if bwd[b] is not None or c1[a] != c2[b]:
                return False
            fwd[a] = b
            bwd[b] = a
            trail.append((a, b))
            for w in range(n):
                fw = fwd[w]
                if fw is None:
                    continue
                stack.append((add1[a][w], add2[b][fw]))
                stack.append((mul1[a][w], mul2[b][fw]))
                stack.append((mul1[w][a], mul2[fw][b]))
        return True

    def undo(trail, mark):
        while len(trail) > mark:
            a, b = trail.pop()
            fwd[a] = None
            bwd[b] = None

    trail = []
    if not assign(r1.zero, r2.zero, trail):
        return None

    def rec(k):
        if k == len(gens):
            return all(v is not None for v in fwd)
        g = gens[k]
        if fwd[g] is not None:
            return rec(k + 1)
        for v in range(n):
            if bwd[v] is not None or c2[v] != c1[g]:
                continue
            mark = len(trail)
            if assign(g, v, trail) and rec(k + 1):
                return True
            undo(trail, mark)
        return False

    if not rec(0):
        return None
    return tuple(fwd)


def semiring_anti_iso(r1, r2):
    """Additive iso reversing multiplication, found as iso onto opposite."""
    return semiring_iso(r1, opposite(r2))


def check_iso(r1, r2, mapping, anti=False):
    if sorted(mapping) != list(range(r1.n)) or mapping[r1.zero] != r2.zero:
        return False
    for x in range(r1.n):
        for y in range(r1.n):
            if mapping[r1.add[x][y]] != r2.add[mapping[x]][mapping[y]]:
                return False
            image = r2.mul[mapping[y]][mapping[x]] if anti else r2.mul[mapping[x]][mapping[y]]
            if mapping[r1.mul[x][y]] != image:
                return False
    return True


# ---------------------------------------------------------------------------
# text format ".sr": n, optional name, zero, add rows, blank line, mul rows


def parse_sr(text):
    lines = text.splitlines()
    pos = 0

    def next_line(allow_blank=False):
        nonlocal pos
        while pos < len(lines) and not lines[pos].strip():
            if allow_blank:
                break
            pos += 1
        if pos >= len(lines):
            raise ParseError("unexpected end of file", len(lines))
        pos += 1
        return lines[pos - 1], pos

    line, ln = next_line()
    parts = line.split()
    if len(parts) != 2 or parts[0] != "n":
        raise ParseError("expected 'n <count>'", ln)
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError(f"bad count {parts[1]!r}", ln)
    name = None
    line, ln = next_line()
    if line.split() and line.split()[0] == "name":
        name = line.split(None, 1)[1] if len(line.split(None, 1)) > 1 else ""
        line, ln = next_line()
    parts = line.split()
    if len(parts) != 2 or parts[0] != "zero":
        raise ParseError("expected 'zero <index>'", ln)
    try:
        zero = int(parts[1])
    except ValueError:
        raise ParseError(f"bad zero index {parts[1]!r}", ln)

    def read_table():
        rows = []
        while len(rows) < n:
            line, ln = next_line()
            parts = line.split()
            if len(parts) != n:
                raise ParseError(f"expected {n} entries, got {len(parts)}", ln)
            try:
                rows.append(tuple(int(p) for p in parts))
            except ValueError:
                raise ParseError("non-integer table entry", ln)
        return tuple(rows)

    add = read_table()
    mul = read_table()
    return validate_semiring(add, mul, zero, name=name)


def serialize_sr(r):
    lines = [f"n {r.n}"]
    if r.name:
        lines.append(f"name {r.name}")
    lines.append(f"zero {r.zero}")
    for row in r.add:
        lines.append(" ".join(str(v) for v in row))
    lines.append("")
    for row in r.mul:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"
