"""Endomorphism semirings of finite lattices and their dense subsemirings.

An endomorphism is a join- and zero-preserving self-map, stored as its
image tuple.  End(M) is a semiring under pointwise join and composition.
The elementary maps (zero below a, constant b elsewhere) generate the
least dense subsemiring; the dense subsemirings form an interval between
that closure and End(M), enumerated by a closed-set walk.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError, SizeLimit
from .lattice import FiniteLattice
from .semiring import FiniteSemiring

END_SIZE_LIMIT = 20000
SR_BASE_LIMIT = 512


def is_endomorphism(lat, image):
    """True iff the map preserves the zero and all pairwise joins."""
    if len(image) != lat.n or any(not 0 <= v < lat.n for v in image):
        return False
    if image[lat.zero] != lat.zero:
        return False
    join = lat.join
    for x in range(lat.n):
        for y in range(x + 1, lat.n):
            if image[join[x][y]] != join[image[x]][image[y]]:
                return False
    return True


def endomorphisms(lat, max_count=None):
    """All endomorphisms as lex-sorted image tuples.

    Walks the elements in a linear extension; values at joins of earlier
    elements are forced, so branching happens only at join-irreducibles.
    """
    n = lat.n
    join = lat.join
    order = sorted(range(n), key=lambda x: (bin(lat.down[x]).count("1"), x))
    decomp = [[] for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            z = join[x][y]
            if z != x and z != y:
                decomp[z].append((x, y))
    below = [[y for y in range(n) if y != x and lat.leq(y, x)] for x in range(n)]
    results = []
    img = [None] * n

    def rec(k):
        if k == n:
            results.append(tuple(img))
            if max_count is not None and len(results) > max_count:
                raise SizeLimit(f"more than {max_count} endomorphisms")
            return
        z = order[k]
        if z == lat.zero:
            img[z] = lat.zero
            rec(k + 1)
            img[z] = None
            return
        pairs = decomp[z]
        if pairs:
            x0, y0 = pairs[0]
            v = join[img[x0]][img[y0]]
            for x, y in pairs[1:]:
                if join[img[x]][img[y]] != v:
                    return
            for w in below[z]:
                if join[img[w]][v] != v:
                    return
            img[z] = v
            rec(k + 1)
            img[z] = None
        else:
            lower = lat.zero
            for w in below[z]:
                lower = join[lower][img[w]]
            for v in range(n):
                if join[lower][v] == v:
                    img[z] = v
                    rec(k + 1)
            img[z] = None

    rec(0)
    return sorted(results)


def identity_map(lat):
    return tuple(range(lat.n))


def zero_map(lat):
    return tuple(lat.zero for _ in range(lat.n))


def compose(f, g):
    """f after g."""
    return tuple(f[v] for v in g)


def pointwise_join(lat, f, g):
    join = lat.join
    return tuple(join[a][b] for a, b in zip(f, g))


def elementary(lat, a, b):
    """The map sending x to zero when x <= a and to b otherwise."""
    return tuple(lat.zero if lat.leq(x, a) else b for x in range(lat.n))


def elementary_maps(lat):
    """The distinct elementary maps, lex sorted."""
    return sorted({elementary(lat, a, b) for a in range(lat.n) for b in range(lat.n)})


@dataclass
class EndoSubsemiring:
    """A set of endomorphisms closed under pointwise join and composition,
    containing the zero map."""

    lattice: FiniteLattice
    members: frozenset
    _dense: object = field(default=None, repr=False, compare=False)

    @property
    def size(self):
        return len(self.members)

    def sorted_members(self):
        return sorted(self.members)

    def is_closed(self):
        ms = self.members
        if zero_map(self.lattice) not in ms:
            return False
        for f in ms:
            for g in ms:
                if pointwise_join(self.lattice, f, g) not in ms:
                    return False
                if compose(f, g) not in ms:
                    return False
        return True

    def to_semiring(self, name=None):
        members = self.sorted_members()
        index = {m: i for i, m in enumerate(members)}
        lat = self.lattice
        add = tuple(
            tuple(index[pointwise_join(lat, f, g)] for g in members) for f in members
        )
        mul = tuple(tuple(index[compose(f, g)] for g in members) for f in members)
        return FiniteSemiring(len(members), add, mul, index[zero_map(lat)], name)


def is_dense(sub):
    """True iff the subsemiring contains every elementary map."""
    if sub._dense is None:
        sub._dense = all(e in sub.members for e in elementary_maps(sub.lattice))
    return sub._dense


def end_semiring(lat, max_size=END_SIZE_LIMIT):
    """(End(M) as a FiniteSemiring, lex-sorted member tuples)."""
    members = endomorphisms(lat, max_count=max_size)
    name = None if lat.name is None else f"End({lat.name})"
    sub = EndoSubsemiring(lat, frozenset(members))
    return sub.to_semiring(name=name), tuple(members)


def _closure(lat, seed, max_size):
    members = set(seed)
    members.add(zero_map(lat))
    work = list(members)
    join = lat.join
    while work:
        f = work.pop()
        for g in list(members):
            for h in (
                tuple(join[a][b] for a, b in zip(f, g)),
                tuple(f[v] for v in g),
                tuple(g[v] for v in f),
            ):
                if h not in members:
                    if len(members) >= max_size:
                        raise SizeLimit(f"closure exceeds {max_size} elements")
                    members.add(h)
                    work.append(h)
    return frozenset(members)


def dense_closure(lat, max_size=END_SIZE_LIMIT):
    """Least dense subsemiring: the closure of the elementary maps."""
    members = _closure(lat, elementary_maps(lat), max_size)
    return EndoSubsemiring(lat, members, _dense=True)


def enumerate_sr(lat, max_end=SR_BASE_LIMIT, max_families=100000):
    """All dense subsemirings of End(M), i.e. all closed sets between the
    closure of the elementary maps and the full endomorphism semiring.

    Deterministic order: ascending (size, sorted member list).
    """
    all_endos = endomorphisms(lat, max_count=max_end)
    base = dense_closure(lat, max_size=max_end).members
    seen = {base}
    stack = [base]
    while stack:
        s = stack.pop()
        for f in all_endos:
            if f in s:
                continue
            t = _closure(lat, s | {f}, len(all_endos))
            if t not in seen:
                if len(seen) >= max_families:
                    raise SizeLimit(f"more than {max_families} dense subsemirings")
                seen.add(t)
                stack.append(t)
    families = sorted(seen, key=lambda s: (len(s), sorted(s)))
    return [EndoSubsemiring(lat, s, _dense=True) for s in families]


def transpose(lat, f):
    """Adjoint endomorphism of the dual lattice: a maps to the join of all
    x with f(x) <= a.  Reverses composition and preserves pointwise joins
    taken in the dual."""
    join = lat.join
    out = []
    for a in range(lat.n):
        acc = lat.zero
        for x in range(lat.n):
            if lat.leq(f[x], a):
                acc = join[acc][x]
        out.append(acc)
    return tuple(out)


def iso_to_dense_subsemiring(r, max_end=SR_BASE_LIMIT):
    """Decide whether a finite semiring is isomorphic to a dense subsemiring
    of the endomorphism semiring of some finite idempotent commutative
    monoid, and return (monoid, member) as a witness, else None.

    Only the monoid rebuilt from the additively absorbing element can work,
    because an isomorphism of dense subsemirings forces an isomorphism of
    the underlying monoids, so the search space is just that one family.
    """
    from .semiring import recover_monoid, semiring_iso

    lat = recover_monoid(r)
    if lat is None:
        return None
    for fam in enumerate_sr(lat, max_end=max_end):
        if fam.size != r.n:
            continue
        mapping = semiring_iso(r, fam.to_semiring())
        if mapping is not None:
            return lat, fam
    return None


def identity_is_elementary_sum(lat):
    """Whether the identity is the pointwise join of all elementary maps
    lying below it.  Holds exactly when the dense subsemiring is unique."""
    ident = identity_map(lat)
    acc = zero_map(lat)
    join = lat.join
    for a in range(lat.n):
        for b in range(lat.n):
            e = elementary(lat, a, b)
            if all(join[e[x]][x] == x for x in range(lat.n)):
                acc = pointwise_join(lat, acc, e)
    return acc == ident


# ---------------------------------------------------------------------------
# text format ".srs": lattice reference, then one member per line


def parse_srs(text):
    lines = text.splitlines()
    pos = 0
    while pos < len(lines) and not lines[pos].strip():
        pos += 1
    if pos >= len(lines):
        raise ParseError("unexpected end of file", len(lines))
    parts = lines[pos].split()
    if len(parts) != 2 or parts[0] != "lattice":
        raise ParseError("expected 'lattice <name>'", pos + 1)
    lattice_name = parts[1]
    members = []
    width = None
    for i in range(pos + 1, len(lines)):
        if not lines[i].strip():
            continue
        entries = lines[i].split()
        if width is None:
            width = len(entries)
        elif len(entries) != width:
            raise ParseError(f"expected {width} entries, got {len(entries)}", i + 1)
        try:
            members.append(tuple(int(p) for p in entries))
        except ValueError:
            raise ParseError("non-integer image entry", i + 1)
    if not members:
        raise ParseError("no members listed", len(lines))
    return lattice_name, members


def load_srs(lattice_name, members, lat):
    if lat.name != lattice_name:
        raise ParseError(f"lattice {lat.name!r} does not match reference {lattice_name!r}")
    for m in members:
        if not is_endomorphism(lat, m):
            raise ParseError(f"member {m} is not an endomorphism of {lattice_name}")
    sub = EndoSubsemiring(lat, frozenset(members))
    return sub


def serialize_srs(sub):
    name = sub.lattice.name or "unnamed"
    lines = [f"lattice {name}"]
    for m in sub.sorted_members():
        lines.append(" ".join(str(v) for v in m))
    return "\n".join(lines) + "\n"
