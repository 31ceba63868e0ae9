"""Finite algebras on {0..n-1} with dense operation tables.

Tables are stored flat: an arity-k table is a tuple of length n**k indexed
by base-n positional encoding with the leftmost argument most significant.
The same encoding fixes tuple indexing in power algebras.
"""

from itertools import product

DEFAULT_CAP = 1 << 24


class AlgebraError(ValueError):
    pass


class CapExceeded(AlgebraError):
    """A search or enumeration outgrew its configured cap."""


class Signature:
    def __init__(self, symbols):
        self.symbols = tuple((str(name), int(ar)) for name, ar in symbols)
        names = [name for name, _ in self.symbols]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate symbol names in signature")
        self.arities = dict(self.symbols)

    def arity(self, name):
        return self.arities.get(name)

    def names(self):
        return [name for name, _ in self.symbols]

    def __eq__(self, other):
        return isinstance(other, Signature) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return "Signature(%r)" % (self.symbols,)


GROUP_SIGNATURE = Signature([("mul", 2), ("inv", 1), ("e", 0)])


def _flatten(nested, arity, size):
    """Flatten a nested table (k-deep lists) to the flat tuple layout."""
    if arity == 0:
        if isinstance(nested, (list, tuple)):
            raise AlgebraError("arity-0 table must be a bare integer")
        return (int(nested),)
    flat = []

    def walk(node, depth):
        if depth == arity:
            flat.append(int(node))
            return
        if len(node) != size:
            raise AlgebraError("table row has length %d, expected %d" % (len(node), size))
        for child in node:
            walk(child, depth + 1)

    walk(nested, 0)
    return tuple(flat)


def _unflatten(flat, arity, size):
    if arity == 0:
        return flat[0]

    def build(depth, base):
        if depth == arity:
            return flat[base]
        stride = size ** (arity - depth - 1)
        return [build(depth + 1, base + i * stride) for i in range(size)]

    return build(0, 0)


class FiniteAlgebra:
    def __init__(self, size, signature, tables, name=None):
        """tables: dict symbol -> flat tuple (len size**arity) or nested lists."""
        self.size = int(size)
        if self.size <= 0:
            raise AlgebraError("algebra size must be positive")
        self.signature = signature
        self.name = name
        self.tables = {}
        for sym, ar in signature.symbols:
            if sym not in tables:
                raise AlgebraError("missing table for symbol %r" % sym)
            tab = tables[sym]
            if isinstance(tab, tuple) and (ar == 0 or not isinstance(tab[0], (list, tuple))):
                flat = tuple(int(v) for v in tab)
            else:
                flat = _flatten(tab, ar, self.size)
            if len(flat) != self.size ** ar:
                raise AlgebraError("table for %r has %d entries, expected %d"
                                   % (sym, len(flat), self.size ** ar))
            for v in flat:
                if not 0 <= v < self.size:
                    raise AlgebraError("table entry %d for %r outside universe" % (v, sym))
            self.tables[sym] = flat

    def op(self, sym, *args):
        tab = self.tables[sym]
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return tab[idx]

    def apply(self, sym, args):
        tab = self.tables[sym]
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return tab[idx]

    def nested_table(self, sym):
        return _unflatten(self.tables[sym], self.signature.arity(sym), self.size)

    def elements(self):
        return range(self.size)

    def constants(self):
        return [self.tables[sym][0] for sym, ar in self.signature.symbols if ar == 0]

    def __repr__(self):
        return "FiniteAlgebra(%s, n=%d)" % (self.name or "?", self.size)


def closure(generators, ops):
    """Least set containing generators closed under ops.

    ops is a list of (arity, fn) pairs; fn maps an argument tuple to an
    element.  Nullary ops are applied once.  Returns elements in discovery
    order (generators first, sorted).
    """
    elems = sorted(set(generators))
    seen = set(elems)
    for ar, fn in ops:
        if ar == 0:
            v = fn(())
            if v not in seen:
                seen.add(v)
                elems.append(v)
    frontier = list(elems)
    while frontier:
        new = []
        old = elems[: len(elems) - len(frontier)]
        for ar, fn in ops:
            if ar == 0:
                continue
            # tuples using at least one frontier element: first frontier
            # occurrence at position i, older elements before it.
            for i in range(ar):
                pools = [old] * i + [frontier] + [elems] * (ar - i - 1)
                if any(not p for p in pools):
                    continue
                for args in product(*pools):
                    v = fn(args)
                    if v not in seen:
                        seen.add(v)
                        new.append(v)
        elems.extend(new)
        frontier = new
    return elems


def subalgebra_generate(alg, gens):
    """Least subuniverse of alg containing gens (plus all constants)."""
    for g in gens:
        if not 0 <= g < alg.size:
            raise AlgebraError("generator %d outside universe" % g)
    n = alg.size
    ops = []
    for sym, ar in alg.signature.symbols:
        tab = alg.tables[sym]
        if ar == 0:
            ops.append((0, lambda args, t=tab: t[0]))
        elif ar == 1:
            ops.append((1, lambda args, t=tab: t[args[0]]))
        elif ar == 2:
            ops.append((2, lambda args, t=tab, n=n: t[args[0] * n + args[1]]))
        else:
            def fn(args, t=tab, n=n):
                idx = 0
                for a in args:
                    idx = idx * n + a
                return t[idx]
            ops.append((ar, fn))
    return sorted(closure(gens, ops))


def power_algebra(alg, k, cap=DEFAULT_CAP):
    """Direct power alg**k with base-n tuple encoding (leftmost most significant)."""
    if k < 1:
        raise AlgebraError("power exponent must be >= 1")
    n = alg.size
    size = n ** k
    max_ar = max((ar for _, ar in alg.signature.symbols), default=0)
    if size ** max(max_ar, 1) > cap:
        raise CapExceeded("power algebra of size %d exceeds cap %d" % (size, cap))
    decode = [tuple_decode(e, n, k) for e in range(size)]
    tables = {}
    for sym, ar in alg.signature.symbols:
        tab = alg.tables[sym]
        if ar == 0:
            c = tab[0]
            tables[sym] = (tuple_encode((c,) * k, n),)
            continue
        flat = []
        for args in product(range(size), repeat=ar):
            coords = []
            for j in range(k):
                idx = 0
                for a in args:
                    idx = idx * n + decode[a][j]
                coords.append(tab[idx])
            flat.append(tuple_encode(coords, n))
        tables[sym] = tuple(flat)
    name = "%s^%d" % (alg.name, k) if alg.name else None
    return FiniteAlgebra(size, alg.signature, tables, name=name)


def tuple_encode(coords, n):
    idx = 0
    for c in coords:
        idx = idx * n + c
    return idx


def tuple_decode(idx, n, k):
    coords = []
    for _ in range(k):
        idx, r = divmod(idx, n)
        coords.append(r)
    coords.reverse()
    return tuple(coords)


def quotient_algebra(alg, cong):
    """Quotient by a congruence; blocks are labeled by their least member.

    Returns (quotient, blockmap) where blockmap[a] is the index of a's block.
    Raises AlgebraError with a witness if cong is not compatible with some
    operation.
    """
    witness = congruence_violation(alg, cong)
    if witness is not None:
        raise AlgebraError("not a congruence: %s" % (witness,))
    blocks = cong.blocks()
    reps = [b[0] for b in blocks]
    blockmap = [0] * alg.size
    for i, b in enumerate(blocks):
        for x in b:
            blockmap[x] = i
    tables = {}
    for sym, ar in alg.signature.symbols:
        if ar == 0:
            tables[sym] = (blockmap[alg.tables[sym][0]],)
            continue
        flat = []
        for args in product(reps, repeat=ar):
            flat.append(blockmap[alg.apply(sym, args)])
        tables[sym] = tuple(flat)
    name = "%s/%s" % (alg.name, "theta") if alg.name else None
    return FiniteAlgebra(len(blocks), alg.signature, tables, name=name), blockmap


def congruence_violation(alg, cong):
    """Witness (sym, position, (a, b), context) if cong is incompatible, else None."""
    rep = cong.rep
    n = alg.size
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if rep[a] == rep[b]]
    for sym, ar in alg.signature.symbols:
        if ar == 0:
            continue
        for a, b in pairs:
            for i in range(ar):
                for ctx in product(range(n), repeat=ar - 1):
                    args_a = ctx[:i] + (a,) + ctx[i:]
                    args_b = ctx[:i] + (b,) + ctx[i:]
                    if rep[alg.apply(sym, args_a)] != rep[alg.apply(sym, args_b)]:
                        return (sym, i, (a, b), ctx)
    return None


def _profiles(alg):
    """Iterated invariant colors for isomorphism pruning."""
    n = alg.size
    colors = [0] * n
    for _ in range(n):
        data = []
        for a in range(n):
            row = [colors[a]]
            for sym, ar in alg.signature.symbols:
                tab = alg.tables[sym]
                if ar == 0:
                    row.append(int(tab[0] == a))
                elif ar == 1:
                    row.append(colors[tab[a]])
                    row.append(int(tab[a] == a))
                elif ar == 2:
                    row.append(tuple(sorted(colors[tab[a * n + x]] for x in range(n))))
                    row.append(tuple(sorted(colors[tab[x * n + a]] for x in range(n))))
                    row.append(colors[tab[a * n + a]])
                else:
                    vals = sorted(colors[alg.apply(sym, (a,) * ar)] for _ in (0,))
                    row.append(tuple(vals))
            data.append(tuple(row))
        ranking = {v: i for i, v in enumerate(sorted(set(data), key=repr))}
        new = [ranking[d] for d in data]
        if new == colors:
            break
        colors = new
    return colors


def find_isomorphism(a, b, seed=0):
    """A bijection list (a-element -> b-element) commuting with all tables, or None.

    Plain backtracking over profile-compatible candidates; complete for the
    desk-scale sizes this package targets.
    """
    if a.signature != b.signature:
        return None
    if a.size != b.size:
        return None
    n = a.size
    ca = _profiles(a)
    cb = _profiles(b)
    if sorted(ca) != sorted(cb):
        return None
    cand = [[y for y in range(n) if cb[y] == ca[x]] for x in range(n)]
    order = sorted(range(n), key=lambda x: (len(cand[x]), x))
    if seed:
        import random
        rng = random.Random(seed)
        for row in cand:
            rng.shuffle(row)

    img = [-1] * n
    used = [False] * n
    binops = [(a.tables[s], b.tables[s]) for s, ar in a.signature.symbols if ar == 2]
    unops = [(a.tables[s], b.tables[s]) for s, ar in a.signature.symbols if ar == 1]
    others = [(s, ar) for s, ar in a.signature.symbols if ar > 2]
    for s, ar in a.signature.symbols:
        if ar == 0 and cb[b.tables[s][0]] != ca[a.tables[s][0]]:
            return None

    def consistent(x):
        assigned = [z for z in range(n) if img[z] >= 0]
        for ta, tb in unops:
            if img[ta[x]] >= 0 and img[ta[x]] != tb[img[x]]:
                return False
        for ta, tb in binops:
            for z in assigned:
                v = ta[x * n + z]
                if img[v] >= 0 and img[v] != tb[img[x] * n + img[z]]:
                    return False
                v = ta[z * n + x]
                if img[v] >= 0 and img[v] != tb[img[z] * n + img[x]]:
                    return False
        for s, ar in others:
            for args in product(assigned + [x], repeat=ar):
                if x not in args:
                    continue
                v = a.apply(s, args)
                if img[v] >= 0 and img[v] != b.apply(s, tuple(img[z] for z in args)):
                    return False
        return True

    def solve(pos):
        if pos == n:
            for s, ar in a.signature.symbols:
                if ar == 0 and img[a.tables[s][0]] != b.tables[s][0]:
                    return False
            return True
        x = order[pos]
        for y in cand[x]:
            if used[y]:
                continue
            img[x] = y
            used[y] = True
            if consistent(x) and solve(pos + 1):
                return True
            img[x] = -1
            used[y] = False
        return False

    if solve(0):
        return list(img)
    return None


def is_homomorphism(mapping, a, b):
    """Check mapping (list a -> b) commutes with every operation."""
    if a.signature != b.signature:
        return False
    for sym, ar in a.signature.symbols:
        for args in product(range(a.size), repeat=ar):
            if mapping[a.apply(sym, args)] != b.apply(sym, tuple(mapping[x] for x in args)):
                return False
    return True


def satisfies(alg, equations):
    """First failing (lhs, rhs, env) for the equation set, or None."""
    from .terms import eval_term, term_vars
    for lhs, rhs in equations:
        varnames = term_vars(lhs)
        for v in term_vars(rhs):
            if v not in varnames:
                varnames.append(v)
        for vals in product(range(alg.size), repeat=len(varnames)):
            env = dict(zip(varnames, vals))
            if eval_term(alg, lhs, env) != eval_term(alg, rhs, env):
                return (lhs, rhs, env)
    return None
