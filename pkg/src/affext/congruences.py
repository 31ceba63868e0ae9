"""Congruences, the pair algebra A(alpha), M(alpha,beta) and Delta_{alpha beta}."""

from itertools import product

from .algebras import (AlgebraError, CapExceeded, FiniteAlgebra,
                       congruence_violation, DEFAULT_CAP)


class Congruence:
    """Partition of {0..n-1} normalized to least-representative form."""

    __slots__ = ("n", "rep")

    def __init__(self, n, rep):
        self.n = n
        self.rep = tuple(rep)

    @classmethod
    def from_blocks(cls, n, blocks):
        rep = list(range(n))
        seen = set()
        for block in blocks:
            least = min(block)
            for x in block:
                if x in seen:
                    raise AlgebraError("element %d in two blocks" % x)
                seen.add(x)
                rep[x] = least
        return cls(n, rep)

    @classmethod
    def equality(cls, n):
        return cls(n, range(n))

    @classmethod
    def all(cls, n):
        return cls(n, [0] * n)

    def blocks(self):
        by_rep = {}
        for x in range(self.n):
            by_rep.setdefault(self.rep[x], []).append(x)
        return [sorted(by_rep[r]) for r in sorted(by_rep)]

    def related(self, a, b):
        return self.rep[a] == self.rep[b]

    def pairs(self):
        return [(a, b) for a in range(self.n) for b in range(self.n)
                if self.rep[a] == self.rep[b]]

    def is_equality(self):
        return all(self.rep[x] == x for x in range(self.n))

    def is_all(self):
        return all(r == 0 for r in self.rep)

    def block_count(self):
        return len(set(self.rep))

    def meet(self, other):
        key = {}
        rep = []
        for x in range(self.n):
            k = (self.rep[x], other.rep[x])
            rep.append(key.setdefault(k, x))
        return Congruence(self.n, rep)

    def join(self, other):
        uf = UnionFind(self.n)
        for x in range(self.n):
            uf.union(x, self.rep[x])
            uf.union(x, other.rep[x])
        return Congruence(self.n, uf.rep_array())

    def le(self, other):
        return self.meet(other) == self

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def __repr__(self):
        return "Congruence(%r)" % (self.blocks(),)


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            x, p[x] = p[x], p[p[x]]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra  # keep least element as root
        return True

    def rep_array(self):
        return [self.find(x) for x in range(len(self.parent))]


def equivalence_from_pairs(n, pairs):
    uf = UnionFind(n)
    for a, b in pairs:
        uf.union(a, b)
    return Congruence(n, uf.rep_array())


def cg(alg, pairs):
    """Congruence of alg generated by pairs.

    Single-displacement closure: whenever two classes merge, rerun every
    operation with one argument ranging over the merged pair and all
    contexts, joining the results, until stable.
    """
    n = alg.size
    uf = UnionFind(n)
    queue = []
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise AlgebraError("pair (%d,%d) outside universe" % (a, b))
        if uf.union(a, b):
            queue.append((a, b))
    ops = [(sym, ar) for sym, ar in alg.signature.symbols if ar >= 1]
    while queue:
        a, b = queue.pop()
        for sym, ar in ops:
            tab = alg.tables[sym]
            if ar == 1:
                if uf.union(tab[a], tab[b]):
                    queue.append((tab[a], tab[b]))
                continue
            for i in range(ar):
                for ctx in product(range(n), repeat=ar - 1):
                    idx_a = 0
                    idx_b = 0
                    for j in range(ar):
                        if j < i:
                            va = vb = ctx[j]
                        elif j == i:
                            va, vb = a, b
                        else:
                            va = vb = ctx[j - 1]
                        idx_a = idx_a * n + va
                        idx_b = idx_b * n + vb
                    ra, rb = tab[idx_a], tab[idx_b]
                    if uf.union(ra, rb):
                        queue.append((ra, rb))
    return Congruence(n, uf.rep_array())


def kernel_of_map(mapping, n):
    """ker of mapping given as list of length n (not checked for compatibility)."""
    key = {}
    rep = []
    for x in range(n):
        rep.append(key.setdefault(mapping[x], x))
    return Congruence(n, rep)


def is_congruence(alg, cong):
    return congruence_violation(alg, cong) is None


def all_congruences(alg, limit=12):
    """Every congruence of alg (helper for n <= limit)."""
    if alg.size > limit:
        raise AlgebraError("congruence enumeration capped at %d elements" % limit)
    found = {cg(alg, [])}
    frontier = list(found)
    while frontier:
        new = []
        for c in frontier:
            for a in range(alg.size):
                for b in range(a + 1, alg.size):
                    if c.related(a, b):
                        continue
                    d = cg(alg, [(a, b)] + [(x, c.rep[x]) for x in range(alg.size)])
                    if d not in found:
                        found.add(d)
                        new.append(d)
        frontier = new
    return sorted(found, key=lambda c: c.rep)


class PairAlgebra(FiniteAlgebra):
    """alpha as a subalgebra of alg x alg; element i is self.pairs[i].

    Pairs are ordered lexicographically, which fixes all downstream class
    indexings.
    """

    def __init__(self, alg, alpha, cap=DEFAULT_CAP):
        witness = congruence_violation(alg, alpha)
        if witness is not None:
            raise AlgebraError("alpha is not a congruence: %s" % (witness,))
        pairs = [(a, b) for a in range(alg.size) for b in range(alg.size)
                 if alpha.related(a, b)]
        index = {p: i for i, p in enumerate(pairs)}
        P = len(pairs)
        max_ar = max((ar for _, ar in alg.signature.symbols), default=0)
        if P ** max(max_ar, 1) > cap:
            raise CapExceeded("pair algebra of size %d exceeds cap %d" % (P, cap))
        tables = {}
        n = alg.size
        for sym, ar in alg.signature.symbols:
            tab = alg.tables[sym]
            if ar == 0:
                tables[sym] = (index[(tab[0], tab[0])],)
                continue
            flat = []
            for args in product(range(P), repeat=ar):
                ia = 0
                ib = 0
                for k in args:
                    pa, pb = pairs[k]
                    ia = ia * n + pa
                    ib = ib * n + pb
                flat.append(index[(tab[ia], tab[ib])])
            tables[sym] = tuple(flat)
        name = "%s(alpha)" % alg.name if alg.name else None
        super().__init__(P, alg.signature, tables, name=name)
        self.base = alg
        self.alpha = alpha
        self.pairs = pairs
        self.pair_index = index

    def p0(self, i):
        return self.pairs[i][0]

    def p1(self, i):
        return self.pairs[i][1]

    def projection_kernel(self, coord):
        return kernel_of_map([p[coord] for p in self.pairs], self.size)

    def preimage(self, cong, coord):
        """p_coord^{-1}(cong) as a congruence on the pair universe."""
        return kernel_of_map([cong.rep[p[coord]] for p in self.pairs], self.size)


def pair_algebra(alg, alpha, cap=DEFAULT_CAP):
    return PairAlgebra(alg, alpha, cap=cap)


def hat_alpha(pairalg):
    """[x//y] related to [u//v] iff all four coordinates share an alpha block."""
    rep = pairalg.alpha.rep
    return kernel_of_map([rep[p[0]] for p in pairalg.pairs], pairalg.size)


def m_matrices(alg, alpha, beta, cap=DEFAULT_CAP, pairalg=None):
    """M(alpha,beta): subalgebra of alg^4 generated by the alpha-column and
    beta-row matrices.

    A matrix [[q1,q2],[q3,q4]] is encoded as the quadruple (q1,q2,q3,q4);
    its rows (q1,q2),(q3,q4) are beta-pairs and its columns (q1,q3),(q2,q4)
    are alpha-pairs.  Returns the set of quadruples.
    """
    if pairalg is None:
        pairalg = pair_algebra(alg, alpha, cap=cap)
    P = pairalg.size
    if P * P > cap:
        raise CapExceeded("M(alpha,beta) universe %d exceeds cap %d" % (P * P, cap))
    index = pairalg.pair_index
    # encode a matrix by its columns: e = index(col1)*P + index(col2)
    gens = set()
    for (x, y) in pairalg.pairs:  # [x x // y y]
        i = index[(x, y)]
        gens.add(i * P + i)
    for u in range(alg.size):
        for v in range(alg.size):
            if beta.related(u, v):  # [u v // u v]
                gens.add(index[(u, u)] * P + index[(v, v)])
    elems = sorted(gens)
    seen = set(elems)
    frontier = elems
    ops = [(sym, ar, pairalg.tables[sym]) for sym, ar in alg.signature.symbols if ar >= 1]
    while frontier:
        new = []
        old_len = len(elems) - len(frontier)
        old = elems[:old_len]
        for sym, ar, tab in ops:
            if ar == 1:
                for e in frontier:
                    i, j = divmod(e, P)
                    v = tab[i] * P + tab[j]
                    if v not in seen:
                        seen.add(v)
                        new.append(v)
                continue
            if ar == 2:
                for order in range(2):
                    lefts, rights = (old, frontier) if order == 0 else (frontier, elems)
                    for e1 in lefts:
                        i1, j1 = divmod(e1, P)
                        r1 = i1 * P
                        s1 = j1 * P
                        for e2 in rights:
                            i2, j2 = divmod(e2, P)
                            v = tab[r1 + i2] * P + tab[s1 + j2]
                            if v not in seen:
                                seen.add(v)
                                new.append(v)
                continue
            for pos in range(ar):
                pools = [old] * pos + [frontier] + [elems] * (ar - pos - 1)
                if any(not p for p in pools):
                    continue
                for args in product(*pools):
                    ii = 0
                    jj = 0
                    for e in args:
                        i, j = divmod(e, P)
                        ii = ii * P + i
                        jj = jj * P + j
                    v = tab[ii] * P + tab[jj]
                    if v not in seen:
                        seen.add(v)
                        new.append(v)
        elems.extend(new)
        frontier = new
    quads = set()
    pairs = pairalg.pairs
    for e in seen:
        i, j = divmod(e, P)
        q1, q3 = pairs[i]
        q2, q4 = pairs[j]
        quads.add((q1, q2, q3, q4))
    return quads


def delta(alg, alpha, beta, cap=DEFAULT_CAP, pairalg=None, matrices=None):
    """Delta_{alpha beta} on A(alpha), computed two independent ways.

    (1) the congruence of A(alpha) generated by {((u,u),(v,v)) : u beta v};
    (2) the transitive closure of M(alpha,beta) read as a relation joining
        the two columns of each matrix.
    Both must agree; the common congruence is returned.
    """
    if pairalg is None:
        pairalg = pair_algebra(alg, alpha, cap=cap)
    index = pairalg.pair_index
    gens = []
    for u in range(alg.size):
        for v in range(alg.size):
            if beta.related(u, v):
                gens.append((index[(u, u)], index[(v, v)]))
    via_cg = cg(pairalg, gens)
    if matrices is None:
        matrices = m_matrices(alg, alpha, beta, cap=cap, pairalg=pairalg)
    uf = UnionFind(pairalg.size)
    for (q1, q2, q3, q4) in matrices:
        uf.union(index[(q1, q3)], index[(q2, q4)])
    via_tr = Congruence(pairalg.size, uf.rep_array())
    if via_cg != via_tr:
        raise AlgebraError("Delta computed by Cg and by Tr M disagree")
    return via_tr


def delta_with_pair_algebra(alg, alpha, beta, cap=DEFAULT_CAP):
    pairalg = pair_algebra(alg, alpha, cap=cap)
    return pairalg, delta(alg, alpha, beta, cap=cap, pairalg=pairalg)
