"""Affine datum: the partial structure on Delta-classes, unary actions,
extraction from an extension with abelian kernel, and axiom validation."""

from itertools import product

from .algebras import (AlgebraError, FiniteAlgebra, Signature,
                       is_homomorphism, satisfies, DEFAULT_CAP)
from .commutator import is_abelian, verify_ternary_abelian_group_on_blocks
from .congruences import (Congruence, kernel_of_map, pair_algebra,
                          delta as delta_congruence)
from .terms import eval_term, is_var, term_vars, TermError


class DatumError(AlgebraError):
    pass


def _flat_ternary(table_or_func, n):
    if callable(table_or_func):
        return tuple(table_or_func(a, b, c)
                     for a in range(n) for b in range(n) for c in range(n))
    seq = table_or_func
    if len(seq) and isinstance(seq[0], (list, tuple)):
        from .algebras import _flatten
        return _flatten(seq, 3, n)
    flat = tuple(seq)
    if len(flat) != n ** 3:
        raise DatumError("ternary table has %d entries, expected %d" % (len(flat), n ** 3))
    return flat


class DeltaClasses:
    """The universe A(alpha)/Delta with its bookkeeping maps.

    Pairs are the alpha-related pairs in lexicographic order; classes are
    indexed by their least pair, in pair order.  rho is given at pair level
    and must factor through the classes.
    """

    def __init__(self, asize, m_flat, pairs, delta_cong, rho_pair):
        self.asize = asize
        self.m_flat = m_flat
        self.pairs = list(pairs)
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}
        self.delta_cong = delta_cong
        blocks = delta_cong.blocks()
        blocks.sort(key=lambda b: b[0])
        self.classes = blocks
        self.size = len(blocks)
        self.class_of = [0] * len(self.pairs)
        for ci, block in enumerate(blocks):
            for p in block:
                self.class_of[p] = ci
        self.class_reps = [self.pairs[block[0]] for block in blocks]
        self.delta_of = [self.class_of[self.pair_index[(a, a)]] for a in range(asize)]
        self.rho_class = []
        for ci, block in enumerate(blocks):
            vals = {rho_pair[p] for p in block}
            if len(vals) != 1:
                raise DatumError("rho does not factor through Delta-classes")
            self.rho_class.append(vals.pop())
        self.fibers = {}
        for ci, q in enumerate(self.rho_class):
            self.fibers.setdefault(q, []).append(ci)

    def m_elem(self, a, b, c):
        n = self.asize
        return self.m_flat[(a * n + b) * n + c]

    def class_of_pair(self, a, b):
        return self.class_of[self.pair_index[(a, b)]]

    def m_class(self, x, y, z):
        a1, b1 = self.class_reps[x]
        a2, b2 = self.class_reps[y]
        a3, b3 = self.class_reps[z]
        key = (self.m_elem(a1, a2, a3), self.m_elem(b1, b2, b3))
        return self.class_of[self.pair_index[key]]

    def is_diagonal(self, c):
        a, b = self.class_reps[c]
        return self.delta_of[a] == c


class AffineDatum:
    """(Q, partial structure on A, unary action) plus its lifting.

    fdelta tables are keyed (class, q2, ..., qn): a diagonal argument
    delta(x) only depends on x/alpha, so it is recorded by its Q index.
    Action tables are keyed by (symbol, positions) with positions a tuple of
    1-based coordinates; extraction only produces singletons.
    """

    def __init__(self, q_alg, mq_flat, asize, m_flat, alpha, dc, lifting,
                 fdelta, actions, name=None):
        self.q_alg = q_alg
        self.signature = q_alg.signature
        self.mq_flat = tuple(mq_flat)
        self.asize = asize
        self.m_flat = tuple(m_flat)
        self.alpha = alpha
        self.dc = dc
        self.lifting = tuple(lifting)
        self.fdelta = fdelta
        self.actions = actions
        self.name = name

    # --- basic maps -----------------------------------------------------
    def qsize(self):
        return self.q_alg.size

    def pi_of(self, a):
        """Canonical A -> Q map (rho composed with the diagonal)."""
        return self.dc.rho_class[self.dc.delta_of[a]]

    def delta_l(self, q):
        return self.dc.delta_of[self.lifting[q]]

    def fiber(self, q):
        return self.dc.fibers[q]

    # --- fiber group operations -----------------------------------------
    def plus_at(self, q, x, y):
        """x +_u y with u = l(q); arguments must share the fiber over q."""
        return self.dc.m_class(x, self.delta_l(q), y)

    def neg_at(self, q, x):
        ident = self.delta_l(q)
        return self.dc.m_class(ident, x, ident)

    def sum_at(self, q, values):
        acc = self.delta_l(q)
        for v in values:
            acc = self.dc.m_class(acc, self.delta_l(q), v)
        return acc

    def plus_u(self, x, u, y):
        """m(x, delta(u), y) for an explicit base element u of A.

        The three classes must lie in one hat-alpha block.
        """
        du = self.dc.delta_of[u]
        if not (self.dc.rho_class[x] == self.dc.rho_class[du] == self.dc.rho_class[y]):
            raise DatumError("plus_u arguments lie in different fibers")
        return self.dc.m_class(x, du, y)

    # --- structure applications ------------------------------------------
    def fdelta_apply(self, sym, c, qrest):
        return self.fdelta[sym][(c,) + tuple(qrest)]

    def action_apply(self, sym, i, qrest, c):
        """Unary action a(sym,i) with Q values qrest at the other positions."""
        return self.actions[(sym, (i,))][(tuple(qrest), (c,))]

    def action_apply_set(self, sym, spos, qrest, cs):
        return self.actions[(sym, tuple(spos))][(tuple(qrest), tuple(cs))]

    def action_positions(self, sym):
        ar = self.signature.arity(sym)
        return [s for (s2, s) in self.actions if s2 == sym] if ar and ar >= 2 else []

    def trivial_cocycle(self):
        from .cocycles import TwoCocycle
        tables = {}
        for sym, ar in self.signature.symbols:
            tab = {}
            for qs in product(range(self.qsize()), repeat=ar):
                tab[qs] = self.delta_l(self.q_alg.apply(sym, qs))
            tables[sym] = tab
        return TwoCocycle(tables)

    def cells(self):
        """All 2-cocycle cells in the documented deterministic order."""
        out = []
        for sym, ar in self.signature.symbols:
            for qs in product(range(self.qsize()), repeat=ar):
                out.append((sym, qs))
        return out

    def cell_fiber(self, sym, qs):
        """The hat-alpha/Delta block (fiber) a cocycle value at this cell must
        lie in, per (C1)."""
        ar = self.signature.arity(sym)
        if ar == 0:
            base = self.fdelta[sym][()]
        else:
            c1 = self.fiber(qs[0])[0]
            base = self.fdelta_apply(sym, c1, qs[1:])
        return self.dc.rho_class[base]

    def eval_q(self, term, qenv):
        return eval_term(self.q_alg, term, qenv)


class ExtensionRecord:
    """A surjective homomorphism pi: B -> Q with its kernel and lifting."""

    def __init__(self, alg, pi, q_alg, m_flat, lifting=None, name=None, datum=None):
        self.alg = alg
        self.pi = tuple(pi)
        self.q_alg = q_alg
        self.m_flat = tuple(m_flat) if m_flat is not None else None
        self.name = name or alg.name
        self.datum = datum
        if len(self.pi) != alg.size:
            raise DatumError("pi must assign every element of B")
        if set(self.pi) != set(range(q_alg.size)):
            raise DatumError("pi is not surjective")
        if not is_homomorphism(list(self.pi), alg, q_alg):
            raise DatumError("pi is not a homomorphism")
        self.beta = kernel_of_map(self.pi, alg.size)
        if lifting is None:
            lifting = [min(x for x in range(alg.size) if self.pi[x] == q)
                       for q in range(q_alg.size)]
        self.lifting = tuple(lifting)
        for q in range(q_alg.size):
            if self.pi[self.lifting[q]] != q:
                raise DatumError("lifting is not a section of pi")

    def trace(self, x):
        return self.lifting[self.pi[x]]

    def m_elem(self, a, b, c):
        n = self.alg.size
        return self.m_flat[(a * n + b) * n + c]

    @classmethod
    def from_kernel(cls, alg, beta, m_term_or_table, lifting=None, name=None):
        """Extension B -> B/beta with m given as a term or a raw ternary table."""
        from .algebras import quotient_algebra
        q_alg, blockmap = quotient_algebra(alg, beta)
        if isinstance(m_term_or_table, (str, tuple)) and not (
                isinstance(m_term_or_table, tuple) and m_term_or_table
                and isinstance(m_term_or_table[0], int)):
            term = m_term_or_table
            if isinstance(term, str):
                from .terms import parse_term
                term = parse_term(term)
            n = alg.size
            m_flat = _flat_ternary(
                lambda a, b, c: eval_term(alg, term, {"x0": a, "x1": b, "x2": c}), n)
        else:
            m_flat = _flat_ternary(m_term_or_table, alg.size)
        return cls(alg, blockmap, q_alg, m_flat, lifting=lifting, name=name)


def group_extension(alg, kernel_block, lifting=None, name=None):
    """Extension of a group algebra by the congruence of a normal subgroup,
    with the group difference term."""
    from .groups import congruence_of_subgroup
    from .terms import GROUP_DIFFERENCE_TERM
    beta = congruence_of_subgroup(alg, kernel_block)
    return ExtensionRecord.from_kernel(alg, beta, GROUP_DIFFERENCE_TERM,
                                       lifting=lifting, name=name)


def extract_datum(ext, cap=DEFAULT_CAP, check_m_rule=True):
    """Decompose an extension with abelian kernel into affine datum and its
    2-cocycle.

    Requires the kernel abelian and m Mal'cev on kernel blocks.  The Delta
    congruence is computed in the full signature and cross-checked against
    the rule (a,b) ~ (c,d) iff d = m(b,a,c); representative independence of
    every extracted table is asserted, not assumed.
    """
    alg, beta, pi = ext.alg, ext.beta, ext.pi
    if ext.m_flat is None:
        raise DatumError("extension carries no ternary operation")
    if not is_abelian(alg, beta, cap=cap):
        raise DatumError("kernel congruence is not abelian")
    blocks = beta.blocks()
    if not verify_ternary_abelian_group_on_blocks(
            lambda a, b, c: ext.m_elem(a, b, c), blocks):
        raise DatumError("m is not a ternary abelian group operation on kernel blocks")

    pairalg = pair_algebra(alg, beta, cap=cap)
    d_bb = delta_congruence(alg, beta, beta, cap=cap, pairalg=pairalg)
    if check_m_rule:
        for i, (a, b) in enumerate(pairalg.pairs):
            for j, (c, d) in enumerate(pairalg.pairs):
                rule = beta.related(a, c) and d == ext.m_elem(b, a, c)
                if rule != d_bb.related(i, j):
                    raise DatumError(
                        "Delta disagrees with the m-rule at %r,%r" % ((a, b), (c, d)))

    rho_pair = [pi[p[0]] for p in pairalg.pairs]
    dc = DeltaClasses(alg.size, ext.m_flat, pairalg.pairs, d_bb, rho_pair)
    q_alg = ext.q_alg
    nq = q_alg.size
    lifting = ext.lifting

    mq_flat = _flat_ternary(
        lambda a, b, c: pi[ext.m_elem(lifting[a], lifting[b], lifting[c])], nq)

    # blocks of beta indexed by q, for representative-independence sweeps
    block_by_q = {}
    for x in range(alg.size):
        block_by_q.setdefault(pi[x], []).append(x)

    fdelta = {}
    actions = {}
    for sym, ar in q_alg.signature.symbols:
        tab = {}
        if ar == 0:
            c = alg.tables[sym][0]
            tab[()] = dc.class_of_pair(c, c)
            fdelta[sym] = tab
            continue
        for c1 in range(dc.size):
            for qrest in product(range(nq), repeat=ar - 1):
                vals = set()
                for (a, b) in (dc.pairs[p] for p in dc.classes[c1]):
                    for xs in product(*(block_by_q[q] for q in qrest)):
                        top = alg.apply(sym, (a,) + xs)
                        bot = alg.apply(sym, (b,) + xs)
                        vals.add(dc.class_of_pair(top, bot))
                if len(vals) != 1:
                    raise DatumError("f-delta for %r depends on representatives" % sym)
                tab[(c1,) + qrest] = vals.pop()
        fdelta[sym] = tab
        if ar >= 2:
            for i in range(1, ar + 1):
                atab = {}
                for qrest in product(range(nq), repeat=ar - 1):
                    largs = [lifting[q] for q in qrest]
                    for c in range(dc.size):
                        vals = set()
                        for (a, b) in (dc.pairs[p] for p in dc.classes[c]):
                            args_top = largs[:i - 1] + [a] + largs[i - 1:]
                            args_bot = largs[:i - 1] + [b] + largs[i - 1:]
                            vals.add(dc.class_of_pair(alg.apply(sym, args_top),
                                                      alg.apply(sym, args_bot)))
                        if len(vals) != 1:
                            raise DatumError("action (%s,%d) depends on representatives"
                                             % (sym, i))
                        atab[(qrest, (c,))] = vals.pop()
                actions[(sym, (i,))] = atab

    datum = AffineDatum(q_alg, mq_flat, alg.size, ext.m_flat, beta, dc,
                        lifting, fdelta, actions,
                        name="datum(%s)" % (ext.name or alg.name))
    ext.datum = datum

    from .cocycles import TwoCocycle
    tables = {}
    for sym, ar in q_alg.signature.symbols:
        tab = {}
        for qs in product(range(nq), repeat=ar):
            xs = tuple(lifting[q] for q in qs)
            fx = alg.apply(sym, xs)
            tab[qs] = dc.class_of_pair(ext.trace(fx), fx)
        tables[sym] = tab
    return datum, TwoCocycle(tables)


# --- validation ----------------------------------------------------------

def validate_datum(d, cap=DEFAULT_CAP):
    """Exhaustively check (D1)-(D4) and (AD1)-(AD2); returns a report list.

    Each entry is {"claim", "holds", "witness"}; the report never raises.
    """
    report = []

    def add(claim, holds, witness=None):
        report.append({"claim": claim, "holds": bool(holds),
                       "witness": None if holds else witness})

    def guarded(claim, fn):
        """Record a crash inside a check as a failure, never raise."""
        try:
            holds, witness = fn()
        except Exception as exc:  # broken tables surface as failed claims
            holds, witness = False, "check raised: %s" % exc
        add(claim, holds, witness)

    n = d.asize
    nq = d.qsize()
    m = d.dc.m_elem

    # m-algebra and alpha
    m_alg = FiniteAlgebra(n, _M_SIGNATURE, {"m": d.m_flat}, name="<A,m>")
    from .algebras import congruence_violation
    w = congruence_violation(m_alg, d.alpha)
    add("alpha is a congruence of <A,m>", w is None, w)
    if w is None:
        add("alpha is abelian in <A,m>", is_abelian(m_alg, d.alpha, cap=cap))
    blocks = d.alpha.blocks()
    try:
        ok = verify_ternary_abelian_group_on_blocks(m, blocks)
    except AlgebraError as exc:
        ok, w = False, str(exc)
    add("(AD1) m is a ternary abelian group operation on alpha-blocks", ok)

    # D3: rho and the idempotent interpretation of m in Q
    mq = lambda a, b, c: d.mq_flat[(a * nq + b) * nq + c]
    add("(D3) m idempotent in Q", all(mq(q, q, q) == q for q in range(nq)))
    surj = set(d.dc.rho_class) == set(range(nq))
    add("(D3) rho surjective", surj)
    hom_ok = True
    wit = None
    for trip in product(range(d.dc.size), repeat=3):
        lhs = d.dc.rho_class[d.dc.m_class(*trip)]
        rhs = mq(*(d.dc.rho_class[c] for c in trip))
        if lhs != rhs:
            hom_ok, wit = False, trip
            break
    add("(D3) rho is a homomorphism A(alpha) -> <Q,m>", hom_ok, wit)
    ker_ok = True
    for i, (a, b) in enumerate(d.dc.pairs):
        for j, (c, e) in enumerate(d.dc.pairs):
            same_fiber = (d.dc.rho_class[d.dc.class_of[i]]
                          == d.dc.rho_class[d.dc.class_of[j]])
            if same_fiber != d.alpha.related(a, c):
                ker_ok = False
    add("(D3) ker rho = hat-alpha", ker_ok)

    add("lifting is a section (rho . delta . l = id)",
        all(d.dc.rho_class[d.delta_l(q)] == q for q in range(nq)))
    add("rho . delta is the canonical map A -> A/alpha",
        all(d.pi_of(a) == d.pi_of(b) or not d.alpha.related(a, b)
            for a in range(n) for b in range(n))
        and all(d.pi_of(a) != d.pi_of(b) or d.alpha.related(a, b)
                for a in range(n) for b in range(n)))

    # D1: homomorphic structure
    def check_d1():
        for sym, ar in d.signature.symbols:
            if ar == 0:
                continue
            for q1 in range(nq):
                fib = d.fiber(q1)
                u = next(x for x in range(n) if d.pi_of(x) == q1)
                for qrest in product(range(nq), repeat=ar - 1):
                    v = d.q_alg.apply(sym, (q1,) + qrest)
                    for a in fib:
                        for b in fib:
                            lhs = d.fdelta_apply(sym, d.plus_u(a, u, b), qrest)
                            rhs = d.plus_at(v, d.fdelta_apply(sym, a, qrest),
                                            d.fdelta_apply(sym, b, qrest))
                            if lhs != rhs:
                                return False, (sym, a, b, qrest)
        return True, None
    guarded("(D1) structure is homomorphic", check_d1)

    # D4 part 1: homomorphic action
    def check_d4_hom():
        for (sym, spos), atab in sorted(d.actions.items()):
            ar = d.signature.arity(sym)
            for qrest in product(range(nq), repeat=ar - len(spos)):
                for qats in product(range(nq), repeat=len(spos)):
                    full_q = _merge(qrest, qats, spos, ar)
                    v = d.q_alg.apply(sym, full_q)
                    fibs = [d.fiber(q) for q in qats]
                    for avec in product(*fibs):
                        for bvec in product(*fibs):
                            zvec = tuple(d.plus_at(qats[k], avec[k], bvec[k])
                                         for k in range(len(spos)))
                            lhs = d.action_apply_set(sym, spos, qrest, zvec)
                            rhs = d.plus_at(v,
                                            d.action_apply_set(sym, spos, qrest, avec),
                                            d.action_apply_set(sym, spos, qrest, bvec))
                            if lhs != rhs:
                                return False, (sym, spos, qrest, avec, bvec)
        return True, None
    guarded("(D4) action is homomorphic", check_d4_hom)

    # D4 part 2: f-delta and action values share hat-alpha/Delta blocks
    def check_d4_fibers():
        for sym, ar in d.signature.symbols:
            if ar < 2:
                continue
            for qs in product(range(nq), repeat=ar):
                expected = d.q_alg.apply(sym, qs)
                for c1 in d.fiber(qs[0]):
                    got = d.dc.rho_class[d.fdelta_apply(sym, c1, qs[1:])]
                    if got != expected:
                        return False, (sym, qs, "fdelta")
            for (sym2, spos), atab in sorted(d.actions.items()):
                if sym2 != sym:
                    continue
                for (qrest, cs), val in sorted(atab.items()):
                    full_q = _merge(qrest, tuple(d.dc.rho_class[c] for c in cs),
                                    spos, ar)
                    if d.dc.rho_class[val] != d.q_alg.apply(sym, full_q):
                        return False, (sym, spos, qrest, cs)
        return True, None
    guarded("(D4) f-delta and action values lie over f^Q", check_d4_fibers)

    # AD2: unary action with a(f,1) equal to f-delta
    def check_ad2():
        for sym, ar in d.signature.symbols:
            if ar < 2:
                continue
            spositions = sorted(s for (s2, s) in d.actions if s2 == sym)
            if spositions != [(i,) for i in range(1, ar + 1)]:
                return False, (sym, spositions)
            for qrest in product(range(nq), repeat=ar - 1):
                for c in range(d.dc.size):
                    if d.fdelta_apply(sym, c, qrest) != d.action_apply(sym, 1, qrest, c):
                        return False, (sym, qrest, c)
        return True, None
    guarded("(AD2) action is unary and a(f,1) agrees with f-delta", check_ad2)

    # Delta agrees with the m-rule (reconstructibility of the universe)
    ok, wit = True, None
    for i, (a, b) in enumerate(d.dc.pairs):
        for j, (c, e) in enumerate(d.dc.pairs):
            rule = d.alpha.related(a, c) and e == m(b, a, c)
            if rule != (d.dc.class_of[i] == d.dc.class_of[j]):
                ok, wit = False, ((a, b), (c, e))
    add("Delta matches the rule d = m(b,a,c)", ok, wit)

    return report


_M_SIGNATURE = Signature([("m", 3)])


def _merge(qrest, at_values, spos, ar):
    """Interleave Q values and per-position values back into a full tuple."""
    out = [None] * ar
    sset = set(spos)
    it = iter(qrest)
    for i in range(1, ar + 1):
        if i not in sset:
            out[i - 1] = next(it)
    for k, i in enumerate(spos):
        out[i - 1] = at_values[k]
    return tuple(out)


def datum_from_tables(q_tables, q_size, mq, asize, m_table, alpha_blocks,
                      rho_pair, lifting, fdelta_tables, action_tables,
                      signature, name=None, cap=DEFAULT_CAP):
    """Assemble an AffineDatum from raw serialized tables.

    Delta is recomputed from <A,m> and the class indexing is the documented
    least-representative order, so file indices are stable.
    """
    q_alg = FiniteAlgebra(q_size, signature, q_tables, name="Q")
    m_flat = _flat_ternary(m_table, asize)
    alpha = Congruence.from_blocks(asize, alpha_blocks)
    m_alg = FiniteAlgebra(asize, _M_SIGNATURE, {"m": m_flat}, name="<A,m>")
    pairalg = pair_algebra(m_alg, alpha, cap=cap)
    d_aa = delta_congruence(m_alg, alpha, alpha, cap=cap, pairalg=pairalg)
    dc = DeltaClasses(asize, m_flat, pairalg.pairs, d_aa, rho_pair)
    return AffineDatum(q_alg, _flat_ternary(mq, q_size), asize, m_flat, alpha,
                       dc, lifting, fdelta_tables, action_tables, name=name)


# --- compatibility of actions with equation sets --------------------------

Q_KIND, U_KIND = "q", "u"


def compatible_value(d, term, assignment):
    """Evaluate a term on a mixed (Q | Delta-class) assignment per the
    compatible-sequence rules; None when the sequence is not compatible.

    Values are tagged pairs ("q", element of Q) or ("u", class index).
    Patterns with one class among Q values use the action; a leading class
    followed by diagonal classes uses the partial f-delta operation; other
    mixtures are not compatible and are excluded.
    """
    if is_var(term):
        return assignment[term]
    sym = term[0]
    subs = term[1:]
    ar = d.signature.arity(sym)
    if ar is None:
        raise TermError("symbol %r not in signature" % sym)
    vals = [compatible_value(d, s, assignment) for s in subs]
    if any(v is None for v in vals):
        return None
    kinds = [k for k, _ in vals]
    if all(k == Q_KIND for k in kinds):
        return (Q_KIND, d.q_alg.apply(sym, tuple(v for _, v in vals)))
    if kinds[0] == U_KIND and all(
            k == U_KIND and d.dc.is_diagonal(c) for k, c in vals[1:]):
        qrest = tuple(d.dc.rho_class[c] for _, c in vals[1:])
        return (U_KIND, d.fdelta_apply(sym, vals[0][1], qrest))
    upos = tuple(i + 1 for i, k in enumerate(kinds) if k == U_KIND)
    if 0 < len(upos) < ar and (sym, upos) in d.actions:
        qrest = tuple(v for k, v in vals if k == Q_KIND)
        cs = tuple(vals[i - 1][1] for i in upos)
        return (U_KIND, d.action_apply_set(sym, upos, qrest, cs))
    return None


def weak_sum(d, term, env):
    """The transfer-free part of a term's interpretation: the sum over
    consistent evaluations, computed by structural recursion.

    env assigns Delta-classes to variables.  At each node the class argument
    in position 1 goes through f-delta and positions >= 2 through the
    action, exactly the expansion used by the reconstruction.
    """
    if is_var(term):
        return env[term]
    sym = term[0]
    subs = term[1:]
    ar = len(subs)
    qenv = {v: d.dc.rho_class[env[v]] for v in env}
    if ar == 0:
        return d.delta_l(d.q_alg.tables[sym][0])
    qs = tuple(d.eval_q(s, qenv) for s in subs)
    uq = d.q_alg.apply(sym, qs)
    val = d.fdelta_apply(sym, weak_sum(d, subs[0], env), qs[1:])
    for k in range(2, ar + 1):
        arm = d.action_apply(sym, k, qs[:k - 1] + qs[k:], weak_sum(d, subs[k - 1], env))
        val = d.plus_at(uq, val, arm)
    return val


def check_action_compatible(d, equations, mode="weak"):
    """Compatibility of the datum's action with a set of equations.

    weak mode compares the transfer-free sums on every class assignment;
    full mode enumerates compatible sequences and appropriate pairs per the
    pairing rules.  Returns a report dict with failure witnesses.
    """
    if mode not in ("weak", "full"):
        raise DatumError("mode must be 'weak' or 'full'")
    failures = []
    excluded = 0
    q_fail = satisfies(d.q_alg, equations)
    if q_fail is not None:
        return {"claim": "action %s-compatible" % mode, "holds": False,
                "witness": {"reason": "Q does not satisfy the equations",
                            "equation": q_fail[:2], "env": q_fail[2]}}
    for lhs, rhs in equations:
        varnames = term_vars(lhs)
        for v in term_vars(rhs):
            if v not in varnames:
                varnames.append(v)
        if mode == "weak":
            for vals in product(range(d.dc.size), repeat=len(varnames)):
                env = dict(zip(varnames, vals))
                lv = weak_sum(d, lhs, env)
                rv = weak_sum(d, rhs, env)
                if lv != rv:
                    failures.append({"equation": (lhs, rhs), "env": env,
                                     "lhs": lv, "rhs": rv})
        else:
            domain = [(Q_KIND, q) for q in range(d.qsize())]
            domain += [(U_KIND, c) for c in range(d.dc.size)]
            for vals in product(domain, repeat=len(varnames)):
                assignment = dict(zip(varnames, vals))
                lv = compatible_value(d, lhs, assignment)
                rv = compatible_value(d, rhs, assignment)
                if lv is None or rv is None:
                    excluded += 1  # sequence not compatible: reported, not guessed
                    continue
                if (lv[0] == U_KIND) != (rv[0] == U_KIND):
                    continue  # pair is not appropriate
                if lv != rv:
                    failures.append({"equation": (lhs, rhs),
                                     "env": assignment, "lhs": lv, "rhs": rv})
    report = {"claim": "action %s-compatible" % mode,
              "holds": not failures, "witness": failures or None}
    if mode == "full":
        report["excluded_sequences"] = excluded
    return report
