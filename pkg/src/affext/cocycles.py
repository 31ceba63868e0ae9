"""2-cocycles, derived term operations, reconstruction and realization."""

from itertools import product

from .algebras import AlgebraError, FiniteAlgebra, is_homomorphism, DEFAULT_CAP
from .congruences import kernel_of_map, pair_algebra, delta as delta_congruence
from .datum import DatumError, ExtensionRecord
from .terms import is_var, term_vars, term_to_str


class TwoCocycle:
    """Per symbol, a table Q^{ar f} -> Delta-class index."""

    def __init__(self, tables):
        self.tables = {sym: dict(tab) for sym, tab in tables.items()}

    def value(self, sym, qs):
        return self.tables[sym][tuple(qs)]

    def serialize(self, datum):
        return tuple(self.tables[sym][qs] for sym, qs in datum.cells())

    @classmethod
    def from_serialized(cls, datum, values):
        cells = datum.cells()
        if len(values) != len(cells):
            raise DatumError("serialized cocycle has wrong length")
        tables = {sym: {} for sym, _ in datum.signature.symbols}
        for (sym, qs), v in zip(cells, values):
            tables[sym][qs] = v
        return cls(tables)

    def __eq__(self, other):
        return isinstance(other, TwoCocycle) and self.tables == other.tables

    def __repr__(self):
        return "TwoCocycle(%r)" % (self.tables,)


def cocycle_add(d, T1, T2):
    """(T + T')_f(x) = T_f(x) +_{l(f(x))} T'_f(x)."""
    tables = {}
    for sym, ar in d.signature.symbols:
        tab = {}
        for qs in product(range(d.qsize()), repeat=ar):
            base = d.q_alg.apply(sym, qs)
            tab[qs] = d.plus_at(base, T1.value(sym, qs), T2.value(sym, qs))
        tables[sym] = tab
    return TwoCocycle(tables)


def cocycle_neg(d, T):
    tables = {}
    for sym, ar in d.signature.symbols:
        tab = {}
        for qs in product(range(d.qsize()), repeat=ar):
            base = d.q_alg.apply(sym, qs)
            tab[qs] = d.neg_at(base, T.value(sym, qs))
        tables[sym] = tab
    return TwoCocycle(tables)


def cocycle_sub(d, T1, T2):
    return cocycle_add(d, T1, cocycle_neg(d, T2))


# --- the derived operation t^{d,T} ----------------------------------------

def e_paths(term):
    """The operation set E_t as wrap paths.

    Each entry is (frames, node): node is the subterm whose head symbol owns
    the transfer cell, frames the chain of (parent, position) wrappers from
    the root down.  Order: the node's own cell first, then subterm sets left
    to right (position 1 wraps through f-delta, positions >= 2 through the
    action).
    """
    if is_var(term):
        return []
    out = [([], term)]
    for k, sub in enumerate(term[1:], start=1):
        if is_var(sub):
            continue
        for frames, node in e_paths(sub):
            out.append(([(term, k)] + frames, node))
    return out


def eval_path(d, T, frames, node, qenv):
    """Evaluate one member of E_t at a Q assignment."""
    args = tuple(d.eval_q(s, qenv) for s in node[1:])
    val = T.value(node[0], args)
    for parent, k in reversed(frames):
        qs = tuple(d.eval_q(s, qenv) for s in parent[1:])
        if k == 1:
            val = d.fdelta_apply(parent[0], val, qs[1:])
        else:
            val = d.action_apply(parent[0], k, qs[:k - 1] + qs[k:], val)
    return val


def partial_derivative(d, T, term, qenv):
    """t^{d,T}: the left-associated sum of E_t at base l(t^Q(q)).

    A bare variable has the empty sum, which is the fiber identity
    delta(l(q)).
    """
    base = d.eval_q(term, qenv)
    values = [eval_path(d, T, frames, node, qenv)
              for frames, node in e_paths(term)]
    return d.sum_at(base, values)


def partial_derivative_recursive(d, T, term, qenv):
    """Same value as partial_derivative, computed by distributing the
    homomorphism property node by node; used as a cross-check."""
    if is_var(term):
        return d.delta_l(qenv[term])
    sym = term[0]
    subs = term[1:]
    qs = tuple(d.eval_q(s, qenv) for s in subs)
    base = d.q_alg.apply(sym, qs)
    if not subs:
        return T.value(sym, ())
    val = d.fdelta_apply(sym, partial_derivative_recursive(d, T, subs[0], qenv),
                         qs[1:])
    for k in range(2, len(subs) + 1):
        inner = partial_derivative_recursive(d, T, subs[k - 1], qenv)
        val = d.plus_at(base, val,
                        d.action_apply(sym, k, qs[:k - 1] + qs[k:], inner))
    return d.plus_at(base, val, T.value(sym, qs))


def check_cocycle(d, T, equations):
    """(C1) fiber condition plus (C2) equational compatibility, exhaustively.

    Returns a report dict; C2 failures carry (equation, assignment, sides).
    """
    failures = []
    for sym, ar in d.signature.symbols:
        for qs in product(range(d.qsize()), repeat=ar):
            expected = d.cell_fiber(sym, qs)
            got = d.dc.rho_class[T.value(sym, qs)]
            if got != expected:
                failures.append({"condition": "C1", "symbol": sym, "args": qs,
                                 "fiber": got, "expected": expected})
    for lhs, rhs in equations:
        varnames = term_vars(lhs)
        for v in term_vars(rhs):
            if v not in varnames:
                varnames.append(v)
        for vals in product(range(d.qsize()), repeat=len(varnames)):
            qenv = dict(zip(varnames, vals))
            lv = partial_derivative(d, T, lhs, qenv)
            rv = partial_derivative(d, T, rhs, qenv)
            if lv != rv:
                failures.append({"condition": "C2",
                                 "equation": (term_to_str(lhs), term_to_str(rhs)),
                                 "env": qenv, "lhs": lv, "rhs": rv})
    return {"claim": "2-cocycle compatible with the equations",
            "holds": not failures, "witness": failures or None}


# --- reconstruction --------------------------------------------------------

def reconstruct(d, T, name=None, verify=True):
    """The algebra on the Delta-class universe built from datum and cocycle.

    Operations are the f-delta term, then the action terms for positions
    2..n, then T_f, summed left-associated at base l(f^Q(q)).  The canonical
    projection onto Q is verified to be a homomorphism rather than assumed.
    """
    U = d.dc.size
    nq = d.qsize()
    if verify:
        for sym, ar in d.signature.symbols:
            for qs in product(range(nq), repeat=ar):
                if d.dc.rho_class[T.value(sym, qs)] != d.cell_fiber(sym, qs):
                    raise DatumError("cocycle violates (C1) at %s%r" % (sym, qs))
    tables = {}
    for sym, ar in d.signature.symbols:
        if ar == 0:
            tables[sym] = (T.value(sym, ()),)
            continue
        flat = []
        for cs in product(range(U), repeat=ar):
            qs = tuple(d.dc.rho_class[c] for c in cs)
            base = d.q_alg.apply(sym, qs)
            val = d.fdelta_apply(sym, cs[0], qs[1:])
            for i in range(2, ar + 1):
                val = d.plus_at(base, val,
                                d.action_apply(sym, i, qs[:i - 1] + qs[i:], cs[i - 1]))
            val = d.plus_at(base, val, T.value(sym, qs))
            flat.append(val)
        tables[sym] = tuple(flat)
    alg = FiniteAlgebra(U, d.signature, tables, name=name or "A_T")
    m_flat = tuple(d.dc.m_class(x, y, z)
                   for x in range(U) for y in range(U) for z in range(U))
    lifting = tuple(d.delta_l(q) for q in range(nq))
    ext = ExtensionRecord(alg, d.dc.rho_class, d.q_alg, m_flat,
                          lifting=lifting, name=alg.name, datum=d)
    return ext


# --- realization -----------------------------------------------------------

def check_realization(ext, d, cap=32):
    """Search for a bijection i and lifting l realizing the datum in ext.

    The bijection is fiber-preserving; the search runs over per-fiber
    bijections and liftings with early pruning.  Returns a report with the
    witness or with "exhausted".
    """
    if ext.q_alg.size != d.qsize():
        return {"claim": "realizes datum", "holds": False,
                "witness": {"reason": "different quotients"}}
    if ext.alg.size > cap:
        raise DatumError("realization search capped at %d elements" % cap)
    if ext.m_flat is None:
        raise DatumError("extension carries no ternary operation")
    alg, beta = ext.alg, ext.beta
    pairalg = pair_algebra(alg, beta)
    d_bb = delta_congruence(alg, beta, beta, pairalg=pairalg)
    rho_pair = [ext.pi[p[0]] for p in pairalg.pairs]
    from .datum import DeltaClasses
    dcb = DeltaClasses(alg.size, ext.m_flat, pairalg.pairs, d_bb, rho_pair)
    if dcb.size != d.dc.size:
        return {"claim": "realizes datum", "holds": False,
                "witness": {"reason": "class counts differ"}}
    nq = d.qsize()

    def quotient_apply(sym, cls_args):
        reps = [dcb.class_reps[c] for c in cls_args]
        top = alg.apply(sym, tuple(r[0] for r in reps))
        bot = alg.apply(sym, tuple(r[1] for r in reps))
        return dcb.class_of_pair(top, bot)

    fibers_b = {q: dcb.fibers[q] for q in range(nq)}
    fibers_a = {q: d.fiber(q) for q in range(nq)}
    if any(len(fibers_b[q]) != len(fibers_a[q]) for q in range(nq)):
        return {"claim": "realizes datum", "holds": False,
                "witness": {"reason": "fiber sizes differ"}}
    blocks = beta.blocks()
    block_of_q = {q: blocks[[ext.pi[b[0]] for b in blocks].index(q)] for q in range(nq)}

    def bij_candidates(q):
        from itertools import permutations
        fb, fa = fibers_b[q], fibers_a[q]
        return [dict(zip(fb, perm)) for perm in permutations(fa)]

    def check(i_map, lift):
        dl = {q: dcb.delta_of[lift[q]] for q in range(nq)}
        for sym, ar in d.signature.symbols:
            if ar >= 2:
                for pos in range(1, ar + 1):
                    for qs in product(range(nq), repeat=ar - 1):
                        for x in range(dcb.size):
                            args = [dl[q] for q in qs[:pos - 1]] + [x] + \
                                   [dl[q] for q in qs[pos - 1:]]
                            rhs = i_map[quotient_apply(sym, args)]
                            lhs = d.action_apply(sym, pos, qs, i_map[x])
                            if lhs != rhs:
                                return False
            elif ar == 1:
                for x in range(dcb.size):
                    if d.fdelta_apply(sym, i_map[x], ()) != i_map[quotient_apply(sym, [x])]:
                        return False
            else:
                cls = dcb.class_of_pair(alg.tables[sym][0], alg.tables[sym][0])
                if d.fdelta[sym][()] != i_map[cls]:
                    return False
        return True

    lift_pools = [block_of_q[q] for q in range(nq)]
    bij_pools = [bij_candidates(q) for q in range(nq)]
    for lift in product(*lift_pools):
        for parts in product(*bij_pools):
            i_map = {}
            for part in parts:
                i_map.update(part)
            if check(i_map, lift):
                return {"claim": "realizes datum", "holds": True,
                        "witness": {"bijection": [i_map[c] for c in range(dcb.size)],
                                    "lifting": list(lift)}}
    return {"claim": "realizes datum", "holds": False,
            "witness": {"reason": "exhausted"}}


# --- semidirect test --------------------------------------------------------

def is_semidirect(ext):
    """A retraction r with r.r = r, ker r = beta, r a homomorphism, or None.

    Retractions constant on kernel blocks are exactly the choices of one
    representative per block, so the search is over those.
    """
    alg, beta = ext.alg, ext.beta
    blocks = beta.blocks()
    for reps in product(*blocks):
        r = [0] * alg.size
        for block, rep in zip(blocks, reps):
            for x in block:
                r[x] = rep
        if is_homomorphism(r, alg, alg):
            return r
    return None


# --- transfer products ------------------------------------------------------

def tensor_product(b_alg, q_alg, plus_table, transfers, name=None):
    """Algebra on B x Q with f((b1,q1),..) = (f(b) + T_f(q), f(q)).

    plus_table is a flat binary table on B; transfers maps each symbol to a
    dict Q-tuple -> B.  Pair (b,q) is encoded b*|Q|+q; the right projection
    is a homomorphism onto Q by construction.
    """
    if b_alg.signature != q_alg.signature:
        raise AlgebraError("factors must share the signature")
    nb, nq = b_alg.size, q_alg.size
    n = nb * nq
    tables = {}
    for sym, ar in b_alg.signature.symbols:
        tf = transfers[sym]
        if ar == 0:
            b = plus_table[b_alg.tables[sym][0] * nb + tf[()]]
            tables[sym] = (b * nq + q_alg.tables[sym][0],)
            continue
        flat = []
        for args in product(range(n), repeat=ar):
            bs = tuple(a // nq for a in args)
            qs = tuple(a % nq for a in args)
            b = plus_table[b_alg.apply(sym, bs) * nb + tf[qs]]
            flat.append(b * nq + q_alg.apply(sym, qs))
        tables[sym] = tuple(flat)
    return FiniteAlgebra(n, b_alg.signature, tables,
                         name=name or "%s(x)%s" % (b_alg.name, q_alg.name))


def tensor_right_kernel(b_alg, q_alg):
    """ker of the right projection of a tensor product, as a congruence."""
    nb, nq = b_alg.size, q_alg.size
    return kernel_of_map([x % nq for x in range(nb * nq)], nb * nq)


# --- coboundary difference ---------------------------------------------------

def coboundary_of(d, h):
    """The 2-coboundary G_f produced by a fiber-respecting h: Q -> classes.

    G_f(x) = f-delta(h(x1), l(x2..)) -_u h(f(x)) +_u sum of action terms,
    left-associated at u = l(f(x)).
    """
    tables = {}
    nq = d.qsize()
    for sym, ar in d.signature.symbols:
        tab = {}
        for qs in product(range(nq), repeat=ar):
            base = d.q_alg.apply(sym, qs)
            if ar == 0:
                tab[()] = d.neg_at(base, h[base])
                continue
            val = d.fdelta_apply(sym, h[qs[0]], qs[1:])
            val = d.plus_at(base, val, d.neg_at(base, h[base]))
            for i in range(2, ar + 1):
                val = d.plus_at(base, val,
                                d.action_apply(sym, i, qs[:i - 1] + qs[i:], h[qs[i - 1]]))
            tab[qs] = val
        tables[sym] = tab
    return TwoCocycle(tables)


def fiber_respecting_maps(d):
    """All h: Q -> Delta-classes with h(q) in the fiber over q."""
    nq = d.qsize()
    pools = [d.fiber(q) for q in range(nq)]
    return [tuple(h) for h in product(*pools)]


def cocycle_difference_coboundary(d, T, Tp):
    """A witness h with coboundary(h) = T' - T, or None."""
    target = cocycle_sub(d, Tp, T).serialize(d)
    for h in fiber_respecting_maps(d):
        if coboundary_of(d, h).serialize(d) == target:
            return h
    return None


def extension_satisfies(ext, equations):
    """Direct equation check on a (reconstructed) extension's tables."""
    from .algebras import satisfies
    return satisfies(ext.alg, equations) is None


# --- the A(alpha)/Delta_{alpha 1} transfer decomposition ---------------------

def delta_quotient(alg, alpha, beta, cap=DEFAULT_CAP):
    """A(alpha)/Delta_{alpha beta} as an algebra, with the pair algebra and
    the pair-index -> class map."""
    from .algebras import quotient_algebra
    pairalg = pair_algebra(alg, alpha, cap=cap)
    dcong = delta_congruence(alg, alpha, beta, cap=cap, pairalg=pairalg)
    qalg, classmap = quotient_algebra(pairalg, dcong)
    return qalg, pairalg, classmap


def central_tensor_decomposition(alg, alpha, difference_term, cap=DEFAULT_CAP):
    """A/[alpha,1] as B (x)^T Q with B = A(alpha)/Delta_{alpha 1}, Q = A/alpha.

    The transfer is T_f(q) = [r(f(l(q))) // f(l(q))]/Delta_{alpha 1} and the
    sum on B is d(x, 0, y) at the diagonal class 0.  Representative
    independence of the transfer is asserted.  Returns a dict with the
    factors, the product and the isomorphism (None if not found).
    """
    from .algebras import quotient_algebra, find_isomorphism
    from .commutator import tc_commutator, is_abelian
    from .congruences import Congruence
    from .terms import eval_term

    n = alg.size
    if not is_abelian(alg, alpha, cap=cap):
        raise DatumError("alpha is not abelian")
    b_alg, pairalg, classmap = delta_quotient(alg, alpha, Congruence.all(n), cap=cap)
    diag = {classmap[pairalg.pair_index[(u, u)]] for u in range(n)}
    if len(diag) != 1:
        raise DatumError("diagonal is not a single Delta_{alpha 1} class")
    zero = diag.pop()
    plus = tuple(eval_term(b_alg, difference_term, {"x0": x, "x1": zero, "x2": y})
                 for x in range(b_alg.size) for y in range(b_alg.size))
    q_alg, blockmap = quotient_algebra(alg, alpha)
    lifting = [min(x for x in range(n) if blockmap[x] == q)
               for q in range(q_alg.size)]
    blocks_by_q = {}
    for x in range(n):
        blocks_by_q.setdefault(blockmap[x], []).append(x)
    transfers = {}
    for sym, ar in alg.signature.symbols:
        tf = {}
        for qs in product(range(q_alg.size), repeat=ar):
            vals = set()
            for xs in product(*(blocks_by_q[q] for q in qs)):
                fx = alg.apply(sym, xs)
                rfx = lifting[blockmap[fx]]
                frx = alg.apply(sym, tuple(lifting[blockmap[x]] for x in xs))
                vals.add(classmap[pairalg.pair_index[(rfx, frx)]])
            if len(vals) != 1:
                raise DatumError("transfer for %r depends on representatives" % sym)
            tf[qs] = vals.pop()
        transfers[sym] = tf
    prod_alg = tensor_product(b_alg, q_alg, plus, transfers)
    comm = tc_commutator(alg, alpha, Congruence.all(n), cap=cap)
    target, _ = quotient_algebra(alg, comm)
    iso = find_isomorphism(target, prod_alg)
    return {"B": b_alg, "Q": q_alg, "plus": plus, "zero": zero,
            "transfers": transfers, "product": prod_alg, "target": target,
            "iso": iso}


def two_step_decomposition(alg, difference_term, cap=DEFAULT_CAP):
    """Represent a 2-step nilpotent algebra as a right-associated transfer
    product of two abelian algebras.  Returns the decomposition dict with a
    'nilpotent' flag for [1,[1,1]] = 0."""
    from .commutator import tc_commutator
    from .congruences import Congruence
    one = Congruence.all(alg.size)
    derived = tc_commutator(alg, one, one, cap=cap)
    step2 = tc_commutator(alg, one, derived, cap=cap)
    if not step2.is_equality():
        return {"nilpotent": False, "derived": derived, "step2": step2}
    out = central_tensor_decomposition(alg, derived, difference_term, cap=cap)
    out["nilpotent"] = True
    out["derived"] = derived
    return out


def is_two_step_nilpotent(alg, cap=DEFAULT_CAP):
    from .commutator import tc_commutator
    from .congruences import Congruence
    one = Congruence.all(alg.size)
    derived = tc_commutator(alg, one, one, cap=cap)
    return tc_commutator(alg, one, derived, cap=cap).is_equality()


def lower_central_series(alg, cap=DEFAULT_CAP, max_steps=8):
    """[1]_1 = [1,1], [1]_{k+1} = [1,[1]_k] until equality or stabilization.

    Returns (series, nilpotent); series[k] is [1]_k (series[0] = 1)."""
    from .commutator import tc_commutator
    from .congruences import Congruence
    one = Congruence.all(alg.size)
    series = [one]
    while len(series) <= max_steps:
        nxt = tc_commutator(alg, one, series[-1], cap=cap)
        if nxt.is_equality():
            series.append(nxt)
            return series, True
        if nxt == series[-1]:
            series.append(nxt)
            return series, False
        series.append(nxt)
    return series, False


def nilpotent_decomposition(alg, difference_term, cap=DEFAULT_CAP):
    """Right-associated transfer-product decomposition of a nilpotent
    algebra into abelian factors.

    Each step peels the last nonzero lower-central term alpha, which is
    central and abelian, giving alg ~= B (x)^T (alg/alpha); the quotient is
    decomposed recursively and the transfer is re-indexed along the
    recursive isomorphism.  Returns a dict with the factor list, the nested
    product and the isomorphism, or nilpotent=False.
    """
    from .algebras import find_isomorphism
    from .commutator import is_abelian
    from .congruences import Congruence
    if is_abelian(alg, Congruence.all(alg.size), cap=cap):
        return {"nilpotent": True, "factors": [alg], "product": alg,
                "iso": list(range(alg.size)), "steps": 1}
    series, nilpotent = lower_central_series(alg, cap=cap)
    if not nilpotent:
        return {"nilpotent": False, "series": series}
    alpha = series[-2]  # last nonzero term; [1, alpha] = 0 so alpha is central
    out = central_tensor_decomposition(alg, alpha, difference_term, cap=cap)
    sub = nilpotent_decomposition(out["Q"], difference_term, cap=cap)
    if not sub["nilpotent"]:
        return {"nilpotent": False, "series": series}
    psi = sub["iso"]  # out["Q"] -> sub["product"]
    psi_inv = [0] * len(psi)
    for q, p in enumerate(psi):
        psi_inv[p] = q
    transfers = {}
    for sym, tf in out["transfers"].items():
        transfers[sym] = {tuple(ps): tf[tuple(psi_inv[p] for p in ps)]
                          for ps in (tuple(k) for k in
                                     product(range(len(psi)),
                                             repeat=alg.signature.arity(sym)))}
    prod_alg = tensor_product(out["B"], sub["product"], out["plus"], transfers)
    iso = find_isomorphism(alg, prod_alg)
    if iso is None:
        raise DatumError("nilpotent decomposition lost the isomorphism")
    return {"nilpotent": True, "factors": [out["B"]] + sub["factors"],
            "product": prod_alg, "iso": iso, "steps": 1 + sub["steps"]}
