"""Terms over a finite signature, written as s-expressions.

A term is either a variable name ("x0", "x1", ...) or a tuple whose head is
an operation symbol and whose remaining entries are subterms.  Nullary
symbols may be written bare ("e") or in parentheses ("(e)"); both parse to
the one-element tuple ("e",).
"""

import re

_VAR_RE = re.compile(r"^x\d+$")


class TermError(ValueError):
    pass


def is_var(t):
    return isinstance(t, str)


def parse_term(text):
    """Parse an s-expression like "(mul x0 (inv x1))" into a term."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    if not tokens:
        raise TermError("empty term")
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(tokens):
            raise TermError("unexpected end of term: %r" % text)
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens):
                raise TermError("unbalanced parenthesis in %r" % text)
            head = tokens[pos]
            pos += 1
            if head in ("(", ")"):
                raise TermError("expected symbol after '(' in %r" % text)
            args = []
            while pos < len(tokens) and tokens[pos] != ")":
                args.append(read())
            if pos >= len(tokens):
                raise TermError("unbalanced parenthesis in %r" % text)
            pos += 1  # consume ')'
            return (head,) + tuple(args)
        if tok == ")":
            raise TermError("unexpected ')' in %r" % text)
        if _VAR_RE.match(tok):
            return tok
        return (tok,)  # bare nullary symbol

    term = read()
    if pos != len(tokens):
        raise TermError("trailing input in %r" % text)
    return term


def term_to_str(t):
    if is_var(t):
        return t
    if len(t) == 1:
        return t[0]
    return "(" + " ".join([t[0]] + [term_to_str(s) for s in t[1:]]) + ")"


def term_vars(t):
    """Distinct variables of t in left-to-right leaf order."""
    out = []

    def walk(s):
        if is_var(s):
            if s not in out:
                out.append(s)
        else:
            for c in s[1:]:
                walk(c)

    walk(t)
    return out


def term_leaves(t):
    """All variable occurrences of t in left-to-right order (with repeats)."""
    out = []

    def walk(s):
        if is_var(s):
            out.append(s)
        else:
            for c in s[1:]:
                walk(c)

    walk(t)
    return out


def term_depth(t):
    if is_var(t):
        return 0
    if len(t) == 1:
        return 1
    return 1 + max(term_depth(s) for s in t[1:])


def term_symbols(t):
    syms = set()

    def walk(s):
        if not is_var(s):
            syms.add(s[0])
            for c in s[1:]:
                walk(c)

    walk(t)
    return syms


def check_term(t, signature):
    """Raise TermError unless every node of t matches the signature's arities."""
    if is_var(t):
        return
    name = t[0]
    ar = signature.arity(name)
    if ar is None:
        raise TermError("symbol %r not in signature" % name)
    if len(t) - 1 != ar:
        raise TermError("symbol %r expects %d arguments, got %d" % (name, ar, len(t) - 1))
    for s in t[1:]:
        check_term(s, signature)


def eval_term(alg, t, env):
    """Interpret t in alg under the variable assignment env (dict var -> element)."""
    if is_var(t):
        if t not in env:
            raise TermError("unbound variable %r" % t)
        return env[t]
    name = t[0]
    if name not in alg.signature.arities:
        raise TermError("symbol %r not in signature" % name)
    args = [eval_term(alg, s, env) for s in t[1:]]
    return alg.op(name, *args)


def linearize_term(t):
    """Rename leaves of t to x0,x1,... left-to-right with no repeats.

    Returns (t_sigma, sigma) where sigma maps each fresh variable onto the
    variable of t it replaced, so that substituting sigma into t_sigma
    recovers t.
    """
    sigma = {}
    counter = [0]

    def walk(s):
        if is_var(s):
            fresh = "x%d" % counter[0]
            counter[0] += 1
            sigma[fresh] = s
            return fresh
        return (s[0],) + tuple(walk(c) for c in s[1:])

    return walk(t), sigma


GROUP_DIFFERENCE_TERM = parse_term("(mul x0 (mul (inv x1) x2))")
