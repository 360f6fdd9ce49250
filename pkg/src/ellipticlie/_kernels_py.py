"""Pure-Python word kernels.

A polynomial is a plain ``dict`` mapping words to nonzero exact
coefficients (``int`` or ``Fraction``).  Words are ``str`` for the
two-letter algebras and ``tuple`` for the abstract generator algebra;
every kernel only relies on slicing, concatenation and hashing.

The compiled module ``_ckernels`` mirrors this file function for
function and must return identical results.
"""

import heapq


def add_scaled(target, src, c=1):
    """``target += c * src`` in place; drops cancelled terms."""
    if not c:
        return target
    get = target.get
    for w, v in src.items():
        s = get(w, 0) + c * v
        if s:
            target[w] = s
        else:
            target.pop(w, None)
    return target


def scale(p, c):
    if not c:
        return {}
    return {w: c * v for w, v in p.items()}


def mul(a, b):
    out = {}
    get = out.get
    for u, x in a.items():
        for v, y in b.items():
            w = u + v
            s = get(w, 0) + x * y
            if s:
                out[w] = s
            else:
                del out[w]
    return out


def bracket(a, b):
    """Commutator ``ab - ba`` of two polynomials."""
    out = {}
    get = out.get
    for u, x in a.items():
        for v, y in b.items():
            xy = x * y
            w = u + v
            s = get(w, 0) + xy
            if s:
                out[w] = s
            else:
                del out[w]
            w = v + u
            s = get(w, 0) - xy
            if s:
                out[w] = s
            else:
                del out[w]
    return out


def derive(p, images):
    """Apply the associative derivation given by ``images`` (letter -> poly).

    Letters missing from ``images`` are sent to zero.
    """
    out = {}
    get = out.get
    for w, c in p.items():
        n = len(w)
        for i in range(n):
            img = images.get(w[i])
            if not img:
                continue
            head = w[:i]
            tail = w[i + 1:]
            for u, d in img.items():
                key = head + u + tail
                s = get(key, 0) + c * d
                if s:
                    out[key] = s
                else:
                    del out[key]
    return out


def substitute(p, images, maxlen=None):
    """Algebra homomorphism sending each letter to a polynomial.

    Products are truncated to words of length ``<= maxlen`` when given.
    """
    out = {}
    for w, c in p.items():
        acc = {w[:0]: c}
        for letter in w:
            img = images.get(letter)
            if not img:
                acc = {}
                break
            nxt = {}
            get = nxt.get
            for u, x in acc.items():
                for v, y in img.items():
                    if maxlen is not None and len(u) + len(v) > maxlen:
                        continue
                    key = u + v
                    s = get(key, 0) + x * y
                    if s:
                        nxt[key] = s
                    else:
                        del nxt[key]
            acc = nxt
            if not acc:
                break
        add_scaled(out, acc)
    return out


def triangular_reduce(x, lookup):
    """Write ``x`` in a basis that is unitriangular w.r.t. the word order.

    ``lookup(word)`` returns the basis polynomial whose minimal word is
    ``word`` with coefficient 1, or ``None`` when no basis element has
    that leading word.  Returns ``(coords, remainder)``; the remainder is
    empty exactly when ``x`` lies in the span.
    """
    x = dict(x)
    heap = list(x)
    heapq.heapify(heap)
    coords = {}
    while heap:
        w = heapq.heappop(heap)
        c = x.get(w)
        if not c:
            continue
        basis = lookup(w)
        if basis is None:
            return coords, x
        coords[w] = c
        get = x.get
        for u, v in basis.items():
            s = get(u, 0) - c * v
            if s:
                if u not in x:
                    heapq.heappush(heap, u)
                x[u] = s
            else:
                x.pop(u, None)
    return coords, x
