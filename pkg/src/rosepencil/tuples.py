"""Index-tuple combinatorics.

Index tuples are plain python tuples of integers.  They come in two
ranges: non-negative tuples drawn from ``{0:h}`` and negative tuples
drawn from ``{-h:-1}`` (tested after shifting by ``+h``).  All the
bookkeeping that decides where borders land in a bordered pencil --
successor infix property (SIP), column standard form (csf),
consecutions/inversions, the reverse consecution-inversion structure
sequence (RCISS), admissible tuples, symmetric complements,
canonical-form tuples and type-1 rewrites -- lives here.

Everything is a pure function on immutable values.
"""

from collections import deque
from dataclasses import dataclass, field

__all__ = [
    "rev", "neg", "shift", "concat", "string",
    "is_sip", "is_csf", "csf_normalize", "CsfNormalizationError",
    "consecutions", "inversions",
    "total_consecutions", "total_inversions",
    "Rciss", "rciss",
    "AdmissibleTuple", "admissible_tuple", "simple_admissible",
    "symmetric_complement", "is_canonical_form",
    "zr_rewrite", "is_type1_right",
]

CSF_SEARCH_CAP = 10**6


def rev(t):
    """Reversal (t_p, ..., t_1)."""
    return tuple(reversed(t))


def neg(t):
    """Entrywise negation."""
    return tuple(-x for x in t)


def shift(t, k):
    """Entrywise shift t + k."""
    return tuple(x + k for x in t)


def concat(*ts):
    out = ()
    for t in ts:
        out = out + tuple(t)
    return out


def string(k, ell):
    """The string (k:ell) = (k, k+1, ..., ell); empty when k > ell."""
    return tuple(range(k, ell + 1))


def _normalize_range(t, h):
    """Map a tuple from {0:h} or {-h:-1} into {0:h}; reject mixed signs."""
    t = tuple(t)
    if not t:
        return t
    if all(x >= 0 for x in t):
        if any(x > h for x in t):
            raise ValueError(f"tuple entry out of range {{0:{h}}}: {t}")
        return t
    if all(x < 0 for x in t):
        if any(x < -h for x in t):
            raise ValueError(f"tuple entry out of range {{-{h}:-1}}: {t}")
        return shift(t, h)
    raise ValueError(f"mixed-sign index tuple: {t}")


def is_sip(t, h):
    """Successor infix property: every repeated pair i_a = i_b (a < b)
    has some i_c = i_a + 1 strictly between."""
    s = _normalize_range(t, h)
    p = len(s)
    for a in range(p):
        for b in range(a + 1, p):
            if s[a] == s[b]:
                if not any(s[c] == s[a] + 1 for c in range(a + 1, b)):
                    return False
    return True


def _ascending_runs(t):
    """Split into maximal runs ascending by exactly 1."""
    runs = []
    for x in t:
        if runs and x == runs[-1][-1] + 1:
            runs[-1].append(x)
        else:
            runs.append([x])
    return runs


def is_csf(t):
    """True iff t is a concatenation of strings whose right endpoints
    strictly decrease left to right (column standard form)."""
    runs = _ascending_runs(tuple(t))
    ends = [r[-1] for r in runs]
    return all(ends[i] > ends[i + 1] for i in range(len(ends) - 1))


class CsfNormalizationError(RuntimeError):
    pass


def csf_normalize(t, h):
    """Normalize t to column standard form using only swaps of adjacent
    entries i, j with \\|i - j\\| > 1 (which leave the associated matrix
    product unchanged).  Breadth-first search, capped at CSF_SEARCH_CAP
    visited states."""
    s = _normalize_range(t, h)
    offset = tuple(t) != s and len(s) > 0  # negative input range?
    if not is_sip(s, h):
        raise ValueError(f"tuple is not SIP for h={h}: {t}")

    def back(res):
        return shift(res, -h) if offset else res

    if is_csf(s):
        return back(s)
    seen = {s}
    queue = deque([s])
    while queue:
        cur = queue.popleft()
        for k in range(len(cur) - 1):
            if abs(cur[k] - cur[k + 1]) > 1:
                nxt = cur[:k] + (cur[k + 1], cur[k]) + cur[k + 2:]
                if nxt in seen:
                    continue
                if is_csf(nxt):
                    return back(nxt)
                seen.add(nxt)
                queue.append(nxt)
                if len(seen) > CSF_SEARCH_CAP:
                    raise CsfNormalizationError(
                        f"csf search exceeded {CSF_SEARCH_CAP} states for {t}")
    raise CsfNormalizationError(f"no column standard form reachable from {t}")


def consecutions(t, k):
    """c_k(t): the largest p with (k, k+1, ..., k+p) a subtuple of t;
    -1 when k does not occur in t."""
    t = tuple(t)
    if k not in t:
        return -1
    cur = t.index(k)
    p = 0
    while True:
        nxt = None
        for j in range(cur + 1, len(t)):
            if t[j] == k + p + 1:
                nxt = j
                break
        if nxt is None:
            return p
        p += 1
        cur = nxt


def inversions(t, k):
    """i_k(t): the largest p with (k+p, ..., k+1, k) a subtuple of t."""
    return consecutions(rev(t), k)


def _check_permutation(alpha):
    alpha = tuple(alpha)
    m = len(alpha)
    if sorted(alpha) != list(range(m)):
        raise ValueError(f"not a permutation of {{0:{m - 1}}}: {alpha}")
    return alpha, m


def _adjacent_orders(alpha):
    """For j = 0..m-2: True when j+1 occurs after j (a consecution at j)."""
    alpha, m = _check_permutation(alpha)
    pos = [0] * m
    for i, x in enumerate(alpha):
        pos[x] = i
    return [pos[j] < pos[j + 1] for j in range(m - 1)]


def total_consecutions(alpha):
    return sum(_adjacent_orders(alpha))


def total_inversions(alpha):
    ords = _adjacent_orders(alpha)
    return len(ords) - sum(ords)


@dataclass(frozen=True)
class Rciss:
    """Reverse consecution-inversion structure sequence
    (c_1, i_1, ..., c_l, i_l)."""
    pairs: tuple

    @property
    def ell(self):
        return len(self.pairs) // 2

    def c(self, j):
        """c_j, 1-based."""
        return self.pairs[2 * (j - 1)]

    def i(self, j):
        """i_j, 1-based."""
        return self.pairs[2 * (j - 1) + 1]

    def m_partial(self, j):
        """m_j = c_1 + ... + c_j (m_0 = 0)."""
        return sum(self.c(k) for k in range(1, j + 1))

    def n_partial(self, j):
        """n_j = i_1 + ... + i_j (n_0 = 0)."""
        return sum(self.i(k) for k in range(1, j + 1))

    def s_partial(self, j):
        return self.m_partial(j) + self.n_partial(j)


def rciss(alpha):
    """RCISS(alpha): scan adjacency relations from the top index m-2
    downwards, alternating consecution and inversion runs (c_1 may be 0,
    i_l may be 0)."""
    ords = _adjacent_orders(alpha)
    vals = ords[::-1]  # j = m-2 down to 0
    pairs = []
    i = 0
    n = len(vals)
    while True:
        c = 0
        while i < n and vals[i]:
            c += 1
            i += 1
        iv = 0
        while i < n and not vals[i]:
            iv += 1
            i += 1
        pairs += [c, iv]
        if i >= n:
            break
    return Rciss(pairs=tuple(pairs))


@dataclass(frozen=True)
class AdmissibleTuple:
    """Admissible tuple of {0:h} with index p:
    csf = (h-1:h, h-3:h-2, ..., p+1:p+2, 0:p)."""
    h: int
    p: int
    entries: tuple = field(default=())

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def admissible_tuple(h, p):
    if h < 0 or not 0 <= p <= h or (h - p) % 2 != 0:
        raise ValueError(f"no admissible tuple of {{0:{h}}} with index {p}")
    entries = []
    a = h - 1
    while a > p:
        entries += [a, a + 1]
        a -= 2
    entries += list(range(p + 1))
    return AdmissibleTuple(h=h, p=p, entries=tuple(entries))


def simple_admissible(h):
    """The unique admissible tuple with index 0 (h even) or 1 (h odd)."""
    return admissible_tuple(h, h % 2)


def symmetric_complement(w):
    """Symmetric complement c_w of an admissible tuple."""
    if not isinstance(w, AdmissibleTuple):
        raise TypeError("symmetric_complement expects an AdmissibleTuple")
    h, p = w.h, w.p
    if h == 0:
        return ()
    if p == 0:
        return tuple(range(h - 1, 0, -2))
    out = list(range(h - 1, p, -2))
    for q in range(p - 1, 0, -1):  # (0:p)_rev_c = (0:p-1, ..., 0:1, 0)
        out += list(range(q + 1))
    out += [0]
    return tuple(out)


def is_canonical_form(t, h):
    """True iff t = (a_1:h-2, a_2:h-4, ..., a_k:h-2k), k = floor(h/2),
    with a_i >= 0 (individual strings may be empty)."""
    t = tuple(t)
    if not t:
        return True
    if any(x < 0 for x in t):
        return False
    runs = _ascending_runs(t)
    targets = [h - 2 * i for i in range(1, h // 2 + 1)]
    ti = 0
    for run in runs:
        end = run[-1]
        while ti < len(targets) and targets[ti] != end:
            ti += 1
        if ti >= len(targets):
            return False
        ti += 1
    return True


def _csf_strings(alpha):
    """Parse a csf permutation of {0:k} into its strings, left to right."""
    alpha, m = _check_permutation(alpha)
    if not is_csf(alpha):
        raise ValueError(f"tuple not in column standard form: {alpha}")
    return _ascending_runs(alpha)


def zr_rewrite(alpha, s):
    """One right rewrite z_r(alpha, s); alpha a csf permutation of {0:k},
    s the start of a string (s:t) with s < t."""
    strings = _csf_strings(alpha)
    idx = next((i for i, r in enumerate(strings) if r[0] == s), None)
    if idx is None or len(strings[idx]) < 2:
        raise ValueError(f"{s} is not a right index of type-1 for {tuple(alpha)}")
    assert sum(1 for r in strings if r[0] == s) == 1
    if s == 0:
        # split (0:a1) at the right end into (1:a1), (0)
        strings[idx] = strings[idx][1:]
        strings.append([0])
    else:
        # move s from its string onto the end of the next string right
        strings[idx] = strings[idx][1:]
        strings[idx + 1] = strings[idx + 1] + [s]
    out = []
    for r in strings:
        out += r
    return tuple(out)


def is_type1_right(beta, alpha):
    """True iff beta is a right index tuple of type-1 relative to alpha:
    folding zr_rewrite over beta succeeds at every step.  alpha need not
    be given in csf; it is normalized first."""
    alpha, m = _check_permutation(alpha)
    cur = alpha if is_csf(alpha) else csf_normalize(alpha, m - 1)
    for s in beta:
        strings = _csf_strings(cur)
        if not any(r[0] == s and len(r) >= 2 for r in strings):
            return False
        cur = zr_rewrite(cur, s)
    return True
