"""Canonical forms of point sets of PG(F_q^k) under PGL(k, q).

The canonical form of a point set S is the lexicographically least sorted
list of point indices among all images g(S).  Because the points of the
coordinate subspace E_j = <e_{k-j+1}, ..., e_k> carry exactly the indices
0 .. [j;1]_q - 1, that least image sends some ordered basis b_1, b_2, ... of
<S> drawn from S (up to scalars) onto e_k, e_{k-1}, ...; and the image of
S cap <b_1..b_j> is already the final prefix of indices below [j;1]_q.  The
search therefore grows the basis one point at a time and prunes every branch
whose prefix compares worse than the best (or reference) list.

The form is hereditary: dropping the largest point of a canonical set leaves
a canonical set.  That makes orderly generation possible, see ``search``.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import TooLarge
from .geometry import PointSet, ProjectiveSpace, mask_indices, space

MAX_TABLE_VECTORS = 1024


class CanonicalSearch:
    """Per-space tables for the basis-growing search."""

    def __init__(self, pg: ProjectiveSpace):
        q, k = pg.q, pg.k
        self.pg, self.q, self.k = pg, q, k
        nvec = q ** k
        if q > 2 and nvec > MAX_TABLE_VECTORS:
            raise TooLarge(f"canonical forms for PG(F_{q}^{k}) need {nvec}^2 table entries")
        f = pg.field
        self.vec_index = pg.vec_index.tolist()
        self.point_codes = pg.point_codes
        self.boundary = [(q ** j - 1) // (q - 1) for j in range(k + 1)]
        if q > 2:
            digits = [[(v // q ** (k - 1 - i)) % q for i in range(k)] for v in range(nvec)]
            place = pg.place

            def enc(d):
                return sum(x * w for x, w in zip(d, place))

            self.vscale = [[enc([f.mul(s, x) for x in digits[v]]) for v in range(nvec)]
                           for s in range(q)]
            self.vadd = [[enc([f.add(x, y) for x, y in zip(digits[a], digits[b])])
                          for b in range(nvec)] for a in range(nvec)]

    # -- core search ------------------------------------------------------------

    def _run(self, members: int, ref: int | None, test: bool):
        """Depth-first basis search over point masks.

        A sorted index list is lexicographically smaller than another exactly
        when the lowest bit where their masks differ belongs to it, which also
        gives "longer prefix wins" for prefixes restricted to E_j.

        With ``test`` set, ``ref`` is the candidate itself and the result says
        whether no image beats it.  Otherwise the least image mask is returned.
        """
        q = self.q
        vec_index = self.vec_index
        codes = self.point_codes
        boundary = self.boundary
        member_list = mask_indices(members)
        best = [ref]

        def compare(partial: int, j: int) -> int:
            cur = best[0]
            if cur is None:
                return -1
            diff = (partial ^ cur) & ((1 << boundary[j]) - 1)
            if not diff:
                return 0
            return -1 if partial & (diff & -diff) else 1

        if q == 2:
            def extend(span, b, step, inside, images):
                layer = []
                for v, img in span:
                    pre = v ^ b
                    out = img + step
                    layer.append((pre, out))
                    if members >> (pre - 1) & 1:
                        inside |= 1 << (pre - 1)
                        images |= 1 << (out - 1)
                return layer, inside, images
        else:
            vadd, vscale = self.vadd, self.vscale

            def extend(span, b, step, inside, images):
                layer = []
                for mu in range(1, q):
                    mb = vscale[mu][b]
                    shift = mu * step
                    for v, img in span:
                        pre = vadd[v][mb]
                        out = img + shift
                        layer.append((pre, out))
                        p = vec_index[pre]
                        if members >> p & 1 and codes[p] == pre:
                            inside |= 1 << p
                            images |= 1 << vec_index[out]
                return layer, inside, images

        def dfs(span, inside: int, images: int, j: int) -> bool:
            if inside == members:
                if not test and (best[0] is None or compare(images, j) < 0):
                    best[0] = images
                return True
            step = q ** j
            for s in member_list:
                if inside >> s & 1:
                    continue
                for lam in (range(1, q) if j else (1,)):
                    b = codes[s] if lam == 1 else self.vscale[lam][codes[s]]
                    layer, new_inside, new_images = extend(span, b, step, inside, images)
                    c = compare(new_images, j + 1)
                    if c > 0:
                        continue
                    if c < 0 and test:
                        return False
                    if not dfs(span + layer, new_inside, new_images, j + 1):
                        return False
            return True

        ok = dfs([(0, 0)], 0, 0, 0)
        return ok if test else best[0]

    def canonical(self, members: int) -> int:
        # the whole space is fixed by every g and would make the search walk all of PGL
        if not members or members == self.pg.full_mask:
            return members
        return self._run(members, None, test=False)

    def is_canonical(self, members: int) -> bool:
        if not members or members == self.pg.full_mask:
            return True
        return self._run(members, members, test=True)


@lru_cache(maxsize=None)
def searcher(q: int, k: int) -> CanonicalSearch:
    return CanonicalSearch(space(q, k))


def canonical_mask(q: int, k: int, mask: int) -> int:
    return searcher(q, k).canonical(mask)


def is_canonical_mask(q: int, k: int, mask: int) -> bool:
    return searcher(q, k).is_canonical(mask)


def canonical_form(points: PointSet) -> int:
    """Lexicographically least image (as a point-index bit mask) under PGL(k, q)."""
    if points.kind != "set":
        raise ValueError("canonical forms are defined for point sets, not multisets")
    return canonical_mask(points.field.q, points.k, points.membership)
