"""Sylow p-subgroups and the p-structure predicates used by the classifier.

Everything here works on fully enumerated groups; results are exact and
brute-force checkable by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .perms import PermGroup, Permutation, ResourceLimit, normalizer

MAX_SYLOW_COUNT = 10**4


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


@dataclass
class SylowData:
    p: int
    representative: PermGroup
    count: int
    normalizer_index: int
    conjugates: Optional[list[frozenset[bytes]]] = None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "sylow_order": self.representative.order,
            "count": self.count,
            "normalizer_index": self.normalizer_index,
        }


def _least_p_element(G: PermGroup, p: int) -> Permutation:
    """Least element (by image array) of order a positive power of p.

    A power of any element whose order is divisible by p works; taking
    g^(ord/p-part) gives a p-element directly, so a single sorted pass
    suffices.
    """
    for g in G.iter_elements():
        ordg = g.order()
        if ordg % p == 0:
            return g ** (ordg // p_part(ordg, p))
    raise ValueError(f"{p} does not divide |G| = {G.order}")


def find_sylow(G: PermGroup, p: int) -> PermGroup:
    """A Sylow p-subgroup of G, grown inside successive normalizers."""
    target = p_part(G.order, p)
    if target == 1:
        raise ValueError(f"{p} does not divide |G| = {G.order}")
    P = G.subgroup([_least_p_element(G, p)], name=f"Sylow_{p}")
    while P.order < target:
        N = normalizer(G, P)
        extended = False
        for g in N.iter_elements():
            ordg = g.order()
            if ordg > 1 and p_part(ordg, p) == ordg and g not in P:
                P = G.subgroup(list(P.generators) + [g], name=f"Sylow_{p}")
                extended = True
                break
        if not extended:  # pragma: no cover - impossible by Sylow theory
            raise AssertionError("Sylow extension step failed")
    return P


def all_sylows(G: PermGroup, p: int) -> SylowData:
    """All conjugates of one Sylow p-subgroup, with count and index."""
    P = find_sylow(G, p)
    pkeys = P.element_keys
    pgen = list(P.generators)
    elems = G.elements
    n = G.degree
    seen: dict[frozenset[bytes], list[Permutation]] = {}
    # conjugate the generator set by every element; distinct generated
    # subgroups are exactly the conjugates (counted via their element sets)
    inv_rows = np.empty_like(elems)
    ar = np.arange(n, dtype=np.int32)
    for i in range(elems.shape[0]):
        inv_rows[i, elems[i]] = ar
    conj_keysets: set[frozenset[bytes]] = set()
    norm_count = 0
    conj_list: list[frozenset[bytes]] = []
    pelems = [Permutation(row) for row in P.elements]
    for i in range(elems.shape[0]):
        ginv = inv_rows[i]
        grow = elems[i]
        keyset = frozenset(
            grow[h.images[ginv]].tobytes() for h in pelems
        )
        if keyset == pkeys:
            norm_count += 1
        if keyset not in conj_keysets:
            conj_keysets.add(keyset)
            conj_list.append(keyset)
            if len(conj_list) > MAX_SYLOW_COUNT:
                raise ResourceLimit("too many Sylow subgroups")
    count = len(conj_list)
    norm_index = G.order // norm_count
    if count != norm_index:  # pragma: no cover - internal consistency
        raise AssertionError("Sylow count disagrees with normalizer index")
    return SylowData(p, P, count, norm_index, conj_list)


def is_p_group(P: PermGroup, p: int) -> bool:
    return p_part(P.order, p) == P.order


def is_elementary_abelian(P: PermGroup, p: int) -> bool:
    """True iff P is an abelian p-group with every non-identity element of order p."""
    if not is_p_group(P, p):
        raise ValueError("P is not a p-group")
    elems = [Permutation(row) for row in P.elements]
    for g in elems:
        if not g.is_identity() and g.order() != p:
            return False
    for i, g in enumerate(elems):
        for h in elems[i + 1:]:
            if (g * h) != (h * g):
                return False
    return True


def frattini_subgroup(P: PermGroup, p: int) -> PermGroup:
    """Phi(P) for a p-group: generated by p-th powers and commutators."""
    if not is_p_group(P, p):
        raise ValueError("P is not a p-group")
    elems = [Permutation(row) for row in P.elements]
    gens = [g**p for g in elems]
    for g in elems:
        ginv = g.inverse()
        for h in elems:
            gens.append(ginv * h.inverse() * g * h)
    return P.subgroup(gens, name="Frattini")


def center(P: PermGroup) -> PermGroup:
    elems = [Permutation(row) for row in P.elements]
    members = [
        g for g in elems
        if all((g * h) == (h * g) for h in P.generators)
    ]
    return P.subgroup(members, name="center")


def frattini_center_element(P: PermGroup, p: int) -> Permutation:
    """Least order-p element of Phi(P) & Z(P); errors when P is elementary abelian."""
    if is_elementary_abelian(P, p):
        raise ValueError("P is elementary abelian; no Frattini-center element")
    phi = frattini_subgroup(P, p)
    zkeys = center(P).element_keys
    for g in phi.iter_elements():  # elements come lexicographically sorted
        if g._key in zkeys and g.order() == p:
            return g
    raise AssertionError("nontrivial Frattini-center element must exist")


def o_pprime_residual(G: PermGroup, p: int) -> PermGroup:
    """O^{p'}(G): the subgroup generated by all p-elements (all Sylow p-subgroups)."""
    gens = []
    for g in G.iter_elements():
        ordg = g.order()
        if ordg > 1 and p_part(ordg, p) == ordg:
            gens.append(g)
    return G.subgroup(gens, name=f"O^{p}'")


def conjugacy_classes(G: PermGroup) -> list[list[Permutation]]:
    """Conjugacy classes, each sorted, ordered by least member."""
    elems = [Permutation(row) for row in G.elements]
    remaining = {g._key: g for g in elems}
    classes = []
    while remaining:
        g = next(iter(remaining.values()))
        cls = {}
        for h in elems:
            c = h.inverse() * g * h
            cls[c._key] = c
        for key in cls:
            remaining.pop(key, None)
        classes.append(sorted(cls.values(), key=lambda x: tuple(x.images)))
    classes.sort(key=lambda cls: tuple(cls[0].images))
    return classes


def _normal_closure(G: PermGroup, seeds: list[Permutation]) -> PermGroup:
    gens = []
    for g in seeds:
        for h in G.iter_elements():
            gens.append(h.inverse() * g * h)
    return G.subgroup(gens, name="normal closure")


def p_prime_core(G: PermGroup, p: int) -> PermGroup:
    """O_{p'}(G): join of normal closures of classes whose closure is a p'-group."""
    gens: list[Permutation] = []
    for cls in conjugacy_classes(G):
        closure = _normal_closure(G, [cls[0]])
        if closure.order % p != 0:
            gens.extend(cls)
    return G.subgroup(gens, name=f"O_{p}'")


def op_p_core(G: PermGroup, p: int) -> PermGroup:
    """O_p(G): join of normal closures of classes whose closure is a p-group."""
    gens: list[Permutation] = []
    for cls in conjugacy_classes(G):
        closure = _normal_closure(G, [cls[0]])
        if is_p_group(closure, p):
            gens.extend(cls)
    return G.subgroup(gens, name=f"O_{p}")


def is_Opp(G: PermGroup, p: int) -> bool:
    """True iff G = O_{p',p}(G), i.e. G/O_{p'}(G) is a p-group."""
    quotient_order = G.order // p_prime_core(G, p).order
    return p_part(quotient_order, p) == quotient_order
