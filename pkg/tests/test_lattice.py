import random

import pytest
from hypothesis import given, strategies as st

from k3fib.exactmath import IntMatrix, rational_inverse
from k3fib.lattice import (Lattice, LatticeError, PreconditionError, discriminant_group, drop_prime_square,
                           embed_into_unimodular, genus1_divisor_mod_p, hasse_invariant, hilbert_symbol,
                           index_p_sublattice, kummer_ns_lattice, overlattice, rationally_isometric,
                           root_sublattice, short_vectors, standard_lattice)

UNIMOD = standard_lattice("U+E8+E8")


def sublattice_chain(base, p, target, rng):
    L = base
    while abs(L.disc) < target:
        w = [rng.randint(-3, 3) for _ in range(L.rank)]
        try:
            L = index_p_sublattice(L, w, p)
        except LatticeError:
            pass
    return L


@pytest.mark.parametrize("name, disc", [("E8", 1), ("E7", -2), ("D4", 4), ("A2", 3), ("U", -1),
                                        ("E8+E7+U", 2), ("D9+E7+U", -8), ("U+E8+E8", -1)])
def test_discriminants(name, disc):
    assert standard_lattice(name).disc == disc


def test_root_lattices_negative_definite_even():
    for name in ("A3", "D5", "E6", "E7", "E8"):
        L = standard_lattice(name)
        assert L.is_even and L.is_negative_definite()


def test_discriminant_groups():
    assert discriminant_group(standard_lattice("D4")).orders == (2, 2)
    assert discriminant_group(standard_lattice("A4")).orders == (5,)
    assert discriminant_group(standard_lattice("E8")).orders == ()


def test_kummer_lattice():
    K = kummer_ns_lattice()
    assert (K.rank, K.disc, K.signature) == (18, -16, (1, 17))
    assert rationally_isometric(standard_lattice("E8^2+U"), K)
    assert not rationally_isometric(standard_lattice("E8^2+U"), standard_lattice("U+E8+D7+A1"))


def test_root_count_e8():
    assert len(short_vectors(standard_lattice("E8"), 2)) == 120  # one of each +-pair
    rs = root_sublattice(standard_lattice("E7+A1"))
    assert rs.names == ["A1", "E7"]


def test_hilbert_symbols():
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, 3) == 1
    assert hilbert_symbol(2, 3, 3) == -1
    assert hilbert_symbol(5, 7, 2) == 1


def test_overlattice_not_proper():
    with pytest.raises(LatticeError):
        overlattice(standard_lattice("U"), [1, 0])


def test_embedding_chain_from_disc_minus_64():
    L = sublattice_chain(UNIMOD, 2, 64, random.Random(3))
    chain = embed_into_unimodular(L)
    discs = [L.disc] + [M.disc for M in chain]
    assert discs == [-64, -16, -4, -1]
    assert all(M.is_even for M in chain)


def test_drop_prime_square():
    L = sublattice_chain(standard_lattice("U+E8+E7"), 3, 18, random.Random(1))
    chain = drop_prime_square(L, 3)
    assert L.disc == 18 and chain[-1].disc == 2


def test_drop_prime_preconditions():
    with pytest.raises(PreconditionError):
        drop_prime_square(standard_lattice("U+E8"), 3)
    with pytest.raises(PreconditionError):
        drop_prime_square(UNIMOD, 2)


def _genus1_instance(p):
    k = p * p * (4 if p == 2 else 1)
    w = [1, k] + [0] * 16
    L = index_p_sublattice(UNIMOD, w, p)
    inv = rational_inverse(L.basis)
    return L, [int(sum(w[a] * inv[a][b] for a in range(18))) for b in range(18)]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_genus1_divisor(p):
    L, D = _genus1_instance(p)
    Dp = genus1_divisor_mod_p(L, p, D)
    assert L.norm(Dp) == 0
    assert all((a - b) % p == 0 for a, b in zip(Dp, D))
    g = 0
    from math import gcd
    for c in L.pairings(Dp):
        g = gcd(g, int(c))
    assert g % p == 0 and g % (p * p) != 0


def test_genus1_rank_gate():
    L = standard_lattice("U+E8+A2")
    with pytest.raises(PreconditionError, match="rank < 13"):
        genus1_divisor_mod_p(L, 3, [3] + [0] * 11)


def _random_unimodular(n, rng, steps=12):
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return IntMatrix(rows)


@given(st.integers(0, 10 ** 6), st.sampled_from(["D4+A2", "E6+U", "A1+A1+A3", "D5+U(2)"]),
       st.sampled_from([2, 3, 5, 7]))
def test_hasse_invariant_basis_independent(seed, name, p):
    rng = random.Random(seed)
    L = standard_lattice(name)
    B = _random_unimodular(L.rank, rng)
    M = L.change_basis(B)
    assert M.disc == L.disc
    assert hasse_invariant(M, p) == hasse_invariant(L, p)
    assert rationally_isometric(L, M)


@given(st.integers(0, 10 ** 6), st.sampled_from(["D4+D4", "A1+A1+E7", "D6+U", "A3+A3+U"]))
def test_overlattice_laws(seed, name):
    rng = random.Random(seed)
    L = standard_lattice(name)
    dg = discriminant_group(L)
    elems = [tuple(rng.randrange(d) for d in dg.orders) for _ in range(8)]
    for c in elems:
        if any(c) and dg.q(c) == 0:
            n = 1
            while any(dg.scale(c, n)):
                n += 1
            M = overlattice(L, dg.vector(c))
            assert M.is_even
            assert M.disc * n * n == L.disc
            return


def test_lattice_json_round_trip():
    L = standard_lattice("D4+U")
    assert Lattice.from_json(L.to_json()).gram == L.gram
