from __future__ import annotations

import random

from htorus.gf2 import Gf2System, bits_of, parity



def test_bits_and_parity():
    assert list(bits_of(0b10110)) == [1, 2, 4]
    assert parity(0b111) == 1 and parity(0) == 0


def test_solve_against_brute_force():
    rng = random.Random(3)
    for _ in range(300):
        nv, nr = rng.randint(1, 7), rng.randint(1, 8)
        rows = [rng.getrandbits(nv) for _ in range(nr)]
        b = rng.getrandbits(nr)
        sys_ = Gf2System(nv, rows, b)
        sols = [y for y in range(2 ** nv) if sys_.evaluate(y) == b]
        y = sys_.solve()
        assert (y is None) == (not sols)
        assert sys_.is_consistent() == bool(sols)
        if y is not None:
            assert sys_.check(y)
        for v in sys_.null_space():
            assert sys_.evaluate(v) == 0
        assert len(sys_.null_space()) == nv - sys_.rank
        for c in sys_.left_null_space():
            acc = 0
            for i in bits_of(c):
                acc ^= rows[i]
            assert acc == 0
        assert len(sys_.left_null_space()) == nr - sys_.rank


def test_rank_matches_gf2_brute_force():
    rng = random.Random(4)
    for _ in range(100):
        nv, nr = rng.randint(1, 6), rng.randint(1, 6)
        rows = [rng.getrandbits(nv) for _ in range(nr)]
        span = {0}
        for r in rows:
            span |= {s ^ r for s in span}
        assert 2 ** Gf2System(nv, rows).rank == len(span)


def test_reduce_is_idempotent_and_samples_solve():
    rng = random.Random(5)
    sys_ = Gf2System(10, [rng.getrandbits(10) for _ in range(6)])
    sys_.reduce()
    before = sys_.reduced_rows
    sys_.reduce()
    assert sys_.reduced_rows == before
    again = Gf2System(10, before)
    assert again.rank == sys_.rank
    b = sys_.evaluate(rng.getrandbits(10))
    for y in sys_.sample_solutions(20, rng, b):
        assert sys_.check(y, b)


def test_add_row_invalidates_cache():
    s = Gf2System(2, [0b01])
    assert s.solve(0b1) == 0b01
    s.add_row(0b01, 0)
    assert s.solve() is not None and s.solve(0b01) is None
