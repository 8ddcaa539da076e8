import pytest

from cubic_manin import primes
from cubic_manin.ring import make_field, norm
from cubic_manin.primes import (
    CACHE_ENV,
    cache_path,
    load_or_sieve,
    primes_up_to,
    read_cache,
    write_cache,
)


def test_cache_round_trip(tmp_path):
    f = make_field(-7)
    plist = primes_up_to(f, 2000)
    path = cache_path(tmp_path, f)
    write_cache(path, f, 2000, plist)
    assert path.name == "qprimes_n-7.txt"
    assert path.read_text().splitlines()[0] == "# qprimes v1 n=-7 bound=2000"
    assert read_cache(path, f) == (2000, plist)


def test_cache_header_mismatch(tmp_path):
    f, g = make_field(-7), make_field(-11)
    path = cache_path(tmp_path, f)
    write_cache(path, f, 500, primes_up_to(f, 500))
    assert read_cache(path, g) is None
    path.write_text("# qprimes v0 n=-7 bound=500\n")
    assert read_cache(path, f) is None
    assert read_cache(tmp_path / "missing.txt", f) is None


def test_cache_norm_mismatch(tmp_path):
    f = make_field(-1)
    path = cache_path(tmp_path, f)
    path.write_text("# qprimes v1 n=-1 bound=10\n1 1 3\n")
    assert read_cache(path, f) is None


def test_load_or_sieve_resieves(tmp_path):
    f = make_field(-2)
    path = cache_path(tmp_path, f)
    write_cache(path, f, 100, primes_up_to(f, 100))
    got = load_or_sieve(f, 1000, tmp_path)
    assert got == primes_up_to(f, 1000)
    assert read_cache(path, f)[0] == 1000
    # a covering cache is reused and restricted
    assert load_or_sieve(f, 50, tmp_path) == primes_up_to(f, 50)


def test_load_from_env(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    f = make_field(-43)
    got = load_or_sieve(f, 300)
    assert got == primes_up_to(f, 300)
    assert cache_path(tmp_path, f).exists()


def test_sieve_sorted_by_norm():
    f = make_field(-163)
    plist = primes.sieve_primes(f, 3000)
    keys = [(norm(f, p), p.a, p.b) for p in plist]
    assert keys == sorted(keys)
    assert plist == primes_up_to(f, 3000)


@pytest.mark.parametrize("X", [0, 1, 1.9])
def test_no_primes_below_two(X):
    assert primes_up_to(make_field(-1), X) == []
