"""Prime elements up to a norm bound, with an on-disk text cache."""

from __future__ import annotations

import logging
import math
import os
import threading
from pathlib import Path

from sympy import primerange

from .ring import FieldDescriptor, QuadInt, norm, primes_above

log = logging.getLogger(__name__)

CACHE_ENV = "CUBIC_MANIN_CACHE_DIR"
CACHE_VERSION = "v1"

_lock = threading.Lock()
_memory: dict[int, tuple[int, list[QuadInt]]] = {}


def sieve_primes(field: FieldDescriptor, X: float) -> list[QuadInt]:
    X = int(math.floor(X))
    out = []
    for p in primerange(2, X + 1):
        for pi in primes_above(field, p):
            if norm(field, pi) <= X:
                out.append(pi)
    out.sort(key=lambda x: (norm(field, x), x.a, x.b))
    return out


def primes_up_to(field: FieldDescriptor, X: float) -> list[QuadInt]:
    """Canonical primes of norm <= X, one per prime ideal, sorted by norm then (a, b)."""
    X = int(math.floor(X))
    if X < 2:
        return []
    cached = _memory.get(field.n)
    if cached is None or cached[0] < X:
        with _lock:
            cached = _memory.get(field.n)
            if cached is None or cached[0] < X:
                cached = (X, sieve_primes(field, X))
                _memory[field.n] = cached
    bound, plist = cached
    if bound == X:
        return list(plist)
    return [p for p in plist if norm(field, p) <= X]


# -- cache file --------------------------------------------------------------

def cache_dir(explicit: str | os.PathLike | None = None) -> Path | None:
    if explicit is not None:
        return Path(explicit)
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else None


def cache_path(directory: Path, field: FieldDescriptor) -> Path:
    return directory / f"qprimes_n{field.n}.txt"


def write_cache(path: Path, field: FieldDescriptor, X: int, plist: list[QuadInt]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        fh.write(f"# qprimes {CACHE_VERSION} n={field.n} bound={X}\n")
        for p in plist:
            fh.write(f"{p.a} {p.b} {norm(field, p)}\n")
    tmp.replace(path)


def read_cache(path: Path, field: FieldDescriptor) -> tuple[int, list[QuadInt]] | None:
    """Parse a cache file; None if missing or the header does not match the field."""
    try:
        fh = open(path)
    except FileNotFoundError:
        return None
    with fh:
        parts = fh.readline().split()
        if len(parts) != 5 or parts[:3] != ["#", "qprimes", CACHE_VERSION]:
            return None
        if parts[3] != f"n={field.n}" or not parts[4].startswith("bound="):
            return None
        bound = int(parts[4][len("bound="):])
        plist = []
        for line in fh:
            a, b, nm = (int(t) for t in line.split())
            p = QuadInt(a, b)
            if norm(field, p) != nm:
                return None
            plist.append(p)
    return bound, plist


def load_or_sieve(field: FieldDescriptor, X: float, directory: str | os.PathLike | None = None) -> list[QuadInt]:
    """Primes of norm <= X, reusing the cache file when it covers X."""
    X = int(math.floor(X))
    d = cache_dir(directory)
    if d is None:
        return primes_up_to(field, X)
    path = cache_path(d, field)
    got = read_cache(path, field)
    if got is not None and got[0] >= X:
        bound, plist = got
        with _lock:
            cur = _memory.get(field.n)
            if cur is None or cur[0] < bound:
                _memory[field.n] = (bound, plist)
        return [p for p in plist if norm(field, p) <= X]
    log.info("re-sieving primes for n=%d up to %d", field.n, X)
    plist = primes_up_to(field, X)
    write_cache(path, field, X, plist)
    return plist
