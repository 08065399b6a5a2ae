"""Benchmark inputs and the per-file statistics columns."""

from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

import numpy as np

RNG_NAME = "numpy.random.PCG64"

FIB_TABLE_LENGTHS = (2178309, 3524578, 5702887, 9227465, 14930352)


@dataclass(frozen=True)
class CorpusSpec:
    kind: str
    target_length: int = 0
    alphabet_size: int = 2
    seed: int = 0
    path: Optional[str] = None

    @classmethod
    def parse(cls, spec: str) -> "CorpusSpec":
        """Parse ``fib:LEN``, ``random:LEN:ALPHABET[:SEED]`` or ``file:PATH``."""
        kind, _, rest = spec.partition(":")
        fields = rest.split(":") if rest else []
        try:
            if kind in ("fib", "fibonacci") and len(fields) == 1:
                return cls("fibonacci", int(fields[0]))
            if kind in ("random", "rnd") and len(fields) in (2, 3):
                seed = int(fields[2]) if len(fields) == 3 else 0
                return cls("random", int(fields[0]), int(fields[1]), seed)
        except ValueError:
            pass
        if kind == "file" and rest:
            return cls("file", path=rest)
        raise ValueError(f"cannot parse corpus spec {spec!r}")

    @property
    def name(self) -> str:
        if self.kind == "fibonacci":
            return f"fib_s{len_fibonacci(self.target_length)}"
        if self.kind == "random":
            return f"rndA{self.alphabet_size}_{self.target_length}_s{self.seed}"
        return Path(self.path).name

    def generate(self) -> bytes:
        if self.kind == "fibonacci":
            return gen_fibonacci(self.target_length)
        if self.kind == "random":
            return gen_random(self.target_length, self.alphabet_size, self.seed)
        return Path(self.path).read_bytes()


@dataclass
class CorpusStats:
    n_text: int
    alphabet_count: int
    n_factors: int
    average_factor_length: float
    s_max: Optional[int]

    def as_dict(self):
        return asdict(self)


def len_fibonacci(min_length: int) -> int:
    a, b = 1, 1
    while b < min_length:
        a, b = b, a + b
    return b


def gen_fibonacci(min_length: int) -> bytes:
    """Shortest Fibonacci word of length >= min_length (F1 = b, F2 = a, Fk = Fk-1 Fk-2)."""
    if min_length < 1:
        raise ValueError("min_length must be >= 1")
    prev, cur = b"b", b"a"
    while len(cur) < min_length:
        prev, cur = cur, cur + prev
    return cur


def gen_random(length: int, alphabet_size: int, seed: int) -> bytes:
    """Uniform bytes over the first ``alphabet_size`` values, reproducible per seed."""
    if not 2 <= alphabet_size <= 256:
        raise ValueError("alphabet_size must be in 2..256")
    if length < 0:
        raise ValueError("length must be non-negative")
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.integers(0, alphabet_size, size=length, dtype=np.uint8).tobytes()


def compute_stats(text, fact, s_max=None) -> CorpusStats:
    n = len(text)
    k = len(fact)
    avg = round(n / k, 2) if k else 0.0
    alphabet = int(np.count_nonzero(np.bincount(np.frombuffer(bytes(text), np.uint8), minlength=256)))
    return CorpusStats(n, alphabet, k, avg, s_max)
