"""
Counter-based uniform random streams.

A stream is identified by a StreamKey (master_seed, chain_index, level_index). The key is
hashed into a 64-bit word

    w = mix64(mix64(mix64(seed + G) + (chain + 1) * C) + (level + 1) * L)

and draw number i (i = 0, 1, ...) of the stream is

    u_i = (mix64(w + (i + 1) * G) >> 11) * 2^-53

where mix64 is the SplitMix64 finaliser, G = 0x9E3779B97F4A7C15,
C = 0xD1B54A32D192ED03 and L = 0x8CB92BA72F3D8DD7, all arithmetic modulo 2^64.
The output sequence is therefore a pure function of the key and the draw index, so a
stream can be created on any worker in O(1) and the values a chain sees never depend on
scheduling.
"""
from dataclasses import dataclass
from typing import Union

import numpy as np

_MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
CHAIN_GAMMA = np.uint64(0xD1B54A32D192ED03)
LEVEL_GAMMA = np.uint64(0x8CB92BA72F3D8DD7)
START_SALT = 0x5851F42D4C957F2D
_MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_2 = np.uint64(0x94D049BB133111EB)
_SHIFT_30 = np.uint64(30)
_SHIFT_27 = np.uint64(27)
_SHIFT_31 = np.uint64(31)
_SHIFT_11 = np.uint64(11)
_TWO_POW_MINUS_53 = 2.0**-53


def _as_words(values) -> np.ndarray:
    return np.atleast_1d(np.asarray(values, dtype=np.uint64))


def mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _SHIFT_30)) * _MIX_1
    z = (z ^ (z >> _SHIFT_27)) * _MIX_2
    return z ^ (z >> _SHIFT_31)


def stream_words(master_seed: int, chain_indices, level_indices) -> np.ndarray:
    """Hashes keys into stream words; chain and level indices broadcast against each other."""
    seed = _as_words(master_seed & _MASK64)
    chains = _as_words(chain_indices)
    levels = _as_words(level_indices)
    word = mix64(seed + GOLDEN_GAMMA)
    word = mix64(word + (chains + np.uint64(1)) * CHAIN_GAMMA)
    return mix64(word + (levels + np.uint64(1)) * LEVEL_GAMMA)


def uniforms_at(words: np.ndarray, counter: int) -> np.ndarray:
    """Draw number `counter` of every stream in `words`, as doubles in [0, 1)."""
    step = _as_words(counter + 1) * GOLDEN_GAMMA
    bits = mix64(words + step)
    return (bits >> _SHIFT_11).astype(np.float64) * _TWO_POW_MINUS_53


def coordinate_from_uniform(u: Union[float, np.ndarray], n: int):
    return np.minimum((np.asarray(u) * n).astype(np.int64), n - 1)


@dataclass(frozen=True)
class StreamKey:
    master_seed: int
    chain_index: int = 0
    level_index: int = 0

    def __post_init__(self):
        if self.chain_index < 0 or self.level_index < 0:
            raise ValueError(
                f"Stream indices must be non-negative, got chain {self.chain_index} level {self.level_index}"
            )


def start_stream_key(master_seed: int, chain_index: int) -> StreamKey:
    """Key of the stream that draws a chain's random start point."""
    return StreamKey((master_seed ^ START_SALT) & _MASK64, chain_index, 0)


class UniformStream:
    """Single uniform stream; `counter` is the index of the next draw."""

    def __init__(self, key: StreamKey, counter: int = 0):
        self.key = key
        self.counter = counter
        self._word = stream_words(key.master_seed, key.chain_index, key.level_index)

    def next_uniform(self) -> float:
        u = float(uniforms_at(self._word, self.counter)[0])
        self.counter += 1
        return u

    def next_coordinate_index(self, n: int) -> int:
        if n < 1:
            raise ValueError(f"Coordinate count must be >= 1, got {n}")
        return int(coordinate_from_uniform(self.next_uniform(), n))

    def copy(self) -> "UniformStream":
        return UniformStream(self.key, self.counter)

    def __repr__(self):
        return f"UniformStream({self.key}, counter={self.counter})"


class StreamBlock:
    """
    The streams of a tile of chains advancing in lockstep. Column c reproduces, bit for bit,
    the scalar UniformStream with the same key.
    """

    def __init__(self, master_seed: int, chain_indices, level_index: int = 0, counter: int = 0):
        self.master_seed = master_seed
        self.chain_indices = np.asarray(chain_indices, dtype=np.int64)
        self.level_index = level_index
        self.counter = counter
        self._words = stream_words(master_seed, self.chain_indices, level_index)

    @classmethod
    def from_stream(cls, stream: UniformStream) -> "StreamBlock":
        return cls(
            stream.key.master_seed, [stream.key.chain_index], stream.key.level_index, stream.counter
        )

    def __len__(self) -> int:
        return len(self.chain_indices)

    @property
    def draws(self) -> int:
        """Total draws consumed over all streams of the block."""
        return self.counter * len(self)

    def next_uniform(self) -> np.ndarray:
        u = uniforms_at(self._words, self.counter)
        self.counter += 1
        return u

    def next_coordinate_index(self, n: int) -> np.ndarray:
        return coordinate_from_uniform(self.next_uniform(), n)

    def stream(self, position: int) -> UniformStream:
        key = StreamKey(self.master_seed, int(self.chain_indices[position]), self.level_index)
        return UniformStream(key, self.counter)


def make_stream(key: StreamKey) -> UniformStream:
    return UniformStream(key)


def next_uniform(stream: UniformStream) -> float:
    return stream.next_uniform()


def next_coordinate_index(stream: UniformStream, n: int) -> int:
    return stream.next_coordinate_index(n)
