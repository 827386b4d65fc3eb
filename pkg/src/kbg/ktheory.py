"""K-theory of BG for finite G, assembled from per-prime class counts."""
from __future__ import annotations

from dataclasses import dataclass

from .arith import is_prime
from .families import RankProfile


@dataclass(frozen=True)
class KZeroDescriptor:
    """K^0(BG) = Z x prod_p Z_(p)^r(p,G), with K^1(BG) = 0."""

    group: str
    local_ranks: tuple[tuple[int, int], ...]
    free_rank: int = 1
    k_one: str = "0"

    def __post_init__(self):
        primes = [p for p, _ in self.local_ranks]
        if any(b <= a for a, b in zip(primes, primes[1:])):
            raise ValueError("primes must be strictly increasing")
        if any(not is_prime(p) or r < 1 for p, r in self.local_ranks):
            raise ValueError(f"bad local ranks {self.local_ranks}")
        if self.free_rank != 1 or self.k_one != "0":
            raise ValueError("free rank is 1 and K^1 vanishes for every finite group")

    def render(self) -> str:
        return " x ".join(["Z"] + [f"Z_({p})^{r}" for p, r in self.local_ranks])

    def render_k1(self) -> str:
        return self.k_one

    def to_record(self) -> dict:
        return {
            "group": self.group,
            "free_rank": self.free_rank,
            "local_ranks": {str(p): str(r) for p, r in self.local_ranks},
            "k1": self.k_one,
        }

    @classmethod
    def from_record(cls, rec: dict) -> KZeroDescriptor:
        ranks = tuple(sorted((int(p), int(r)) for p, r in rec["local_ranks"].items()))
        return cls(rec["group"], ranks, int(rec["free_rank"]), rec["k1"])


def k0_descriptor(profile: RankProfile) -> KZeroDescriptor:
    ranks = tuple((p, profile.ranks[p]) for p in profile.primes if profile.ranks[p] > 0)
    return KZeroDescriptor(profile.group, ranks)
