"""Per-degree cohomology dimension vectors, exact or interval-bounded."""

from __future__ import annotations

from dataclasses import dataclass

INF = 10 ** 9  # effectively unbounded upper limit


@dataclass(frozen=True)
class CohomologyVector:
    """Dimensions h^0..h^top; each entry an (lo, hi) interval, exact if lo == hi."""

    entries: tuple  # tuple of (lo, hi) pairs

    def __post_init__(self):
        for lo, hi in self.entries:
            if lo < 0 or lo > hi:
                raise ValueError(f"bad interval ({lo}, {hi})")

    @staticmethod
    def exact(dims):
        return CohomologyVector(tuple((int(d), int(d)) for d in dims))

    @staticmethod
    def zeros(top):
        return CohomologyVector.exact([0] * (top + 1))

    @property
    def top(self):
        return len(self.entries) - 1

    @property
    def is_exact(self):
        return all(lo == hi for lo, hi in self.entries)

    def dims(self):
        if not self.is_exact:
            raise ValueError("vector has interval entries")
        return tuple(lo for lo, _ in self.entries)

    def entry(self, i):
        """Interval for h^i; degrees outside the range are exactly zero."""
        if 0 <= i < len(self.entries):
            return self.entries[i]
        return (0, 0)

    def is_zero_at(self, i):
        return self.entry(i) == (0, 0)

    def euler(self):
        if not self.is_exact:
            raise ValueError("euler characteristic needs an exact vector")
        return sum((-1) ** i * lo for i, (lo, _) in enumerate(self.entries))

    def __add__(self, other):
        """Direct-sum addition (entrywise interval sum), padding with zeros."""
        top = max(self.top, other.top)
        out = []
        for i in range(top + 1):
            a, b = self.entry(i), other.entry(i)
            out.append((a[0] + b[0], a[1] + b[1]))
        return CohomologyVector(tuple(out))

    def padded(self, top):
        if top < self.top:
            for i in range(top + 1, self.top + 1):
                if self.entry(i) != (0, 0):
                    raise ValueError("cannot truncate nonzero entries")
            return CohomologyVector(self.entries[: top + 1])
        return CohomologyVector(self.entries + ((0, 0),) * (top - self.top))

    def scaled(self, k):
        return CohomologyVector(tuple((k * lo, k * hi) for lo, hi in self.entries))

    def pretty(self):
        parts = []
        for lo, hi in self.entries:
            parts.append(str(lo) if lo == hi else f"[{lo},{hi}]")
        return "(" + ", ".join(parts) + ")"
