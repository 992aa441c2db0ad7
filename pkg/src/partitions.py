"""
Partitions, Maya diagrams and L-core partitions
Integer combinatorics behind the rational σ-grids

- `Partition`: weakly decreasing parts, trailing zeros trimmed
- `MayaDiagram`: cofinite-below subset of Z as (offset, head)
- `CoreIndex`: integer vector ν of length L with the shift ν(m)

How this file ties into the app:
- `characters.build_sigma_grid` asks `core_partition(nu.shifted(m))` for every grid row/column
- tests check the L-core property through `hook_lengths`
"""

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from errors import ConfigError


@dataclass(frozen=True)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ConfigError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ConfigError(f"parts {parts} are not weakly decreasing")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        """1-based part access, zero past the end"""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def to_json(self) -> List[int]:
        return list(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "∅"


EMPTY = Partition()


@dataclass(frozen=True)
class MayaDiagram:
    """All integers <= offset, plus the finite strictly decreasing `head` above it"""

    offset: int
    head: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        head = tuple(sorted(set(self.head), reverse=True))
        offset = self.offset
        if any(x <= offset for x in head):
            raise ConfigError(f"head {head} must lie above the offset {offset}")
        # absorb a run of head elements sitting directly on the offset
        while head and head[-1] == offset + 1:
            head = head[:-1]
            offset += 1
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "offset", offset)

    def __contains__(self, x: int) -> bool:
        return x <= self.offset or x in self.head

    def elements(self, count: int) -> List[int]:
        """The first `count` elements m_1 > m_2 > ..."""
        out = list(self.head[:count])
        x = self.offset
        while len(out) < count:
            out.append(x)
            x -= 1
        return out


@dataclass(frozen=True)
class CoreIndex:
    nu: Tuple[int, ...]

    def __post_init__(self):
        nu = tuple(int(v) for v in self.nu)
        if len(nu) < 2:
            raise ConfigError(f"core index {nu} needs L >= 2 entries")
        object.__setattr__(self, "nu", nu)

    @property
    def L(self) -> int:
        return len(self.nu)

    def shifted(self, m: int) -> "CoreIndex":
        """ν(m) = ν + q·(1,…,1) + (1^r, 0^{L−r}) for m = qL + r"""
        q, r = divmod(m, self.L)
        return CoreIndex(tuple(v + q + (1 if j < r else 0) for j, v in enumerate(self.nu)))

    def to_json(self) -> List[int]:
        return list(self.nu)


def maya_from_nu(nu: CoreIndex, L: int) -> MayaDiagram:
    """Union over j = 1..L of the progressions L·k + j with k < ν_j"""
    if len(nu.nu) != L:
        raise ConfigError(f"core index {list(nu.nu)} has length {len(nu.nu)}, expected L={L}")
    offset = min(L * v + j for j, v in enumerate(nu.nu, start=1)) - 1
    top = max(L * (v - 1) + j for j, v in enumerate(nu.nu, start=1))
    head = []
    for x in range(offset + 1, top + 1):
        j = (x - 1) % L + 1
        if (x - j) // L < nu.nu[j - 1]:
            head.append(x)
    return MayaDiagram(offset, tuple(head))


def partition_from_maya(m: MayaDiagram) -> Partition:
    h = len(m.head)
    return Partition(tuple(x - m.offset - h + i for i, x in enumerate(m.head)))


def maya_from_partition(p: Partition) -> MayaDiagram:
    """Canonical (charge-free) encoding m_i = λ_i − i + 1"""
    return MayaDiagram(-len(p), tuple(part - i for i, part in enumerate(p.parts)))


def core_partition(nu: CoreIndex) -> Partition:
    return partition_from_maya(maya_from_nu(nu, nu.L))


def hook_lengths(p: Partition) -> List[int]:
    conj = p.conjugate()
    return sorted(
        (p.parts[i] - j) + (conj.parts[j] - i) - 1
        for i in range(len(p.parts))
        for j in range(p.parts[i])
    )


def is_core(p: Partition, L: int) -> bool:
    return all(h % L for h in hook_lengths(p))


def as_core_index(values: Sequence[int], L: int) -> CoreIndex:
    if len(values) != L:
        raise ConfigError(f"core index {list(values)} has length {len(values)}, expected L={L}")
    return CoreIndex(tuple(values))
