"""Rod configurations in the 3-torus and their geometric type."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Union

from .intlinalg import NotPrimitiveError, PrimitiveVector, integer_rank, is_parallel


class ConfigError(ValueError):
    """Invalid configuration input; ``code`` names the error class."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class Horizontal:
    pq: tuple[int, int]
    z: Fraction


@dataclass(frozen=True)
class Vertical:
    xy: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Free:
    pass


Placement = Union[Horizontal, Vertical, Free]


@dataclass(frozen=True)
class Rod:
    direction: PrimitiveVector
    placement: Placement = field(default_factory=Free)

    @classmethod
    def horizontal(cls, pq, z) -> "Rod":
        p, q = int(pq[0]), int(pq[1])
        return cls(PrimitiveVector((p, q, 0)), Horizontal((p, q), Fraction(z)))

    @classmethod
    def vertical(cls, xy=(Fraction(1, 2), Fraction(1, 2))) -> "Rod":
        return cls(PrimitiveVector((0, 0, 1)), Vertical((Fraction(xy[0]), Fraction(xy[1]))))


@dataclass(frozen=True)
class RodConfig:
    rods: tuple[Rod, ...]

    def __init__(self, rods):
        rods = tuple(r if isinstance(r, Rod) else Rod(PrimitiveVector(r)) for r in rods)
        if not rods:
            raise ConfigError("empty", "a configuration needs at least one rod")
        placed = [r for r in rods if not isinstance(r.placement, Free)]
        if len(set(placed)) != len(placed):
            raise ConfigError("duplicate_placement", "two rods share the same placement")
        object.__setattr__(self, "rods", rods)

    @property
    def directions(self) -> list[PrimitiveVector]:
        return [r.direction for r in self.rods]

    def __len__(self) -> int:
        return len(self.rods)


@dataclass(frozen=True)
class StackedConfig:
    """Horizontal (p,q,0)-rods stacked by height plus vertical (0,0,1)-rods.

    ``horizontal`` is kept ordered from top to bottom (decreasing z).
    """

    horizontal: tuple[tuple[tuple[int, int], Fraction], ...]
    vertical: tuple[tuple[Fraction, Fraction], ...]

    def __init__(self, horizontal, vertical=((Fraction(1, 2), Fraction(1, 2)),)):
        hs = []
        for pq, z in horizontal:
            p, q = int(pq[0]), int(pq[1])
            try:
                PrimitiveVector((p, q))
            except NotPrimitiveError as exc:
                raise ConfigError("non_primitive", str(exc)) from None
            z = Fraction(z)
            if not 0 < z < 1:
                raise ConfigError("out_of_range", f"height {z} not in (0, 1)")
            hs.append(((p, q), z))
        heights = [z for _, z in hs]
        if len(set(heights)) != len(heights):
            raise ConfigError("duplicate_placement", "two horizontal rods share a height")
        vs = []
        for xy in vertical:
            x, y = Fraction(xy[0]), Fraction(xy[1])
            if not (0 <= x < 1 and 0 <= y < 1):
                raise ConfigError("out_of_range", f"position {(x, y)} not in [0, 1)^2")
            vs.append((x, y))
        if len(set(vs)) != len(vs):
            raise ConfigError("duplicate_placement", "two vertical rods share a position")
        hs.sort(key=lambda h: h[1], reverse=True)
        object.__setattr__(self, "horizontal", tuple(hs))
        object.__setattr__(self, "vertical", tuple(vs))

    @classmethod
    def evenly_spaced(cls, pqs, n_vertical: int = 1) -> "StackedConfig":
        """Stack the given (p, q) pairs top to bottom at equal spacing."""
        n = len(pqs)
        hs = [(pq, Fraction(n - i, n + 1)) for i, pq in enumerate(pqs)]
        vs = [(Fraction(i + 1, n_vertical + 1), Fraction(1, 2)) for i in range(n_vertical)]
        return cls(hs, vs)

    @property
    def pqs(self) -> list[tuple[int, int]]:
        return [pq for pq, _ in self.horizontal]

    @property
    def rods(self) -> tuple[Rod, ...]:
        return tuple(Rod.horizontal(pq, z) for pq, z in self.horizontal) + tuple(
            Rod.vertical(xy) for xy in self.vertical
        )

    @property
    def directions(self) -> list[PrimitiveVector]:
        return [r.direction for r in self.rods]

    def __len__(self) -> int:
        return len(self.horizontal) + len(self.vertical)

    def swapped(self) -> "StackedConfig":
        """Exchange p and q in every horizontal rod (the x <-> y homeomorphism)."""
        return StackedConfig([((q, p), z) for (p, q), z in self.horizontal], self.vertical)


Config = Union[RodConfig, StackedConfig]


def _rational(value: Any, what: str) -> Fraction:
    if isinstance(value, bool):
        raise ConfigError("malformed", f"{what}: expected a number, got {value!r}")
    try:
        if isinstance(value, (int, str)):
            return Fraction(value)
        if isinstance(value, float):
            return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        pass
    raise ConfigError("malformed", f"{what}: expected a rational, got {value!r}")


def _int_list(value: Any, length: int | None, what: str) -> list[int]:
    if not isinstance(value, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in value
    ):
        raise ConfigError("malformed", f"{what}: expected a list of integers, got {value!r}")
    if length is not None and len(value) != length:
        raise ConfigError("malformed", f"{what}: expected {length} integers, got {len(value)}")
    return value


def parse_config(text: str | bytes | dict) -> Config:
    """Build a configuration from its JSON form.

    Either ``{"rods": [{"direction": [a, b, c]}, ...]}`` or
    ``{"horizontal": [{"pq": [p, q], "z": "1/2"}, ...], "vertical": [{"xy": ["1/4", "1/4"]}, ...]}``.
    """
    if isinstance(text, dict):
        data = text
    else:
        try:
            data = json.loads(text)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise ConfigError("malformed", f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("malformed", "top level must be an object")

    if "rods" in data:
        if set(data) - {"rods"}:
            raise ConfigError("malformed", "'rods' cannot be mixed with other keys")
        rods = data["rods"]
        if not isinstance(rods, list) or not rods:
            raise ConfigError("malformed", "'rods' must be a nonempty list")
        out = []
        for i, r in enumerate(rods):
            if not isinstance(r, dict) or "direction" not in r:
                raise ConfigError("malformed", f"rod {i}: missing 'direction'")
            d = _int_list(r["direction"], 3, f"rod {i} direction")
            try:
                out.append(Rod(PrimitiveVector(d)))
            except NotPrimitiveError as exc:
                raise ConfigError("non_primitive", f"rod {i}: {exc}") from None
        return RodConfig(out)

    if "horizontal" in data:
        if set(data) - {"horizontal", "vertical"}:
            raise ConfigError("malformed", f"unexpected keys {sorted(set(data) - {'horizontal', 'vertical'})}")
        hs, vs = [], []
        if not isinstance(data["horizontal"], list):
            raise ConfigError("malformed", "'horizontal' must be a list")
        for i, h in enumerate(data["horizontal"]):
            if not isinstance(h, dict) or "pq" not in h or "z" not in h:
                raise ConfigError("malformed", f"horizontal {i}: need 'pq' and 'z'")
            pq = _int_list(h["pq"], 2, f"horizontal {i} pq")
            hs.append((tuple(pq), _rational(h["z"], f"horizontal {i} z")))
        vertical = data.get("vertical", [])
        if not isinstance(vertical, list):
            raise ConfigError("malformed", "'vertical' must be a list")
        for i, v in enumerate(vertical):
            if not isinstance(v, dict) or "xy" not in v:
                raise ConfigError("malformed", f"vertical {i}: missing 'xy'")
            xy = v["xy"]
            if not isinstance(xy, list) or len(xy) != 2:
                raise ConfigError("malformed", f"vertical {i}: 'xy' must have two entries")
            vs.append(tuple(_rational(c, f"vertical {i} xy") for c in xy))
        if not hs and not vs:
            raise ConfigError("empty", "a configuration needs at least one rod")
        return StackedConfig(hs, vs)

    raise ConfigError("malformed", "expected a 'rods' or 'horizontal' key")


def config_to_json(config: Config) -> dict:
    if isinstance(config, StackedConfig):
        return {
            "horizontal": [{"pq": list(pq), "z": str(z)} for pq, z in config.horizontal],
            "vertical": [{"xy": [str(x), str(y)]} for x, y in config.vertical],
        }
    return {"rods": [{"direction": list(d)} for d in config.directions]}


def direction_rank(config: Config) -> int:
    return integer_rank([tuple(d) for d in config.directions])


class Geometry(enum.Enum):
    HYPERBOLIC = "Hyperbolic"
    SEIFERT_FIBRED = "SeifertFibred"
    TOROIDAL = "Toroidal"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class GeometryType:
    kind: Geometry
    reason: str

    def to_json(self) -> dict:
        return {"type": self.kind.value, "reason": self.reason}


def _parallel_pairs(dirs) -> list[tuple[int, int]]:
    return [(i, j) for i, j in combinations(range(len(dirs)), 2) if is_parallel(dirs[i], dirs[j])]


def classify(config: Config) -> GeometryType:
    """Decide the geometric type where it is decidable from the data given.

    Rules, in order: all directions equal -> Seifert fibred; rank <= 2 ->
    toroidal; rank 3 with no parallel pair -> hyperbolic; a stack with a
    single vertical rod -> hyperbolic exactly when no two cyclically
    neighbouring horizontal rods are parallel.  Anything else is Unknown.
    """
    dirs = config.directions
    if all(d == dirs[0] for d in dirs):
        return GeometryType(Geometry.SEIFERT_FIBRED, f"all {len(dirs)} rods have direction {dirs[0]}")
    rank = direction_rank(config)
    if rank <= 2:
        return GeometryType(Geometry.TOROIDAL, f"directions span a plane (rank {rank})")
    pairs = _parallel_pairs(dirs)
    if not pairs:
        return GeometryType(Geometry.HYPERBOLIC, "rank 3 and no two rods parallel")
    if isinstance(config, StackedConfig) and len(config.vertical) == 1:
        pqs = config.pqs
        n = len(pqs)
        for i in range(n):
            j = (i + 1) % n
            if is_parallel(pqs[i], pqs[j]):
                return GeometryType(
                    Geometry.TOROIDAL,
                    f"neighbouring horizontal rods {i} and {j} are parallel {pqs[i]} "
                    "and bound an unobstructed annulus",
                )
        return GeometryType(
            Geometry.HYPERBOLIC, "rank 3 and no two cyclically neighbouring horizontal rods parallel"
        )
    i, j = pairs[0]
    return GeometryType(
        Geometry.UNKNOWN,
        f"cannot decide whether parallel rods {i} and {j} (direction {dirs[i]}) are "
        "linearly isotopic in the complement of the others",
    )
