"""
Data models shared by the sampling, density, persistence, landscape and
bootstrap modules.

Every model is a dataclass that validates its invariants on construction and
converts to and from plain dictionaries for JSON interchange. Array-valued
fields are stored as numpy arrays; equality compares them elementwise.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Type, TypeVar
import math

import numpy as np


class TDAError(Exception):
    """Base exception for errors raised by the inference pipeline."""
    pass


class ValidationError(TDAError, ValueError):
    """Raised when an input violates the precondition of an operation."""
    pass


class FormatError(TDAError):
    """Raised when an interchange file cannot be parsed."""
    pass


class Direction(Enum):
    """
    Filtration direction.

    SUPERLEVEL: thresholds decrease, births are >= deaths (density filtrations)
    SUBLEVEL: thresholds increase, births are <= deaths (Rips filtrations)
    """
    SUPERLEVEL = "superlevel"
    SUBLEVEL = "sublevel"


T = TypeVar('T', bound='PointCloud')


@dataclass(eq=False)
class PointCloud:
    """A finite sample of points in D-dimensional Euclidean space.

    Attributes:
        points: Array of shape (n, dim); one row per point.
    """
    points: np.ndarray

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 2 or self.points.shape[1] < 1:
            raise ValidationError(
                f"points must be a 2-D array with at least one column, got shape {self.points.shape}"
            )
        if not np.all(np.isfinite(self.points)):
            raise ValidationError("point coordinates must be finite")

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointCloud):
            return NotImplemented
        return np.array_equal(self.points, other.points)

    def to_dict(self) -> Dict[str, Any]:
        return {'dim': self.dim, 'points': self.points.tolist()}

    @classmethod
    def from_dict(cls: Type[T], data: Dict[str, Any]) -> T:
        points = np.asarray(data.get('points', []), dtype=float)
        if points.size == 0:
            points = points.reshape(0, int(data['dim']))
        return cls(points=points)


@dataclass(frozen=True)
class CircleSpec:
    """A circle in the plane used by the circles sampler."""
    center: Tuple[float, float]
    radius: float

    def __post_init__(self):
        if len(self.center) != 2:
            raise ValidationError(f"circle center must have 2 coordinates, got {self.center}")
        if not self.radius > 0:
            raise ValidationError(f"circle radius must be > 0, got {self.radius}")
        object.__setattr__(self, 'center', (float(self.center[0]), float(self.center[1])))
        object.__setattr__(self, 'radius', float(self.radius))

    def to_dict(self) -> Dict[str, Any]:
        return {'center': list(self.center), 'radius': self.radius}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CircleSpec':
        try:
            return cls(center=tuple(data['center']), radius=data['radius'])
        except (KeyError, TypeError) as e:
            raise FormatError(f"invalid circle spec {data!r}: {e}") from e


@dataclass(frozen=True)
class Grid:
    """A regular axis-aligned grid.

    Attributes:
        lower: Lower corner, one coordinate per axis.
        upper: Upper corner, strictly greater than `lower` on every axis.
        resolution: Number of cells per axis; each axis has resolution + 1 vertices.
    """
    lower: Tuple[float, ...]
    upper: Tuple[float, ...]
    resolution: Tuple[int, ...]

    def __post_init__(self):
        lower = tuple(float(v) for v in self.lower)
        upper = tuple(float(v) for v in self.upper)
        resolution = tuple(int(v) for v in self.resolution)
        if not (len(lower) == len(upper) == len(resolution)) or not lower:
            raise ValidationError("grid lower, upper and resolution must have the same nonzero length")
        if any(lo >= hi for lo, hi in zip(lower, upper)):
            raise ValidationError(f"grid lower must be < upper componentwise, got {lower} and {upper}")
        if any(r < 1 for r in resolution):
            raise ValidationError(f"grid resolution must be positive on every axis, got {resolution}")
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)
        object.__setattr__(self, 'resolution', resolution)

    @property
    def dim(self) -> int:
        return len(self.resolution)

    @property
    def shape(self) -> Tuple[int, ...]:
        """Vertex counts per axis."""
        return tuple(r + 1 for r in self.resolution)

    @property
    def vertex_count(self) -> int:
        return int(np.prod(self.shape))

    @property
    def spacing(self) -> np.ndarray:
        return (np.asarray(self.upper) - np.asarray(self.lower)) / np.asarray(self.resolution)

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    def axes(self) -> List[np.ndarray]:
        return [np.linspace(lo, hi, r + 1) for lo, hi, r in zip(self.lower, self.upper, self.resolution)]

    def vertices(self) -> np.ndarray:
        """Vertex coordinates in row-major order, shape (vertex_count, dim)."""
        mesh = np.meshgrid(*self.axes(), indexing='ij')
        return np.stack([m.ravel() for m in mesh], axis=1)

    @classmethod
    def padded_around(cls, cloud: PointCloud, pad: float, resolution: Sequence[int]) -> 'Grid':
        """Bounding box of `cloud` enlarged by `pad` on every side."""
        if cloud.n == 0:
            raise ValidationError("cannot build a grid around an empty cloud")
        lower = cloud.points.min(axis=0) - pad
        upper = cloud.points.max(axis=0) + pad
        return cls(tuple(lower), tuple(upper), tuple(resolution))

    def to_dict(self) -> Dict[str, Any]:
        return {'lower': list(self.lower), 'upper': list(self.upper), 'resolution': list(self.resolution)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Grid':
        try:
            return cls(tuple(data['lower']), tuple(data['upper']), tuple(data['resolution']))
        except (KeyError, TypeError) as e:
            raise FormatError(f"invalid grid specification: {e}") from e


@dataclass(eq=False)
class GridField:
    """Scalar values at the vertices of a grid, flattened in row-major order."""
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).ravel()
        if self.values.shape[0] != self.grid.vertex_count:
            raise ValidationError(
                f"field has {self.values.shape[0]} values but the grid has {self.grid.vertex_count} vertices"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValidationError("field values must be finite")

    def as_array(self) -> np.ndarray:
        return self.values.reshape(self.grid.shape)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GridField):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.values, other.values)

    def to_dict(self) -> Dict[str, Any]:
        data = self.grid.to_dict()
        data['values'] = self.values.tolist()
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'GridField':
        if 'values' not in data:
            raise FormatError("grid field JSON is missing 'values'")
        return cls(grid=Grid.from_dict(data), values=np.asarray(data['values'], dtype=float))


@dataclass(frozen=True)
class Cell:
    """A cell of a filtered complex.

    Attributes:
        id: Position of the cell in filtration order.
        dim: Cell dimension.
        boundary: Positions of the codimension-one faces (Z/2 coefficients).
        value: Filtration value.
    """
    id: int
    dim: int
    boundary: Tuple[int, ...]
    value: float


@dataclass(eq=False)
class Filtration:
    """Cells of a filtered complex stored column-wise in filtration order.

    Boundaries refer to positions in this order. `labels` keeps the cell's
    identity in the underlying complex (a cubical coordinate or a vertex
    tuple), used only for debug dumps.
    """
    values: np.ndarray
    dims: np.ndarray
    boundaries: List[Tuple[int, ...]]
    direction: Direction
    labels: Optional[List[Any]] = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        self.dims = np.asarray(self.dims, dtype=np.int64)
        if not (len(self.values) == len(self.dims) == len(self.boundaries)):
            raise ValidationError("filtration values, dims and boundaries must have equal length")

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def max_dim(self) -> int:
        return int(self.dims.max()) if len(self) else 0

    def cell(self, position: int) -> Cell:
        return Cell(
            id=position,
            dim=int(self.dims[position]),
            boundary=tuple(self.boundaries[position]),
            value=float(self.values[position]),
        )

    def cells(self) -> Iterator[Cell]:
        for position in range(len(self)):
            yield self.cell(position)

    def count_by_dim(self) -> Dict[int, int]:
        dims, counts = np.unique(self.dims, return_counts=True)
        return {int(d): int(c) for d, c in zip(dims, counts)}


@dataclass(eq=False)
class Diagram:
    """A persistence diagram with an explicit direction and bound T.

    The diagonal is implicit; zero-persistence points are never stored.

    Attributes:
        births: Birth values.
        deaths: Death values.
        dims: Homology dimension of each point.
        direction: SUPERLEVEL (0 <= death <= birth <= T) or SUBLEVEL
            (0 <= birth <= death <= T).
        bound: The bound T.
    """
    births: np.ndarray
    deaths: np.ndarray
    dims: np.ndarray
    direction: Direction
    bound: float

    def __post_init__(self):
        self.births = np.asarray(self.births, dtype=float).ravel()
        self.deaths = np.asarray(self.deaths, dtype=float).ravel()
        self.dims = np.asarray(self.dims, dtype=np.int64).ravel()
        self.direction = Direction(self.direction)
        self.bound = float(self.bound)
        if not (len(self.births) == len(self.deaths) == len(self.dims)):
            raise ValidationError("diagram births, deaths and dims must have equal length")
        if not self.bound > 0:
            raise ValidationError(f"diagram bound T must be > 0, got {self.bound}")
        if np.any(self.dims < 0):
            raise ValidationError("homology dimensions must be nonnegative")
        if self.direction is Direction.SUPERLEVEL:
            low, high = self.deaths, self.births
        else:
            low, high = self.births, self.deaths
        if len(low) and (np.any(low < 0) or np.any(low > high) or np.any(high > self.bound)):
            order = "0 <= death <= birth <= T" if self.direction is Direction.SUPERLEVEL else "0 <= birth <= death <= T"
            raise ValidationError(f"diagram points violate {order} (T={self.bound})")

    @classmethod
    def empty(cls, direction: Direction, bound: float) -> 'Diagram':
        return cls(np.empty(0), np.empty(0), np.empty(0, dtype=np.int64), direction, bound)

    def __len__(self) -> int:
        return int(self.births.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return (
            self.direction is other.direction
            and self.bound == other.bound
            and np.array_equal(self.births, other.births)
            and np.array_equal(self.deaths, other.deaths)
            and np.array_equal(self.dims, other.dims)
        )

    def select(self, dim: int) -> 'Diagram':
        """Return the sub-diagram of homology dimension `dim`."""
        mask = self.dims == dim
        return Diagram(self.births[mask], self.deaths[mask], self.dims[mask], self.direction, self.bound)

    def half_lives(self) -> np.ndarray:
        return np.abs(self.births - self.deaths) / 2.0

    def points(self) -> List[Tuple[float, float, int]]:
        return [(float(b), float(d), int(k)) for b, d, k in zip(self.births, self.deaths, self.dims)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'direction': self.direction.value,
            'bound': self.bound,
            'points': [list(p) for p in self.points()],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Diagram':
        try:
            points = data.get('points', [])
            births = [p[0] for p in points]
            deaths = [p[1] for p in points]
            dims = [int(p[2]) for p in points]
            return cls(births, deaths, np.asarray(dims, dtype=np.int64), Direction(data['direction']), data['bound'])
        except (KeyError, IndexError, TypeError) as e:
            raise FormatError(f"invalid diagram data: {e}") from e


@dataclass
class Matching:
    """An optimal matching between two diagrams.

    Attributes:
        pairs: (index in a, index in b) tuples; None stands for the diagonal.
        cost: Largest L-infinity displacement over the pairs.
    """
    pairs: List[Tuple[Optional[int], Optional[int]]] = field(default_factory=list)
    cost: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {'cost': self.cost, 'pairs': [list(p) for p in self.pairs]}


@dataclass(eq=False)
class LandscapeLevel:
    """One continuous piecewise-linear landscape function, given by its breakpoints."""
    z: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.z = np.asarray(self.z, dtype=float).ravel()
        self.values = np.asarray(self.values, dtype=float).ravel()
        if self.z.shape != self.values.shape or self.z.size == 0:
            raise ValidationError("landscape breakpoints need matching, nonempty z and value arrays")
        if np.any(np.diff(self.z) < 0):
            raise ValidationError("landscape breakpoints must be sorted by z")

    @classmethod
    def zero(cls, bound: float) -> 'LandscapeLevel':
        return cls(np.array([0.0, bound]), np.zeros(2))

    def evaluate(self, z: Any) -> Any:
        """Linear interpolation between breakpoints; zero outside them."""
        return np.interp(z, self.z, self.values, left=0.0, right=0.0)

    def __call__(self, z: Any) -> Any:
        return self.evaluate(z)

    def scaled(self, factor: float) -> 'LandscapeLevel':
        return LandscapeLevel(self.z.copy(), self.values * factor)

    def breakpoints(self) -> List[Tuple[float, float]]:
        return list(zip(self.z.tolist(), self.values.tolist()))

    def to_dict(self) -> Dict[str, Any]:
        return {'z': self.z.tolist(), 'values': self.values.tolist()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'LandscapeLevel':
        return cls(np.asarray(data['z'], dtype=float), np.asarray(data['values'], dtype=float))


@dataclass(eq=False)
class Landscape:
    """Persistence landscape levels k = 1..K for a diagram with bound T."""
    levels: List[LandscapeLevel]
    bound: float

    def level(self, k: int) -> LandscapeLevel:
        """Level k (1-based); identically zero beyond the stored levels."""
        if k < 1:
            raise ValidationError(f"landscape level k must be >= 1, got {k}")
        if k > len(self.levels):
            return LandscapeLevel.zero(self.bound)
        return self.levels[k - 1]

    @property
    def K(self) -> int:
        return len(self.levels)

    def to_dict(self) -> Dict[str, Any]:
        return {'bound': self.bound, 'levels': [lvl.to_dict() for lvl in self.levels]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Landscape':
        try:
            return cls([LandscapeLevel.from_dict(lvl) for lvl in data['levels']], float(data['bound']))
        except (KeyError, TypeError) as e:
            raise FormatError(f"invalid landscape data: {e}") from e


def radius_from_quantile(q_alpha: float, n: int) -> float:
    """
    Return q_alpha / sqrt(n), nudged by an ulp if needed so radius * sqrt(n) == q_alpha.

    This is a pure function of (q_alpha, n). Radii agree bit for bit across
    thread counts only because the replicates behind q_alpha are assembled
    in index order by `utils.parallel.ordered_map`.
    """
    root = math.sqrt(n)
    radius = q_alpha / root
    for candidate in (radius, np.nextafter(radius, np.inf), np.nextafter(radius, -np.inf)):
        if float(candidate) * root == q_alpha:
            return float(candidate)
    return radius


@dataclass(eq=False)
class BootstrapSummary:
    """Bootstrap replicates together with the derived quantile and radius.

    Attributes:
        replicates: theta*_1 ... theta*_B.
        q_alpha: Upper quantile of the replicates.
        alpha: Level in (0, 1).
        B: Number of replicates.
        n: Sample size used to scale the radius.
        radius: q_alpha / sqrt(n).
    """
    replicates: np.ndarray
    q_alpha: float
    alpha: float
    B: int
    n: int
    radius: float

    def __post_init__(self):
        self.replicates = np.asarray(self.replicates, dtype=float).ravel()
        if len(self.replicates) != self.B:
            raise ValidationError(f"expected {self.B} replicates, got {len(self.replicates)}")
        if not 0 < self.alpha < 1:
            raise ValidationError(f"alpha must lie in (0, 1), got {self.alpha}")

    def to_dict(self, include_replicates: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'alpha': self.alpha,
            'B': self.B,
            'n': self.n,
            'q_alpha': self.q_alpha,
            'radius': self.radius,
        }
        if include_replicates:
            data['replicates'] = self.replicates.tolist()
        return data


@dataclass(eq=False)
class Band:
    """Confidence band center +/- radius around a mean landscape level."""
    center: LandscapeLevel
    radius: float

    def lower(self, z: Any, clamp: bool = False) -> Any:
        low = self.center.evaluate(z) - self.radius
        return np.maximum(low, 0.0) if clamp else low

    def upper(self, z: Any) -> Any:
        return self.center.evaluate(z) + self.radius

    def contains(self, level: LandscapeLevel) -> bool:
        """True when `level` stays inside the band for every z."""
        zs = np.union1d(self.center.z, level.z)
        gap = np.abs(level.evaluate(zs) - self.center.evaluate(zs))
        return bool(np.all(gap <= self.radius))
