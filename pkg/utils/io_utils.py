"""
File interchange for every pipeline stage.

CSV files carry 17 significant digits so that values survive a write/read
round trip exactly. JSON files are written with sorted keys and two-space
indentation so that repeated runs produce byte-identical output.
"""
import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import numpy as np

from tda_models import (
    Band, BootstrapSummary, Diagram, Direction, Filtration, FormatError,
    GridField, Landscape, PointCloud,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

DIAGRAM_HEADER = ['dim', 'birth', 'death']
LANDSCAPE_HEADER = ['k', 'z', 'value']
BAND_HEADER = ['z', 'center', 'lower', 'upper']


def fmt(value: float) -> str:
    """Format a float with 17 significant digits."""
    return format(float(value), '.17g')


def _write_rows(path: PathLike, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f, lineterminator='\n')
        if header:
            writer.writerow(header)
        writer.writerows(rows)


def _read_rows(path: PathLike) -> List[List[str]]:
    with open(path, 'r', newline='', encoding='utf-8') as f:
        return [row for row in csv.reader(f) if row and any(cell.strip() for cell in row)]


def write_json(data: Dict[str, Any], path: PathLike) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write('\n')


def read_json(path: PathLike) -> Dict[str, Any]:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON: {e}") from e


# Point clouds

def write_point_cloud_csv(cloud: PointCloud, path: PathLike, header: bool = False) -> None:
    names = [f"x{i}" for i in range(cloud.dim)] if header else []
    _write_rows(path, names, [[fmt(v) for v in row] for row in cloud.points])
    logger.debug(f"Wrote {cloud.n} points to {path}")


def read_point_cloud_csv(path: PathLike, header: bool = False) -> PointCloud:
    rows = _read_rows(path)
    if header:
        rows = rows[1:]
    if not rows:
        raise FormatError(f"{path}: no points found")
    width = len(rows[0])
    try:
        if any(len(row) != width for row in rows):
            raise ValueError("rows have differing numbers of fields")
        points = np.array([[float(cell) for cell in row] for row in rows], dtype=float)
    except ValueError as e:
        raise FormatError(f"{path}: malformed point CSV: {e}") from e
    return PointCloud(points)


# Grid fields

def write_grid_field_json(field: GridField, path: PathLike) -> None:
    write_json(field.to_dict(), path)


def read_grid_field_json(path: PathLike) -> GridField:
    return GridField.from_dict(read_json(path))


def write_grid_field_csv(field: GridField, path: PathLike) -> None:
    """One row per vertex: coordinates followed by the value."""
    coords = field.grid.vertices()
    header = [f"x{i}" for i in range(field.grid.dim)] + ['value']
    rows = [[fmt(c) for c in xyz] + [fmt(v)] for xyz, v in zip(coords, field.values)]
    _write_rows(path, header, rows)


# Diagrams

def diagram_sidecar_path(path: PathLike) -> Path:
    path = Path(path)
    return path.with_name(path.stem + '.meta.json')


def write_diagram_csv(diagram: Diagram, path: PathLike) -> None:
    """Write `dim,birth,death` rows plus a sidecar JSON with direction and bound."""
    rows = [[str(int(k)), fmt(b), fmt(d)] for b, d, k in zip(diagram.births, diagram.deaths, diagram.dims)]
    _write_rows(path, DIAGRAM_HEADER, rows)
    write_json({'direction': diagram.direction.value, 'bound': diagram.bound}, diagram_sidecar_path(path))


def read_diagram_csv(path: PathLike) -> Diagram:
    rows = _read_rows(path)
    if not rows or [c.strip() for c in rows[0]] != DIAGRAM_HEADER:
        raise FormatError(f"{path}: diagram CSV must start with header {','.join(DIAGRAM_HEADER)}")
    sidecar = diagram_sidecar_path(path)
    if not sidecar.exists():
        raise FormatError(f"{path}: missing sidecar {sidecar.name} with direction and bound")
    meta = read_json(sidecar)
    try:
        dims = [int(row[0]) for row in rows[1:]]
        births = [float(row[1]) for row in rows[1:]]
        deaths = [float(row[2]) for row in rows[1:]]
        direction = Direction(meta['direction'])
        bound = float(meta['bound'])
    except (ValueError, IndexError, KeyError) as e:
        raise FormatError(f"{path}: malformed diagram: {e}") from e
    return Diagram(births, deaths, np.asarray(dims, dtype=np.int64), direction, bound)


# Landscapes

def write_landscape_csv(landscape: Landscape, path: PathLike) -> None:
    rows = []
    for k, level in enumerate(landscape.levels, start=1):
        rows.extend([str(k), fmt(z), fmt(v)] for z, v in zip(level.z, level.values))
    _write_rows(path, LANDSCAPE_HEADER, rows)


def write_landscape_json(landscape: Landscape, path: PathLike) -> None:
    write_json(landscape.to_dict(), path)


def read_landscape_json(path: PathLike) -> Landscape:
    return Landscape.from_dict(read_json(path))


# Bootstrap outputs

def write_summary_json(summary: BootstrapSummary, path: PathLike, include_replicates: bool = False) -> None:
    write_json(summary.to_dict(include_replicates=include_replicates), path)


def write_band_csv(band: Band, path: PathLike) -> None:
    """Rows at the center's breakpoints: z, center, lower, upper."""
    zs = band.center.z
    center = band.center.values
    rows = [[fmt(z), fmt(c), fmt(c - band.radius), fmt(c + band.radius)] for z, c in zip(zs, center)]
    _write_rows(path, BAND_HEADER, rows)


# Filtrations

def dump_filtration(filtration: Filtration) -> List[str]:
    """Debug lines `id dim value boundary-ids`."""
    lines = []
    for cell in filtration.cells():
        ids = ' '.join(str(b) for b in cell.boundary)
        lines.append(f"{cell.id} {cell.dim} {fmt(cell.value)} {ids}".rstrip())
    return lines


def write_filtration_dump(filtration: Filtration, path: PathLike) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text('\n'.join(dump_filtration(filtration)) + '\n', encoding='utf-8')
