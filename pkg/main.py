"""Command Line Interface for bootstrap inference on persistence diagrams and landscapes."""
import sys
import json
import argparse
import logging
from pathlib import Path
from typing import Dict, Callable, List, Optional
from dataclasses import dataclass

import config

from bootstrap import diagram_confidence, landscape_band, landscape_band_from_landscapes
from density import Kernel, kde_evaluate
from filtration import cubical_superlevel, rips_filtration
from landscape import diagram_to_landscape, landscape_norm
from metric import betti_counts, bottleneck_distance, bottleneck_matching, significant_points
from persistence import compute_persistence, rips_persistence
from sampling import default_circle_layout, load_circle_specs, sample_circles, sample_torus, save_circle_specs
from tda_models import Diagram, Grid, PointCloud, TDAError, ValidationError
from utils import io_utils
from utils.io_utils import fmt

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def setup_logging(verbose: bool = False):
    """Configure logging to stderr and to the debug file."""
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG)

    # Remove existing handlers to avoid duplicates
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    # Console handler (INFO and above unless verbose)
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG if verbose else logging.INFO)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # File handler (DEBUG and above)
    try:
        file_handler = logging.FileHandler(config.DEBUG_LOG_PATH, mode='w')  # Overwrite each run
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
        logger.debug(f"Logging initialized. Debug log: {config.DEBUG_LOG_PATH}")
    except Exception as e:
        console_handler.setLevel(logging.DEBUG)  # Show debug in console if file fails
        logger.error(f"Failed to setup file logging: {e}")


@dataclass
class Command:
    """Represents a CLI command with its handler and help text."""
    handler: Callable[[argparse.Namespace], int]
    help: str


class CLI:
    """Command Line Interface handler for the inference pipeline."""

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self.parser = self._create_parser()
        self.commands: Dict[str, Command] = {}
        self._setup_commands()

    def _create_parser(self) -> argparse.ArgumentParser:
        """Create and configure the argument parser with workflow information."""
        parser = argparse.ArgumentParser(
            prog='tdaboot',
            description='''
            tdaboot - bootstrap confidence sets for persistence diagrams and
            confidence bands for persistence landscapes.

            Pipeline (every stage reads and writes files):
              1. sample          - Draw points from a torus or a mixture of circles
              2. kde             - Kernel density estimate on a grid
              3. persist         - Persistence diagram (cubical superlevel or Rips)
              4. landscape       - Persistence landscape of a diagram
              5. bottleneck      - Bottleneck distance between two diagrams

            Inference:
              - diagram-ci       - Bootstrap confidence set for a KDE diagram
              - landscape-band   - Bootstrap confidence band for the mean landscape
            ''',
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        parser.add_argument('--verbose', action='store_true', help='Log debug output to the console')
        parser.add_argument(
            '--threads',
            type=self._positive_int,
            default=None,
            help=f'Thread cap (default: TDABOOT_THREADS or {config.DEFAULT_THREADS})'
        )

        subparsers = parser.add_subparsers(
            dest='command',
            help='Available commands (use <command> -h for help)'
        )

        self._setup_sample_parser(subparsers)
        self._setup_kde_parser(subparsers)
        self._setup_persist_parser(subparsers)
        self._setup_bottleneck_parser(subparsers)
        self._setup_landscape_parser(subparsers)
        self._setup_diagram_ci_parser(subparsers)
        self._setup_landscape_band_parser(subparsers)
        return parser

    def _setup_sample_parser(self, subparsers) -> None:
        sample_parser = subparsers.add_parser('sample', help='Draw a seeded synthetic point cloud')
        kinds = sample_parser.add_subparsers(dest='kind')
        kinds.required = True

        torus = kinds.add_parser('torus', help='Uniform sample from a torus in R^3',
                                 formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        torus.add_argument('--R', type=self._positive_float, default=1.5, help='Center-to-tube distance')
        torus.add_argument('--r', type=self._positive_float, default=0.8, help='Tube radius (must be < R)')
        self._add_sample_common(torus)

        circles = kinds.add_parser('circles', help='Uniform mixture of circles in R^2',
                                   formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        circles.add_argument('--spec', type=str, default=None,
                             help='JSON circle layout (default: the shipped nine-circle layout)')
        circles.add_argument('--noise', type=self._nonnegative_float, default=0.0,
                             help='Standard deviation of isotropic Gaussian noise')
        circles.add_argument('--write-layout', type=str, default=None,
                             help='Also write the layout in use to this JSON file')
        self._add_sample_common(circles)

    def _add_sample_common(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--n', type=self._positive_int, default=100, help='Number of points')
        parser.add_argument('--seed', type=self._nonnegative_int, default=0, help='Master seed')
        parser.add_argument('--stream', type=self._nonnegative_int, default=0,
                            help='Seed stream (use distinct streams for repeated samples)')
        parser.add_argument('--output', type=str, default=None, help='Output CSV (default: stdout)')
        parser.add_argument('--header', action='store_true', help='Write a header row')

    def _add_grid_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--grid', type=str, default=None,
                            help='JSON grid spec {"lower", "upper", "resolution"}')
        parser.add_argument('--lower', type=float, nargs='+', default=None,
                            help='Grid lower corner (one value is broadcast)')
        parser.add_argument('--upper', type=float, nargs='+', default=None,
                            help='Grid upper corner (one value is broadcast)')
        parser.add_argument('--resolution', type=self._positive_int, nargs='+', default=None,
                            help='Cells per axis (one value is broadcast to every axis)')
        parser.add_argument('--pad', type=self._nonnegative_float, default=None,
                            help='Build the grid around the points, padded by this amount')
        parser.add_argument('--kernel', type=str, choices=[k.value for k in Kernel], default='gaussian',
                            help='Kernel')
        parser.add_argument('--h', type=self._positive_float, required=True, help='Bandwidth')

    def _add_points_arguments(self, parser: argparse.ArgumentParser, required: bool = True) -> None:
        parser.add_argument('--points', type=str, required=required, help='Point cloud CSV')
        parser.add_argument('--header', action='store_true', help='Point CSV has a header row')

    def _add_bootstrap_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--B', type=self._positive_int, default=config.DEFAULT_BOOTSTRAP_REPLICATES,
                            help='Number of bootstrap replicates')
        parser.add_argument('--alpha', type=self._probability, default=config.DEFAULT_ALPHA, help='Level alpha')
        parser.add_argument('--seed', type=self._nonnegative_int, default=0, help='Master seed')
        parser.add_argument('--summary', type=str, required=True, help='Summary JSON output')
        parser.add_argument('--replicates', action='store_true', help='Include replicates in the summary')

    def _setup_kde_parser(self, subparsers) -> None:
        kde_parser = subparsers.add_parser('kde', help='Kernel density estimate on a grid',
                                           formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        self._add_points_arguments(kde_parser)
        self._add_grid_arguments(kde_parser)
        kde_parser.add_argument('--output', type=str, required=True, help='Grid field JSON output')
        kde_parser.add_argument('--csv', type=str, default=None, help='Also write vertex,value CSV for plotting')

    def _setup_persist_parser(self, subparsers) -> None:
        persist_parser = subparsers.add_parser('persist', help='Persistence diagram of a field or a cloud',
                                               formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        source = persist_parser.add_mutually_exclusive_group(required=True)
        source.add_argument('--field', type=str, help='Grid field JSON (superlevel cubical filtration)')
        source.add_argument('--points', type=str, help='Point cloud CSV (Rips filtration)')
        persist_parser.add_argument('--header', action='store_true', help='Point CSV has a header row')
        persist_parser.add_argument('--max-dim', type=self._nonnegative_int, default=2,
                                    help='Largest Rips simplex dimension')
        persist_parser.add_argument('--max-radius', type=self._positive_float,
                                    default=config.DEFAULT_RIPS_MAX_RADIUS, help='Rips radius cutoff (also T)')
        persist_parser.add_argument('--output', type=str, required=True, help='Diagram CSV output')
        persist_parser.add_argument('--dump-filtration', type=str, default=None,
                                    help='Write the filtration as `id dim value boundary-ids` lines')

    def _setup_bottleneck_parser(self, subparsers) -> None:
        bottleneck_parser = subparsers.add_parser('bottleneck', help='Bottleneck distance between two diagrams')
        bottleneck_parser.add_argument('first', type=str, help='First diagram CSV')
        bottleneck_parser.add_argument('second', type=str, help='Second diagram CSV')
        bottleneck_parser.add_argument('--homology-dim', type=self._nonnegative_int, default=None,
                                       help='Restrict both diagrams to one homology dimension')
        bottleneck_parser.add_argument('--matching', action='store_true', help='Print the optimal matching as JSON')

    def _setup_landscape_parser(self, subparsers) -> None:
        landscape_parser = subparsers.add_parser('landscape', help='Persistence landscape of a diagram',
                                                 formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        landscape_parser.add_argument('--diagram', type=str, required=True, help='Diagram CSV')
        landscape_parser.add_argument('--homology-dim', type=self._nonnegative_int, default=None,
                                      help='Restrict to one homology dimension')
        landscape_parser.add_argument('--levels', type=self._positive_int, default=config.DEFAULT_LANDSCAPE_LEVELS,
                                      help='Number of levels K')
        landscape_parser.add_argument('--output', type=str, required=True, help='Landscape CSV (k,z,value)')
        landscape_parser.add_argument('--json', type=str, default=None, help='Also write the landscape as JSON')

    def _setup_diagram_ci_parser(self, subparsers) -> None:
        ci_parser = subparsers.add_parser('diagram-ci', help='Bootstrap confidence set for a KDE diagram',
                                          formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        self._add_points_arguments(ci_parser)
        self._add_grid_arguments(ci_parser)
        self._add_bootstrap_arguments(ci_parser)
        ci_parser.add_argument('--output', type=str, required=True, help='Diagram CSV output')
        ci_parser.add_argument('--annotate', type=str, default=None,
                               help='Also write the significant points (half-life > radius) as a diagram CSV')

    def _setup_landscape_band_parser(self, subparsers) -> None:
        band_parser = subparsers.add_parser('landscape-band', help='Bootstrap confidence band for the mean landscape',
                                            formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        source = band_parser.add_mutually_exclusive_group(required=True)
        source.add_argument('--points', type=str, nargs='+', help='Point cloud CSVs, one Rips diagram each')
        source.add_argument('--diagrams', type=str, nargs='+', help='Diagram CSVs')
        source.add_argument('--landscapes', type=str, nargs='+',
                            help='Landscape JSONs written by the landscape command')
        band_parser.add_argument('--header', action='store_true', help='Point CSVs have a header row')
        band_parser.add_argument('--homology-dim', type=self._nonnegative_int, default=1,
                                 help='Homology dimension of the landscapes')
        band_parser.add_argument('--max-dim', type=self._nonnegative_int, default=2,
                                 help='Largest Rips simplex dimension')
        band_parser.add_argument('--max-radius', type=self._positive_float,
                                 default=config.DEFAULT_RIPS_MAX_RADIUS, help='Rips radius cutoff (also T)')
        band_parser.add_argument('--levels', type=self._positive_int, default=config.DEFAULT_LANDSCAPE_LEVELS,
                                 help='Number of landscape levels K')
        self._add_bootstrap_arguments(band_parser)
        band_parser.add_argument('--output', type=str, required=True,
                                 help='Band CSV for level 1; level k > 1 goes to <stem>_k<k>.csv')

    @staticmethod
    def _positive_int(value: str) -> int:
        """Validate that a value is a positive integer."""
        try:
            ivalue = int(value)
            if ivalue <= 0:
                raise ValueError()
            return ivalue
        except ValueError as e:
            raise argparse.ArgumentTypeError(
                f"{value} must be a positive integer"
            ) from e

    @staticmethod
    def _nonnegative_int(value: str) -> int:
        try:
            ivalue = int(value)
            if ivalue < 0:
                raise ValueError()
            return ivalue
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"{value} must be a nonnegative integer") from e

    @staticmethod
    def _positive_float(value: str) -> float:
        try:
            fvalue = float(value)
            if not fvalue > 0:
                raise ValueError()
            return fvalue
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"{value} must be a positive number") from e

    @staticmethod
    def _nonnegative_float(value: str) -> float:
        try:
            fvalue = float(value)
            if not fvalue >= 0:
                raise ValueError()
            return fvalue
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"{value} must be a nonnegative number") from e

    @staticmethod
    def _probability(value: str) -> float:
        try:
            fvalue = float(value)
            if not 0 < fvalue < 1:
                raise ValueError()
            return fvalue
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"{value} must lie strictly between 0 and 1") from e

    def _setup_commands(self) -> None:
        """Register all command handlers."""
        self.commands = {
            'sample': Command(handler=self._handle_sample, help='Draw a seeded synthetic point cloud'),
            'kde': Command(handler=self._handle_kde, help='Kernel density estimate on a grid'),
            'persist': Command(handler=self._handle_persist, help='Persistence diagram'),
            'bottleneck': Command(handler=self._handle_bottleneck, help='Bottleneck distance'),
            'landscape': Command(handler=self._handle_landscape, help='Persistence landscape'),
            'diagram-ci': Command(handler=self._handle_diagram_ci, help='Confidence set for a KDE diagram'),
            'landscape-band': Command(handler=self._handle_landscape_band,
                                      help='Confidence band for the mean landscape'),
        }

    # Helpers

    def _grid_from_args(self, args: argparse.Namespace, cloud: PointCloud) -> Grid:
        if args.grid:
            return Grid.from_dict(io_utils.read_json(args.grid))
        if args.resolution is None:
            raise ValidationError("a grid needs --grid or --resolution with --lower/--upper or --pad")
        resolution = self._broadcast(args.resolution, cloud.dim)
        if args.pad is not None:
            return Grid.padded_around(cloud, args.pad, resolution)
        if args.lower is None or args.upper is None:
            raise ValidationError("--lower and --upper are required unless --pad or --grid is given")
        return Grid(self._broadcast(args.lower, cloud.dim), self._broadcast(args.upper, cloud.dim), resolution)

    @staticmethod
    def _broadcast(values: list, dim: int) -> tuple:
        """A single value applies to every axis."""
        return tuple(values * dim if len(values) == 1 else values)

    @staticmethod
    def _select(diagram: Diagram, dim: Optional[int]) -> Diagram:
        return diagram if dim is None else diagram.select(dim)

    @staticmethod
    def _level_path(output: Path, k: int) -> Path:
        return output if k == 1 else output.with_name(f"{output.stem}_k{k}{output.suffix}")

    # Handlers

    def _handle_sample(self, args: argparse.Namespace) -> int:
        """Handle the sample command."""
        if args.kind == 'torus':
            cloud = sample_torus(args.R, args.r, args.n, args.seed, args.stream)
        else:
            if args.spec:
                specs = load_circle_specs(args.spec)
            elif config.DEFAULT_CIRCLES_PATH.exists():
                specs = load_circle_specs(config.DEFAULT_CIRCLES_PATH)
            else:
                specs = default_circle_layout()
            if args.write_layout:
                save_circle_specs(specs, args.write_layout)
            cloud = sample_circles(specs, args.n, args.seed, args.stream, args.noise)

        if args.output:
            io_utils.write_point_cloud_csv(cloud, args.output, header=args.header)
            self.logger.info(f"Wrote {cloud.n} points to {args.output}")
        else:
            if args.header:
                print(','.join(f"x{i}" for i in range(cloud.dim)))
            for row in cloud.points:
                print(','.join(fmt(v) for v in row))
        return EXIT_OK

    def _handle_kde(self, args: argparse.Namespace) -> int:
        """Handle the kde command."""
        cloud = io_utils.read_point_cloud_csv(args.points, header=args.header)
        grid = self._grid_from_args(args, cloud)
        field = kde_evaluate(cloud, grid, Kernel(args.kernel), args.h, args.threads)
        io_utils.write_grid_field_json(field, args.output)
        if args.csv:
            io_utils.write_grid_field_csv(field, args.csv)
        print(f"max density: {fmt(field.values.max())}")
        print(f"Riemann sum: {fmt(field.values.sum() * grid.cell_volume)}")
        return EXIT_OK

    def _handle_persist(self, args: argparse.Namespace) -> int:
        """Handle the persist command."""
        if args.field:
            field = io_utils.read_grid_field_json(args.field)
            filtration = cubical_superlevel(field)
            diagram = compute_persistence(filtration)
        else:
            cloud = io_utils.read_point_cloud_csv(args.points, header=args.header)
            filtration = rips_filtration(cloud, args.max_dim, args.max_radius)
            diagram = compute_persistence(filtration, bound=args.max_radius)
        if args.dump_filtration:
            io_utils.write_filtration_dump(filtration, args.dump_filtration)
        io_utils.write_diagram_csv(diagram, args.output)
        counts = {dim: int((diagram.dims == dim).sum()) for dim in sorted(set(diagram.dims.tolist()))}
        print(f"{len(diagram)} points ({diagram.direction.value}, T={fmt(diagram.bound)}); per dimension: {counts}")
        return EXIT_OK

    def _handle_bottleneck(self, args: argparse.Namespace) -> int:
        """Handle the bottleneck command."""
        first = self._select(io_utils.read_diagram_csv(args.first), args.homology_dim)
        second = self._select(io_utils.read_diagram_csv(args.second), args.homology_dim)
        print(fmt(bottleneck_distance(first, second)))
        if args.matching:
            print(json.dumps(bottleneck_matching(first, second).to_dict(), indent=2, sort_keys=True))
        return EXIT_OK

    def _handle_landscape(self, args: argparse.Namespace) -> int:
        """Handle the landscape command."""
        diagram = self._select(io_utils.read_diagram_csv(args.diagram), args.homology_dim)
        landscape = diagram_to_landscape(diagram, args.levels)
        io_utils.write_landscape_csv(landscape, args.output)
        if args.json:
            io_utils.write_landscape_json(landscape, args.json)
        for k, level in enumerate(landscape.levels, start=1):
            print(f"level {k}: sup={fmt(landscape_norm(level))} L1={fmt(landscape_norm(level, 1))}")
        return EXIT_OK

    def _handle_diagram_ci(self, args: argparse.Namespace) -> int:
        """Handle the diagram-ci command."""
        cloud = io_utils.read_point_cloud_csv(args.points, header=args.header)
        grid = self._grid_from_args(args, cloud)
        diagram, summary = diagram_confidence(
            cloud, grid, Kernel(args.kernel), args.h, args.B, args.alpha, args.seed, args.threads
        )
        io_utils.write_diagram_csv(diagram, args.output)
        io_utils.write_summary_json(summary, args.summary, include_replicates=args.replicates)
        if args.annotate:
            io_utils.write_diagram_csv(significant_points(diagram, summary.radius), args.annotate)
        print(f"q_alpha: {fmt(summary.q_alpha)}")
        print(f"radius: {fmt(summary.radius)}")
        print(f"significant points per dimension: {betti_counts(diagram, summary.radius)}")
        return EXIT_OK

    def _handle_landscape_band(self, args: argparse.Namespace) -> int:
        """Handle the landscape-band command."""
        if args.landscapes:
            landscapes = [io_utils.read_landscape_json(path) for path in args.landscapes]
            bands, summaries = landscape_band_from_landscapes(landscapes, args.levels, args.B, args.alpha, args.seed)
        else:
            if args.points:
                diagrams: List[Diagram] = []
                for path in args.points:
                    cloud = io_utils.read_point_cloud_csv(path, header=args.header)
                    diagrams.append(rips_persistence(cloud, args.max_dim, args.max_radius))
            else:
                diagrams = [io_utils.read_diagram_csv(path) for path in args.diagrams]
            diagrams = [d.select(args.homology_dim) for d in diagrams]
            bands, summaries = landscape_band(diagrams, args.levels, args.B, args.alpha, args.seed, args.threads)

        output = Path(args.output)
        for k, band in enumerate(bands, start=1):
            io_utils.write_band_csv(band, self._level_path(output, k))

        data = summaries[0].to_dict(include_replicates=args.replicates)
        if len(summaries) > 1:
            data['levels'] = [s.to_dict(include_replicates=args.replicates) for s in summaries]
        io_utils.write_json(data, args.summary)
        for k, summary in enumerate(summaries, start=1):
            print(f"level {k}: q_alpha={fmt(summary.q_alpha)} radius={fmt(summary.radius)}")
        return EXIT_OK

    def run(self, argv: Optional[List[str]] = None) -> int:
        """Run the CLI application."""
        args = self.parser.parse_args(argv)
        setup_logging(args.verbose)

        if args.command not in self.commands:
            self.parser.print_help()
            return EXIT_USAGE

        try:
            return self.commands[args.command].handler(args)
        except ValidationError as e:
            print(f"Error: {e}", file=sys.stderr)
            return EXIT_USAGE
        except (TDAError, OSError) as e:
            print(f"Error: {e}", file=sys.stderr)
            return EXIT_RUNTIME
        except KeyboardInterrupt:
            print("\nOperation cancelled by user.", file=sys.stderr)
            return EXIT_RUNTIME
        except Exception as e:
            print(f"\nAn error occurred: {e}", file=sys.stderr)
            self.logger.debug("Unhandled error", exc_info=True)
            return EXIT_RUNTIME


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point for the tdaboot CLI.

    Returns:
        int: Exit code (0 success, 2 usage or validation error, 1 runtime error)
    """
    return CLI().run(argv)


if __name__ == "__main__":
    sys.exit(main())
