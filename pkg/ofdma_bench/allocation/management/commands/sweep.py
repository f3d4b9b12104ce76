"""
Monte-Carlo capacity-versus-users sweep written as CSV.
"""

import logging
from pathlib import Path

from django.core.management.base import BaseCommand

from ofdma_bench.allocation.exceptions import AllocationError
from ofdma_bench.allocation.exceptions import InvalidInputError
from ofdma_bench.allocation.exceptions import as_command_error
from ofdma_bench.allocation.reports import write_means_csv
from ofdma_bench.allocation.reports import write_sweep_csv
from ofdma_bench.allocation.services import BenchmarkService
from ofdma_bench.allocation.services import parse_methods
from ofdma_bench.allocation.sweeps import SweepSpec
from ofdma_bench.allocation.sweeps import parse_user_range
from ofdma_bench.allocation.sweeps import run_sweep
from ofdma_bench.allocation.sweeps import summarize
from ofdma_bench.allocation.system import Scenario

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Sweep the number of users over seeded Rayleigh channels."

    def add_arguments(self, parser):
        parser.add_argument("--users", required=True, help="Inclusive range A..B")
        parser.add_argument("--trials", required=True, type=int)
        parser.add_argument("--methods", default="all", help="Comma-separated list or 'all'")
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--out", required=True, type=Path, help="Per-trial CSV")
        parser.add_argument("--means-out", type=Path, help="Per-(method, users) means CSV")
        parser.add_argument("--subcarriers", type=int, default=64)
        parser.add_argument("--snr-db", type=float, default=50.0)
        parser.add_argument("--total-power", type=float, default=1.0)
        parser.add_argument(
            "--workers",
            type=int,
            help="Worker processes (default: OFDMA_BENCH_CONFIG['SWEEP_WORKERS'])",
        )
        parser.add_argument("--timing", action="store_true")

    def handle(self, *args, **options):
        try:
            service = BenchmarkService()
            workers = options["workers"]
            if workers is None:
                workers = service.sweep_workers
            if workers < 1:
                msg = f"Workers must be positive, got {workers}"
                raise InvalidInputError(msg)
            user_min, user_max = parse_user_range(options["users"])
            base = Scenario(
                num_users=1,
                num_subcarriers=options["subcarriers"],
                total_power=options["total_power"],
                mean_snr_db=options["snr_db"],
                seed=options["seed"],
                profile=service.profile,
            )
            spec = SweepSpec(
                user_min,
                user_max,
                options["trials"],
                tuple(parse_methods(options["methods"])),
                base,
            )
            rows = run_sweep(spec, workers=workers)
            self._write(options, rows)
        except AllocationError as e:
            raise as_command_error(e) from e

        failed = sum(1 for row in rows if row.status.startswith("error:"))
        self.stdout.write(
            f"wrote {len(rows)} rows ({failed} failed) to {options['out']}",
        )

    def _write(self, options, rows):
        try:
            with options["out"].open("w", encoding="utf-8", newline="") as handle:
                write_sweep_csv(handle, rows, timing=options["timing"])
            if options["means_out"]:
                with options["means_out"].open("w", encoding="utf-8", newline="") as handle:
                    write_means_csv(handle, summarize(rows))
        except OSError as e:
            msg = f"Cannot write sweep output: {e}"
            raise InvalidInputError(msg) from e
        logger.info("Sweep written to %s", options["out"])
