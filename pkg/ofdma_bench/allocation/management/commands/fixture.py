"""
Replicate a printed desk experiment and compare against the printed values.
"""

from django.core.management.base import BaseCommand

from ofdma_bench.allocation.exceptions import AllocationError
from ofdma_bench.allocation.exceptions import as_command_error
from ofdma_bench.allocation.reports import render_fixture
from ofdma_bench.allocation.services import BenchmarkService


class Command(BaseCommand):
    help = "Run allocation methods on a built-in fixture (table4, table5, table6)."

    def add_arguments(self, parser):
        parser.add_argument("name", help="Fixture name")
        parser.add_argument("--method", default="all", help="Method to run, or 'all'")
        parser.add_argument("--timing", action="store_true")

    def handle(self, *args, **options):
        try:
            report = BenchmarkService().run_fixture(options["name"], options["method"])
        except AllocationError as e:
            raise as_command_error(e) from e
        self.stdout.write(render_fixture(report, timing=options["timing"]), ending="")
