from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class AllocationConfig(AppConfig):
    name = "ofdma_bench.allocation"
    verbose_name = _("OFDMA Resource Allocation")
