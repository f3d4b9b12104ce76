"""
Django REST Framework serializers for scenario documents.
"""

import math

from rest_framework import serializers

from .system import ACTIVE_SET
from .system import MAX_SEED
from .system import METHODS

class FiniteFloatField(serializers.FloatField):
    """FloatField that also rejects nan and infinities."""

    default_error_messages = {
        **serializers.FloatField.default_error_messages,
        "not_finite": "A finite number is required.",
    }

    def to_internal_value(self, data) -> float:
        value = super().to_internal_value(data)
        if not math.isfinite(value):
            self.fail("not_finite")
        return value


GA_FIELDS = {
    "ga_population": "population_size",
    "ga_generations": "max_generations",
    "ga_crossover": "crossover_probability",
    "ga_mutation_sigma": "mutation_sigma",
    "ga_elites": "elite_count",
    "ga_penalty": "penalty_weight",
    "ga_tournament": "tournament_size",
    "ga_stall": "stall_generations",
}


class ScenarioConfigSerializer(serializers.Serializer):
    """Serializer for the key/value scenario document."""

    users = serializers.IntegerField(
        min_value=1,
        required=True,
        error_messages={"required": "users missing"},
        help_text="Number of users K",
    )
    subcarriers = serializers.IntegerField(
        min_value=1,
        default=64,
        help_text="Number of subcarriers N",
    )
    total_power_w = FiniteFloatField(
        default=1.0,
        help_text="Total transmit power budget in watts",
    )
    mean_snr_db = FiniteFloatField(
        default=50.0,
        help_text="Mean subchannel SNR in dB",
    )
    proportions = serializers.ListField(
        child=FiniteFloatField(),
        required=False,
        allow_empty=False,
        help_text="Rate proportion weights, normalized to sum to one",
    )
    method = serializers.ChoiceField(
        choices=METHODS,
        default=ACTIVE_SET,
    )
    seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED, default=0)

    ga_population = serializers.IntegerField(min_value=2, required=False)
    ga_generations = serializers.IntegerField(min_value=1, required=False)
    ga_crossover = FiniteFloatField(min_value=0.0, max_value=1.0, required=False)
    ga_mutation_sigma = FiniteFloatField(min_value=0.0, required=False)
    ga_elites = serializers.IntegerField(min_value=0, required=False)
    ga_penalty = FiniteFloatField(min_value=0.0, required=False)
    ga_tournament = serializers.IntegerField(min_value=1, required=False)
    ga_stall = serializers.IntegerField(min_value=1, required=False)

    def validate_total_power_w(self, value: float) -> float:
        if not value > 0:
            msg = "Total power must be positive."
            raise serializers.ValidationError(msg)
        return value

    def validate_proportions(self, value: list) -> list:
        """
        Validate the proportion weights.

        Raises:
            serializers.ValidationError: If any weight is not positive
        """
        if any(not weight > 0 for weight in value):
            msg = "Proportion weights must be positive."
            raise serializers.ValidationError(msg)
        return value

    def validate(self, attrs: dict) -> dict:
        users = attrs["users"]
        proportions = attrs.get("proportions")
        if proportions is not None and len(proportions) != users:
            msg = f"{len(proportions)} proportions given for {users} users."
            raise serializers.ValidationError({"proportions": msg})
        if attrs["subcarriers"] < users:
            msg = f"{attrs['subcarriers']} subcarriers cannot serve {users} users."
            raise serializers.ValidationError({"subcarriers": msg})
        population = attrs.get("ga_population")
        elites = attrs.get("ga_elites")
        if population is not None and elites is not None and elites >= population:
            msg = "ga_elites must be smaller than ga_population."
            raise serializers.ValidationError({"ga_elites": msg})
        return attrs
