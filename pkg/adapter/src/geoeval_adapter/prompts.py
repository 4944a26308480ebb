"""Prompt templates for both inference settings and the stratum labeller.

The wording here is a reconstruction that follows the task contract: every
rendered prediction prompt demands exactly five ranked countries in the
JSON shape the engine's normalizer expects, the constrained variant embeds
the dataset's full label list, and decoding is always greedy. Swap the
text freely; the structural invariants are what the tests pin down.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formats import AdapterError

JSON_INSTRUCTION = (
    'Respond with only a JSON object of exactly this form: '
    '{"predictions": ["Country1", "Country2", "Country3", "Country4", "Country5"]} '
    "where the five country names are ranked from most to least likely."
)

UNCONSTRAINED_TEMPLATE = (
    "Look at this image and predict the top 5 countries where it was most "
    "likely taken, ranked from most to least likely. {json_instruction}"
)

CONSTRAINED_TEMPLATE = (
    "Look at this image and predict the top 5 countries where it was most "
    "likely taken, ranked from most to least likely. Choose only from this "
    "list of valid countries: {country_list}. {json_instruction}"
)

# Reconstructed wording for the generative stratum labeller (urban/rural and
# biome by direct prompting); not part of any published prompt set.
LABEL_TEMPLATE = (
    "Classify this image. Is the scene urban or rural? And which biome fits "
    "best: {biome_list}? Respond with only a JSON object of exactly this "
    'form: {{"urban_rural": "urban" or "rural", "biome": "<one of the biomes>"}}.'
)


@dataclass(frozen=True)
class PromptTemplate:
    """A prediction prompt for one inference setting; decoding is greedy."""

    setting: str
    template: str
    decoding: str = "greedy"

    @classmethod
    def for_setting(cls, setting: str) -> "PromptTemplate":
        if setting == "unconstrained":
            return cls(setting=setting, template=UNCONSTRAINED_TEMPLATE)
        if setting == "constrained":
            return cls(setting=setting, template=CONSTRAINED_TEMPLATE)
        raise AdapterError(f"unknown setting {setting!r}")

    def render(self, label_space: list[str] | None = None) -> str:
        if self.setting == "constrained":
            if not label_space:
                raise AdapterError("constrained prompts need the label space")
            return self.template.format(
                country_list=", ".join(label_space), json_instruction=JSON_INSTRUCTION
            )
        if label_space is not None:
            raise AdapterError("unconstrained prompts take no label space")
        return self.template.format(json_instruction=JSON_INSTRUCTION)


def render_label_prompt(biome_names: list[str]) -> str:
    return LABEL_TEMPLATE.format(biome_list=", ".join(biome_names))
