import pytest

from geoeval_adapter import AdapterError, PromptTemplate, render_label_prompt
from geoeval_adapter.prompts import JSON_INSTRUCTION


def test_unconstrained_prompt_demands_five_ranked_json():
    prompt = PromptTemplate.for_setting("unconstrained").render()
    assert '{"predictions": ["Country1", "Country2", "Country3", "Country4", "Country5"]}' in prompt
    assert "ranked" in prompt
    assert "top 5" in prompt


def test_constrained_prompt_embeds_label_list_in_order():
    labels = ["France", "Spain", "Japan"]
    prompt = PromptTemplate.for_setting("constrained").render(labels)
    assert "France, Spain, Japan" in prompt
    assert JSON_INSTRUCTION in prompt


def test_constrained_requires_labels_and_unconstrained_rejects_them():
    with pytest.raises(AdapterError, match="need the label space"):
        PromptTemplate.for_setting("constrained").render()
    with pytest.raises(AdapterError, match="no label space"):
        PromptTemplate.for_setting("unconstrained").render(["France"])
    with pytest.raises(AdapterError, match="unknown setting"):
        PromptTemplate.for_setting("freeform")


def test_decoding_is_greedy():
    assert PromptTemplate.for_setting("unconstrained").decoding == "greedy"
    assert PromptTemplate.for_setting("constrained").decoding == "greedy"


def test_label_prompt_lists_biomes_and_shape():
    prompt = render_label_prompt(["Tropical", "Arid"])
    assert "Tropical, Arid" in prompt
    assert '"urban_rural"' in prompt
    assert '"biome"' in prompt
