import pytest

from src.documents import to_document
from src.exceptions import BoundsError
from src.generator import ROLE, GeneratorParams, gen_interpretation
from src.validation import validate_interpretation


class TestGeneratorParams:
    def test_hard_cap(self):
        with pytest.raises(BoundsError):
            GeneratorParams(max_features=12)

    @pytest.mark.parametrize("kwargs", [{"mode": "medium"}, {"max_features": 1}, {"max_domains": 0}])
    def test_rejected(self, kwargs):
        with pytest.raises(ValueError):
            GeneratorParams(**kwargs)


class TestGenInterpretation:
    def test_same_seed_same_interpretation(self):
        params = GeneratorParams()
        assert to_document(gen_interpretation(params, 7)) == to_document(gen_interpretation(params, 7))

    @pytest.mark.parametrize("mode", ["strong", "weak"])
    def test_always_valid(self, mode):
        params = GeneratorParams(mode=mode)
        for seed in range(20):
            interp = gen_interpretation(params, seed)
            assert interp.mode == mode
            assert validate_interpretation(interp).valid, seed

    def test_vocabulary(self):
        interp = gen_interpretation(GeneratorParams(), 0)
        assert set(interp.natural_atoms) == {f"A{i}" for i in range(1, 8)}
        assert set(interp.kappa) <= {ROLE}
        assert 2 <= len(interp.space.features) <= 6

    def test_bounds_respected(self):
        params = GeneratorParams(max_features=3, max_domains=1, atoms=2, translated_atoms=0, intra_role=False)
        for seed in range(10):
            interp = gen_interpretation(params, seed)
            assert len(interp.space.features) <= 3
            assert interp.space.k == 1
            assert interp.kappa == {}

    def test_extra_individuals(self):
        interp = gen_interpretation(GeneratorParams(extra_individuals=2), 1)
        assert {x.name for x in interp.extras} == {"x1", "x2"}
