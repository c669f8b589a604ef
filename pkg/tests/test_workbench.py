import pytest

from src.exceptions import DeclarationError
from src.workbench import AnalogyWorkbench


@pytest.fixture(scope="module")
def bench():
    return AnalogyWorkbench()


class TestAnalogyWorkbench:
    """The facade shared by the CLI and the API"""

    def test_fixtures_are_cached(self, bench):
        assert bench.interpretation("fx-zoo") is bench.interpretation("FX-ZOO")

    def test_ana_rejects_inclusions(self, bench):
        with pytest.raises(DeclarationError):
            bench.ana("fx-zoo", "ci Cat <= Dog")

    def test_ana_upgrades_to_strong(self, bench):
        result = bench.ana("fx-zoo", "Cat : WildCat :: Dog : Wolf", strong=True)
        assert result.strong
        assert result.holds
        assert result.left.labels == result.right.labels == ["σ_{(1,2)}"]

    def test_ap_arity(self, bench):
        with pytest.raises(DeclarationError):
            bench.ap(["{a}", "{b}", "{c}"])

    def test_ap_on_sets(self, bench):
        result = bench.ap(["{}", "{}", "{f}", "{f}"])
        assert result.level == "sets"
        assert result.holds
        assert result.arguments == ["{}", "{}", "{f}", "{f}"]

    def test_infer_uses_the_configured_depth(self, bench):
        result = bench.infer("example1")
        assert result.depth_bound == 3

    @pytest.mark.slow
    def test_props_weak_runs_the_matrix(self, bench):
        sweeps, matrix = bench.props("weak", seeds=3)
        assert sweeps == []
        assert matrix.agrees

    def test_info(self, bench):
        info = bench.info()
        assert info.settings["generator_max_features"] == 10
        assert "ce-desid-1" in info.fixtures
