"""Tests for tether package exports and metadata."""

import pytest

import tether


class TestPackageMetadata:
    """Package-level exports and metadata."""

    def test_version_string(self) -> None:
        assert isinstance(tether.__version__, str)
        assert "0.1.0" in tether.__version__

    def test_free_threading_declaration(self) -> None:
        assert tether._Py_mod_gil == 0

    def test_all_exports_resolvable(self) -> None:
        for name in tether.__all__:
            getattr(tether, name)

    def test_lazy_export_is_the_real_object(self) -> None:
        from tether.evaluation import loocv

        assert tether.loocv is loocv

    def test_invalid_attribute_raises(self) -> None:
        with pytest.raises(AttributeError, match="no attribute"):
            tether.nonexistent_thing  # type: ignore[attr-defined]  # noqa: B018
