from hypothesis import settings
from jaxtyping import install_import_hook

settings.register_profile("rkhs_trend", database=None, max_examples=10, deadline=None)
settings.load_profile("rkhs_trend")
with install_import_hook("rkhs_trend", "beartype.beartype"):
    import rkhs_trend  # noqa: F401
