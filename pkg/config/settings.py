import os


class Settings:
    VERSION = "1.0.0"

    GENERATOR_MAX_FEATURES = int(os.getenv("WORKBENCH_GENERATOR_MAX_FEATURES", 10))
    ENUMERATION_CAP = int(os.getenv("WORKBENCH_ENUMERATION_CAP", 16))

    CLOSURE_DEPTH = int(os.getenv("WORKBENCH_CLOSURE_DEPTH", 3))
    CLOSURE_MAX_FACTS = int(os.getenv("WORKBENCH_CLOSURE_MAX_FACTS", 5000))

    # search defaults, and the caps a request may not exceed
    SEARCH_MAX_FEATURES = int(os.getenv("WORKBENCH_SEARCH_MAX_FEATURES", 6))
    SEARCH_MAX_ATOMS = int(os.getenv("WORKBENCH_SEARCH_MAX_ATOMS", 4))
    SEARCH_HARD_FEATURES = int(os.getenv("WORKBENCH_SEARCH_HARD_FEATURES", 8))
    SEARCH_HARD_ATOMS = int(os.getenv("WORKBENCH_SEARCH_HARD_ATOMS", 6))

    SWEEP_SEEDS = int(os.getenv("WORKBENCH_SWEEP_SEEDS", 1000))
    N_JOBS = int(os.getenv("WORKBENCH_N_JOBS", 1))

    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    LOG_FORMAT = os.getenv("LOG_FORMAT", "console")

    API_HOST = os.getenv("API_HOST", "0.0.0.0")
    API_PORT = int(os.getenv("PORT", 8000))
    CORS_ORIGINS = os.getenv("ALLOWED_ORIGINS", "*").split(",")

    def as_dict(self) -> dict:
        return {
            name.lower(): getattr(self, name)
            for name in dir(self)
            if name.isupper() and not name.startswith("API_") and name != "CORS_ORIGINS"
        }


settings = Settings()
