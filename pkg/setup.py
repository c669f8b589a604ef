from setuptools import setup, find_packages

setup(
    name="analogy_workbench",
    version="1.0.0",
    description="Reasoning workbench for analogy assertions over feature-enriched description logic interpretations",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"src": ["data/*.json", "data/*.tbox", "data/corpus/*.json"]},
    include_package_data=True,
    install_requires=[
        "fastapi==0.104.1",
        "uvicorn==0.24.0",
        "pandas==2.1.3",
        "numpy==1.24.3",
        "joblib==1.3.2",
        "pydantic==2.5.0",
        "structlog==23.2.0",
    ],
    entry_points={
        "console_scripts": [
            "analogy-workbench=src.cli:main",
        ],
    },
    python_requires=">=3.9",
)
