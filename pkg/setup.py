"""Setup configuration for the ladder-workbench package."""

from setuptools import find_packages, setup

with open("requirements.txt") as f:
    install_requires = [
        line.strip() for line in f if line.strip() and not line.startswith("#")
    ]

setup(
    name="ladder_workbench",
    version="0.1.0",
    description="Numerical workbench for quantum query lower bounds via progress-measure ladders",
    packages=find_packages(exclude=["tests", "tests.*"]),
    zip_safe=False,
    include_package_data=True,
    install_requires=install_requires,
    python_requires=">=3.10",
    entry_points={"console_scripts": ["ladder-workbench=ladder_workbench.cli:main"]},
)
