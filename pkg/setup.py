import setuptools

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setuptools.setup(
    name="eulerdag",
    version="0.1.0",
    description="Maximum Eulerian subgraph + DAG decomposition and graph hierarchy ranking",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
    ],
    packages=["eulerdag", "eulerdag.solvers"],
    install_requires=["fire>=0.4.0", "numpy>=1.21", "randomname==0.1.3", "tabulate==0.8.9"],
    entry_points={"console_scripts": ["eulerdag=eulerdag.__main__:main"]},
    python_requires=">=3.8",
)
