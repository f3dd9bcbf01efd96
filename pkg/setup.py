#!/usr/bin/env python
# -*- coding: utf-8 -*-
from setuptools import setup


with open("README.md", "r") as fh:
    LONG_DESCRIPTION = fh.read()

install_requires = ["pandas", "numpy", "networkx"]
setup(
    name="powerbalance",
    version="0.1.0",
    license="MIT",
    description="Balanced equilibria of networked power allocation games: checks, solvers and generators.",
    long_description=LONG_DESCRIPTION,
    long_description_content_type="text/markdown",
    packages=["powerbalance"],
    install_requires=install_requires,
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["powerbalance=powerbalance.cli:main"]},
    keywords=[
        "game-theory",
        "python",
        "networks",
        "signed-graphs",
        "nash-equilibrium",
        "linear-programming",
        "max-flow",
        "networkx",
        "pandas",
    ],
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
    ],
)
