# -*- coding: utf-8 -*-
from glob import glob
from os import path

import setuptools

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, "README.rst"), encoding="utf-8") as f:
    readme = f.read()

required = [
    "pydantic>=2.7.4",
    "pydantic-settings>=2.3.4",
    "toml>=0.10.2",
    "pycddlib>=2.1.7,<3",
]

setup_requirements = [
    "setuptools_scm",
    "pytest-runner",
]

test_requirements = [
    "pytest>=3",
]

about = {}
with open(
    path.join(here, "loop_ranking", "_version.py"),
    encoding="utf-8",
) as f:
    exec(f.read(), about)

setuptools.setup(
    use_scm_version=True,
    name=about["__name_soft__"],
    description=about["__description__"],
    long_description=readme,
    author=about["__author__"],
    author_email=about["__author_email__"],
    url=about["__url__"],
    license=about["__license__"],
    long_description_content_type="text/x-rst",
    packages=setuptools.find_packages(exclude=["tests", "examples*"]),
    setup_requires=setup_requirements,
    test_suite="tests",
    tests_require=test_requirements,
    package_data={
        "loop_ranking": ["logging.conf"],
    },
    include_package_data=True,
    data_files=[
        ("data/loops", sorted(glob("data/loops/*.lcl"))),
    ],
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.10",
    install_requires=required,
    entry_points={
        "console_scripts": [
            about["__name_soft__"]
            + "="
            + about["__name_soft__"]
            + ".__main__:run",
            "analyze=" + about["__name_soft__"] + ".__main__:run",
        ],
    },  # Optional
)
