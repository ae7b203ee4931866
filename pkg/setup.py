'''
SuperWeight computes characters and weight multiplicities of simple weight
modules with finite multiplicities over type I Lie superalgebras and W(n),
in exact rational arithmetic. A small laboratory builds Verma, Kac and
twisted localized modules explicitly to check the character engine.

Run ``python -m SuperWeight --help`` for the command line front end, and see
the scripts in the _Tutorial_Notebooks folder for worked examples.
'''

from pathlib import Path
from setuptools import setup, find_packages

here = Path(__file__).parent.absolute()

# Get the long description from the README file
with open(here / "README.md", encoding="utf-8") as f:
    long_description = f.read()

with open(here / "requirements.txt", encoding="utf-8") as f:
    requirements = f.read().splitlines()

doclines = __doc__.strip().split('\n')

setup(name='SuperWeight',
      version='0.1.0',
      description = doclines[0],
      long_description=long_description,
      long_description_content_type="text/markdown",
      author='SuperWeight developers',
      packages=find_packages(exclude=['_Tutorial_Notebooks', 'examples']),
      license='BSD-3-Clause',
      classifiers=[
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3 :: Only",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Environment :: Console"],
      python_requires=">=3.8, <4",
      install_requires=requirements,
      extras_require={'test': ['pytest>=6.0']},
      entry_points={'console_scripts': ['superweight=SuperWeight.cli:main']},
      )
