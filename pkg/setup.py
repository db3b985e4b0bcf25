#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import sys
import setuptools
from setuptools import setup
from anticoncentration import __version__


def readme():
    with open('README.rst', encoding="UTF-8") as f:
        return f.read()


if sys.version_info < (3, 7):
    sys.exit('Python < 3.7 is not supported!')


setup(name='anticoncentration-lab',
      version=__version__,
      description='Numerical laboratory for anticoncentration of random quantum circuits and states',
      long_description=readme(),
      license='MIT',
      packages=setuptools.find_packages(exclude=["tests.*", "tests"]),
      install_requires=[
          "numpy>=1.18.1",
          "scipy>=1.7.0",
          "pandas>=1.1.0",
          "tzlocal>=2.1",
          "joblib>=0.15.1",
      ],
      entry_points={
          'console_scripts': [
              'anticoncentration-lab=anticoncentration.harness.cli:main',
          ],
      },
      classifiers=[
          'Environment :: Console',
          'Intended Audience :: Science/Research',
          'Natural Language :: English',
          'Programming Language :: Python :: 3.7',
          'Programming Language :: Python :: 3.8',
          'Programming Language :: Python :: 3.9',
          'Topic :: Scientific/Engineering :: Physics',
      ],
      test_suite='tests',
      include_package_data=True,
      keywords="random circuits anticoncentration porter-thomas weingarten tensor networks xeb",
      zip_safe=False)
