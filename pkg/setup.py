# This Python file uses the following encoding: utf-8
from setuptools import setup, find_packages

setup(  name='cesarolab',
        packages=find_packages(),
        version='0.1.0',
        description='CesaroLab: numerical lab for Cesaro-like operators on spaces of analytic functions',
        long_description='CesaroLab computes the Cesaro-like operator C_mu on truncated Taylor series, classifies radial measures by their Carleson behaviour, estimates Hardy, Bloch-type, Morrey and mean Lipschitz norms on declared grids, and runs the boundedness theorems as reproducible experiments.',
        author='cesarolab developers',
        keywords=['Cesaro operator', 'Carleson measures', 'Morrey spaces', 'numpy', 'numerical analysis'],
        classifiers=['Development Status :: 3 - Alpha',
                     'License :: OSI Approved :: BSD License',
                     'Intended Audience :: Science/Research',
                     'Topic :: Scientific/Engineering :: Mathematics',
                     'Programming Language :: Python :: 3.8',
                     'Programming Language :: Python :: 3.9',
                     'Programming Language :: Python :: 3.10'],
        install_requires=['numpy',
                          'pandas',
                          'scipy',
                          'click'],
        extras_require={
            'test': ['pytest', 'hypothesis'],
        },
        entry_points={
            'console_scripts': ['cesarolab=cesarolab.cli:main'],
        },
)
