from setuptools import setup, find_packages

setup(
    name="tdaboot",
    version="0.1.0",
    packages=find_packages(exclude=['tests', 'tests.*']),
    py_modules=[
        'config',
        'tda_models',
        'sampling',
        'density',
        'filtration',
        'persistence',
        'metric',
        'landscape',
        'bootstrap',
        'main',
    ],
    install_requires=[
        'numpy>=1.22.0',
        'scipy>=1.8.0',
    ],
    package_data={
        '': ['instance/data/layouts/*.json'],
    },
    include_package_data=True,
    python_requires='>=3.8',
)
