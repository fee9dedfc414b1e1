from setuptools import setup, find_packages

setup(
    name="sarkisov-links",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    entry_points={
        'console_scripts': [
            'sarkisov-links=sarkisov_links.main:cli',
        ],
    },
    install_requires=[
        "click>=8.1.0",
        "python-dotenv>=1.0.0",
        "pydantic>=2.5.0",
        "colorama>=0.4.6",
        "tabulate>=0.9.0",
        "joblib>=1.3.0",
    ],
    extras_require={
        "tests": [
            "pytest>=8.0.0",
        ],
    },
    python_requires=">=3.8",
)
