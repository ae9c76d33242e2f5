from setuptools import setup, find_packages

# NOTE: Dependencies are managed via requirements/base.txt, dev.txt, and test.txt.
# See the README for installation instructions for users, developers, and testers.
# This setup.py is provided for editable/development installs (pip install -e .)

version = {}
with open("src/higman_quotients/_version.py") as f:
    exec(f.read(), version)

setup(
    name="higman_quotients",
    version=version["__version__"],
    packages=find_packages(where="src", include=["higman_quotients", "higman_quotients.*"]),
    package_dir={"": "src"},
    python_requires=">=3.9",
    description="Finite p-quotients of the Higman group: relators, rewriting normal forms, "
                "group enumeration and the almost-exponential bijection search",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    entry_points={
        "console_scripts": [
            "higman-quotients=higman_quotients.cli:main",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
