import setuptools

with open("README.adoc", "r") as fh:
    long_description = fh.read()

import re
VERSIONFILE="_version.py"
verstrline = open(VERSIONFILE, "rt").read()
VSRE = r"^__version__ = ['\"]([^'\"]*)['\"]"
mo = re.search(VSRE, verstrline, re.M)
if mo:
    verstr = mo.group(1)
else:
    raise RuntimeError("Unable to find version string in %s." % (VERSIONFILE,))

setuptools.setup(
    name="cartanhol",
    version=verstr,
    description="Curvature, holonomy and infinitesimal automorphisms of homogeneous Cartan geometries",
    long_description=long_description,
    long_description_content_type="text/asciidoc",
    package_dir={"": "server_py/cartanhol"},
    packages=setuptools.find_packages(where="server_py/cartanhol"),
    py_modules=["manage"],
    include_package_data=True,
    install_requires=[
        "numpy>=1.21", "scipy>=1.7", "Django>=3.2,<5", "djangorestframework>=3.12", "python-dotenv>=0.15.0"
    ],
    entry_points={
        "console_scripts": ["cartanhol=cartanhol.cli:main"],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires='>=3.8',
)
